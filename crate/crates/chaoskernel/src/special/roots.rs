use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::find_root_bracketed_newton;
use crate::scalar::{c, Real};
use crate::ComplexValue;

/// Largest count accepted by [`tan_fixed_points`].
pub const TAN_FIXED_POINT_CAP: usize = 64;

/// A positive solution of `tg y = y`, stored with its distance to the pole above it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TanFixedPoint<T> {
    pub index: usize,
    pub value: T,
    /// `(index + 3/2)π − value`
    pub gap: T,
    /// `tg y − y`, evaluated as `cotg(gap) − value`.
    pub residual: T,
}

/// The first `n` solutions `y_0 < y_1 < …` of `tg y = y` with `y_k ∈ ((k+1)π, (k+3/2)π)`.
pub fn tan_fixed_points<T: Real>(n: usize) -> Result<Vec<TanFixedPoint<T>>> {
    const OP: &str = "tan_fixed_points";
    if n == 0 || n > TAN_FIXED_POINT_CAP {
        return Err(Error::invalid(OP, format!("count must be in 1..={TAN_FIXED_POINT_CAP}, got {n}")));
    }
    (0..n)
        .map(|k| {
            let pole = (T::from_usize_lossy(k) + c(1.5)) * T::PI();
            // y = pole − δ; tg y = y ⇔ cos δ − (pole − δ) sin δ = 0, decreasing on (0, π/2).
            let h = |d: T| d.cos() - (pole - d) * d.sin();
            let dh = |d: T| -(pole - d) * d.cos();
            let gap = find_root_bracketed_newton(h, dh, T::zero(), T::FRAC_PI_2(), T::epsilon())?;
            let value = pole - gap;
            Ok(TanFixedPoint { index: k, value, gap, residual: gap.cos() / gap.sin() - value })
        })
        .collect()
}

/// First-quadrant zeros `z_k = (1 + i)(π/4)(1 + 2k)` of `sh²z + cos²z`.
pub fn sh2cos2_zeros<T: Real>(n: usize) -> Result<Vec<ComplexValue<T>>> {
    if n == 0 {
        return Err(Error::invalid("sh2cos2_zeros", "count must be positive"));
    }
    Ok((0..n)
        .map(|k| {
            let a = T::FRAC_PI_4() * (T::one() + c::<T>(2.0) * T::from_usize_lossy(k));
            ComplexValue::new(a, a)
        })
        .collect())
}

pub fn sh2cos2<T: Real>(z: ComplexValue<T>) -> ComplexValue<T> {
    let s = z.sinh();
    let k = z.cos();
    s * s + k * k
}

/// `|sh²z + cos²z| / (|sh z|² + |cos z|²)`: the residual relative to the size of the cancelling terms.
pub fn sh2cos2_relative_residual<T: Real>(z: ComplexValue<T>) -> T {
    sh2cos2(z).norm() / (z.sinh().norm_sqr() + z.cos().norm_sqr())
}
