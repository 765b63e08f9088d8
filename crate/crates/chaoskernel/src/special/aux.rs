use serde::Serialize;

use super::coeffs::{C_COEFFS, G_COEFFS, U_COEFFS};
use crate::error::{Error, Result};
use crate::scalar::{c, Real};
use crate::ComplexValue;

/// Below this ξ the Taylor branch is used.
pub const SERIES_CROSSOVER: f64 = 0.5;

// The regularized differences cancel to ~ξ⁴ in the closed forms, so they keep the
// series (|λ| ≤ 2, far inside the radius 4π²) over a wider range.
const REGULARIZED_CROSSOVER: f64 = 1.0;

/// `F_r, F_i, U_r, U_i, V_r, V_i` at a real ξ. `F_r` and `F_i` are infinite at ξ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuxValues<T> {
    pub f_r: T,
    pub f_i: T,
    pub u_r: T,
    pub u_i: T,
    pub v_r: T,
    pub v_i: T,
}

/// Parts of [`AuxValues`] with their ξ = 0 behaviour removed:
/// `F_r ξ⁴`, `F_i ξ²`, `(U_r − 12)/ξ⁴`, `(U_i − 6/5)/ξ⁴`, `(V_r − 1)/ξ⁴`, `(V_i − 1/12)/ξ⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularizedAux<T> {
    pub f_r_reg: T,
    pub f_i_reg: T,
    pub tilde_u_r: T,
    pub tilde_u_i: T,
    pub tilde_v_r: T,
    pub tilde_v_i: T,
}

/// What the inversion integrand consumes: `F_r ξ⁵`, `F_i ξ⁵`, `U_r − 12`, `U_i`, `V_r − 1`, `V_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ShiftedAux<T> {
    pub f_r_xi5: T,
    pub f_i_xi5: T,
    pub u_r_m12: T,
    pub u_i: T,
    pub v_r_m1: T,
    pub v_i: T,
}

pub fn aux_eval<T: Real>(xi: T) -> Result<AuxValues<T>> {
    let xi = check("aux_eval", xi)?;
    if xi < c(SERIES_CROSSOVER) {
        let r = series(xi);
        let x2 = xi * xi;
        let x4 = x2 * x2;
        return Ok(AuxValues {
            f_r: r.f_r_reg / x4,
            f_i: r.f_i_reg / x2,
            u_r: c::<T>(12.0) + x4 * r.tilde_u_r,
            u_i: c::<T>(1.2) + x4 * r.tilde_u_i,
            v_r: T::one() + x4 * r.tilde_v_r,
            v_i: c::<T>(1.0 / 12.0) + x4 * r.tilde_v_i,
        });
    }
    Ok(closed(xi))
}

pub fn aux_eval_regularized<T: Real>(xi: T) -> Result<RegularizedAux<T>> {
    let xi = check("aux_eval_regularized", xi)?;
    if xi < c(REGULARIZED_CROSSOVER) {
        return Ok(series(xi));
    }
    let a = closed(xi);
    let x2 = xi * xi;
    let x4 = x2 * x2;
    Ok(RegularizedAux {
        f_r_reg: a.f_r * x4,
        f_i_reg: a.f_i * x2,
        tilde_u_r: (a.u_r - c(12.0)) / x4,
        tilde_u_i: (a.u_i - c(1.2)) / x4,
        tilde_v_r: (a.v_r - T::one()) / x4,
        tilde_v_i: (a.v_i - c(1.0 / 12.0)) / x4,
    })
}

pub(crate) fn shifted_aux<T: Real>(xi: T) -> ShiftedAux<T> {
    let xi = xi.abs();
    let x2 = xi * xi;
    let x4 = x2 * x2;
    if xi < c(REGULARIZED_CROSSOVER) {
        let r = series(xi);
        ShiftedAux {
            f_r_xi5: r.f_r_reg * xi,
            f_i_xi5: r.f_i_reg * x2 * xi,
            u_r_m12: r.tilde_u_r * x4,
            u_i: c::<T>(1.2) + r.tilde_u_i * x4,
            v_r_m1: r.tilde_v_r * x4,
            v_i: c::<T>(1.0 / 12.0) + r.tilde_v_i * x4,
        }
    } else {
        let a = closed(xi);
        let x5 = x4 * xi;
        ShiftedAux {
            f_r_xi5: a.f_r * x5,
            f_i_xi5: a.f_i * x5,
            u_r_m12: a.u_r - c(12.0),
            u_i: a.u_i,
            v_r_m1: a.v_r - T::one(),
            v_i: a.v_i,
        }
    }
}

fn check<T: Real>(op: &'static str, xi: T) -> Result<T> {
    if !xi.is_finite() {
        return Err(Error::NonFinite { op });
    }
    Ok(xi.abs())
}

/// `Σ coeffs[n + shift] λⁿ`.
pub(crate) fn horner_complex<T: Real>(coeffs: &[f64], shift: usize, lam: ComplexValue<T>) -> ComplexValue<T> {
    coeffs[shift..]
        .iter()
        .rev()
        .fold(ComplexValue::new(T::zero(), T::zero()), |acc, &k| acc * lam + c::<T>(k))
}

pub(crate) fn horner_real<T: Real>(coeffs: &[f64], shift: usize, x: T) -> T {
    coeffs[shift..].iter().rev().fold(T::zero(), |acc, &k| acc * x + c::<T>(k))
}

// All six functions are real parts of power series with real coefficients at λ = 2iξ².
fn series<T: Real>(xi: T) -> RegularizedAux<T> {
    let lam = ComplexValue::new(T::zero(), c::<T>(2.0) * xi * xi);
    let four = c::<T>(4.0);
    RegularizedAux {
        f_r_reg: horner_complex(&C_COEFFS, 0, lam).re,
        f_i_reg: c::<T>(2.0) * horner_complex(&C_COEFFS, 1, lam).re,
        tilde_u_r: four * horner_complex(&U_COEFFS, 2, lam).re,
        tilde_u_i: -four * horner_complex(&U_COEFFS, 3, lam).re,
        tilde_v_r: -four * horner_complex(&G_COEFFS, 2, lam).re,
        tilde_v_i: four * horner_complex(&G_COEFFS, 3, lam).re,
    }
}

// Closed forms with every hyperbolic and trigonometric factor multiplied by 2e^{−ξ}.
fn closed<T: Real>(xi: T) -> AuxValues<T> {
    let e = (-xi).exp();
    let e2 = e * e;
    let ch = T::one() + e2;
    let sh = T::one() - e2;
    let co = c::<T>(2.0) * e * xi.cos();
    let si = c::<T>(2.0) * e * xi.sin();
    let half = c::<T>(0.5);

    let p = (sh + si) / (ch + co);
    let q = (sh - si) / (ch + co);
    let d = (xi - p) * (xi - p) + q * q;
    let u_r = c::<T>(2.0) * xi * xi * xi * q / d;
    let u_i = xi * (xi - p) / d;

    let v_r = xi * (sh + si) / (c::<T>(2.0) * (ch - co));
    let v_i = (sh - si) / (c::<T>(4.0) * xi * (ch - co));

    let den = (ch - co) * ((ch - co) - xi * (sh + si) + xi * xi * half * (ch + co));
    let num_r = ch * co + xi * half * (ch * si - sh * co) - c::<T>(4.0) * e2;
    let num_i = sh * si - xi * half * (ch * si + sh * co);
    AuxValues { f_r: num_r / den, f_i: num_i / den, u_r, u_i, v_r, v_i }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits_at_zero() {
        let r = aux_eval_regularized(0.0f64).unwrap();
        assert_eq!(r.f_r_reg, 6.0);
        assert!((r.f_i_reg - 0.8).abs() < 1e-15);
        assert!((r.tilde_u_r - 1.0 / 175.0).abs() < 1e-16);
        assert!((r.tilde_u_i + 1.0 / 15750.0).abs() < 1e-17);
        assert!((r.tilde_v_r - 1.0 / 180.0).abs() < 1e-16);
        assert!((r.tilde_v_i + 1.0 / 7560.0).abs() < 1e-17);
        let a = aux_eval(1e-3f64).unwrap();
        assert!((a.u_r - 12.0).abs() < 1e-12 && (a.u_i - 1.2).abs() < 1e-12);
        assert!((a.v_r - 1.0).abs() < 1e-12 && (a.v_i - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn branches_agree_at_crossover() {
        let lo = aux_eval(f64::from_bits(SERIES_CROSSOVER.to_bits() - 1)).unwrap();
        let hi = aux_eval(SERIES_CROSSOVER).unwrap();
        for (a, b) in [
            (lo.f_r, hi.f_r),
            (lo.f_i, hi.f_i),
            (lo.u_r, hi.u_r),
            (lo.u_i, hi.u_i),
            (lo.v_r, hi.v_r),
            (lo.v_i, hi.v_i),
        ] {
            assert!((a - b).abs() <= 1e-9 * a.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn regularized_branches_agree() {
        let xi = REGULARIZED_CROSSOVER;
        let s = series(xi);
        let d = aux_eval_regularized(xi).unwrap();
        for (a, b) in [
            (s.f_r_reg, d.f_r_reg),
            (s.f_i_reg, d.f_i_reg),
            (s.tilde_u_r, d.tilde_u_r),
            (s.tilde_u_i, d.tilde_u_i),
            (s.tilde_v_r, d.tilde_v_r),
            (s.tilde_v_i, d.tilde_v_i),
        ] {
            assert!((a - b).abs() <= 1e-9 * a.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn large_xi_asymptotics() {
        let a = aux_eval(10.0f64).unwrap();
        // Asymptote 2ξ + 4 + 4/ξ; the exact value carries O(ξ⁻²) and e^{−ξ} corrections.
        assert!((a.u_r - 24.393_375_791_321_673).abs() < 1e-12 && (a.u_r - 24.4).abs() < 1e-2);
        assert!((a.v_r - 5.0).abs() < 1e-3);
        let far = aux_eval(5000.0f64).unwrap();
        assert!(far.u_r.is_finite() && far.f_r.is_finite() && far.f_r.abs() < 1e-300);
    }

    #[test]
    fn negative_xi_is_even() {
        assert_eq!(aux_eval(-0.7f64).unwrap(), aux_eval(0.7f64).unwrap());
        assert_eq!(aux_eval(-0.3f64).unwrap(), aux_eval(0.3f64).unwrap());
    }

    #[test]
    fn single_precision() {
        let a = aux_eval(1.0f32).unwrap();
        let b = aux_eval(1.0f64).unwrap();
        assert!((a.u_r as f64 - b.u_r).abs() < 1e-4);
    }
}
