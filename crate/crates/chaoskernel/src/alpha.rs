//! Density α_s of the second-chaos coordinate `A_s = ½∫(w² + β²)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{integrate_semiline_with, DecayEnvelope, PhaseHint, QuadOptions};
use crate::scalar::{c, Real};
use crate::ComplexValue;

/// Smallest x served by the alternating series.
pub const SERIES_MIN_X: f64 = 0.15;
/// Absolute tolerance of the oscillatory-integral method.
pub const INTEGRAL_TOL: f64 = 1e-14;
const SERIES_MAX_TERMS: usize = 200;
const LAPLACE_TOL: f64 = 1e-11;
const LAPLACE_MIN_GAP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaMethod {
    Series,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaEval<T> {
    pub x: T,
    pub value: T,
    pub method: AlphaMethod,
    pub est_error: T,
}

/// `∫₀^∞ e^{λx} α_1(x) dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaplaceEstimate<T> {
    pub lambda: T,
    pub value: T,
    pub error: T,
}

/// `α_1(x) = 2π Σ (−1)ⁿ (n + ½) e^{−(n+½)²π²x}`.
pub fn alpha1_series<T: Real>(x: T) -> Result<AlphaEval<T>> {
    const OP: &str = "alpha1_series";
    positive(OP, x)?;
    if x < c(SERIES_MIN_X) {
        return Err(Error::domain(
            OP,
            format!("x = {x} below {SERIES_MIN_X}; the alternating series is unreliable there, use the integral method"),
        ));
    }
    let pi2x = T::PI() * T::PI() * x;
    let term = |n: usize| {
        let k = T::from_usize_lossy(n) + c(0.5);
        let sign = if n.is_multiple_of(2) { T::one() } else { -T::one() };
        sign * c::<T>(2.0) * T::PI() * k * (-k * k * pi2x).exp()
    };
    let mut sum = T::zero();
    let mut n = 0;
    let mut next = term(0);
    while n < SERIES_MAX_TERMS {
        sum = sum + next;
        n += 1;
        next = term(n);
        if next.abs() < c::<T>(1e-14) * sum.abs() {
            break;
        }
    }
    Ok(AlphaEval { x, value: sum, method: AlphaMethod::Series, est_error: next.abs() })
}

/// Oscillatory-integral representation:
/// `(4/π)∫₀^∞ [cos(2xy² − y) sh y + cos y cos(2xy²) e^{−y}] y / (sh²y + cos²y) dy`.
pub fn alpha1_integral<T: Real>(x: T) -> Result<AlphaEval<T>> {
    alpha1_integral_with(x, c(INTEGRAL_TOL))
}

pub fn alpha1_integral_with<T: Real>(x: T, tol: T) -> Result<AlphaEval<T>> {
    const OP: &str = "alpha1_integral";
    positive(OP, x)?;
    let four_over_pi = c::<T>(4.0) / T::PI();
    let f = move |y: T| {
        // sh y/(sh² y + cos² y) and e^{−y}/(sh² y + cos² y) with e^{−y} factored out.
        let e = (-y).exp();
        let e2 = e * e;
        let den = (T::one() - e2) * (T::one() - e2) + c::<T>(4.0) * e2 * y.cos() * y.cos();
        let s1 = c::<T>(2.0) * e * (T::one() - e2) / den;
        let s2 = c::<T>(4.0) * e2 * e / den;
        let q = c::<T>(2.0) * x * y * y;
        ComplexValue::new(four_over_pi * y * ((q - y).cos() * s1 + y.cos() * q.cos() * s2), T::zero())
    };
    // For y ≥ 1: |f| ≤ (4/π)(2 + 4e^{−2})/(1 − e^{−2})² · y e^{−y}, and y e^{−y} ≤ (10/e) e^{−0.9y}.
    let rate = c::<T>(0.9);
    let k = four_over_pi * (c::<T>(2.0) + c::<T>(4.0) * c::<T>(-2.0).exp())
        / (T::one() - c::<T>(-2.0).exp()).powi(2)
        * c::<T>(10.0)
        / T::E();
    let env = DecayEnvelope::exponential(rate, k * (-rate).exp(), T::one())?;
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: T::zero(),
        max_panels: 400_000,
        max_width: T::one(),
        phase: Some(PhaseHint { quadratic: c::<T>(2.0) * x, linear: T::one() }),
    };
    let r = integrate_semiline_with(f, &env, &opts)?;
    Ok(AlphaEval { x, value: r.value.re, method: AlphaMethod::Integral, est_error: r.total_error() })
}

/// `α_1(x)` by the series when `x ≥ 0.15`, by the integral below.
pub fn alpha1<T: Real>(x: T) -> Result<AlphaEval<T>> {
    if x >= c(SERIES_MIN_X) {
        alpha1_series(x)
    } else {
        alpha1_integral(x)
    }
}

/// `α_s(x) = s⁻² α_1(x/s²)`.
pub fn alpha_scaled<T: Real>(s: T, x: T) -> Result<T> {
    positive("alpha_scaled", s)?;
    positive("alpha_scaled", x)?;
    Ok(alpha1(x / (s * s))?.value / (s * s))
}

/// `∫₀^∞ e^{λx} α_1(x) dx` for `λ < π²/4`.
pub fn alpha_laplace<T: Real>(lambda: T) -> Result<LaplaceEstimate<T>> {
    const OP: &str = "alpha_laplace";
    let abscissa = T::PI() * T::PI() / c(4.0);
    if !lambda.is_finite() || lambda > abscissa - c(LAPLACE_MIN_GAP) {
        return Err(Error::domain(
            OP,
            format!("λ = {lambda} must stay below π²/4 − {LAPLACE_MIN_GAP}"),
        ));
    }
    let f = |x: T| {
        if x <= T::zero() {
            return ComplexValue::new(T::zero(), T::zero());
        }
        let a = alpha1(x).map(|a| a.value).unwrap_or(T::nan());
        ComplexValue::new((lambda * x).exp() * a, T::zero())
    };
    // α_1(x) ≤ π e^{−π²x/4} for x ≥ π⁻².
    let rate = abscissa - lambda;
    let th = c::<T>(SERIES_MIN_X);
    let env = DecayEnvelope::exponential(rate, T::PI() * (-rate * th).exp(), th)?;
    let opts = QuadOptions { max_width: c(0.25), ..QuadOptions::absolute(c(LAPLACE_TOL)) };
    let r = integrate_semiline_with(f, &env, &opts)?;
    Ok(LaplaceEstimate { lambda, value: r.value.re, error: r.total_error() })
}

fn positive<T: Real>(op: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("argument must be positive, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_at_one() {
        let a = alpha1_series(1.0f64).unwrap();
        assert!((a.value - 0.266_422_676_364_863_5).abs() < 1e-15);
        assert!(a.est_error < 1e-14);
    }

    #[test]
    fn series_rejects_small_x() {
        assert!(matches!(alpha1_series(0.1f64), Err(Error::Domain { .. })));
        assert!(alpha1_series(-1.0f64).is_err());
    }

    #[test]
    fn integral_at_one_matches_series() {
        let i = alpha1_integral(1.0f64).unwrap();
        assert!((i.value - 0.266_422_676_364_863_5).abs() < 1e-12, "{i:?}");
    }

    #[test]
    fn scaled_identity() {
        let a = alpha_scaled(2.0f64, 4.0).unwrap();
        assert!((a - alpha1(1.0f64).unwrap().value / 4.0).abs() < 1e-16);
        assert_eq!(alpha_scaled(1.0f64, 0.7).unwrap(), alpha1(0.7f64).unwrap().value);
    }

    #[test]
    fn laplace_domain() {
        assert!(alpha_laplace(2.46f64).is_err());
        assert!(alpha_laplace(f64::NAN).is_err());
    }
}
