//! Exact density `q_s` of the tangent process by inversion along the imaginary axis, and the
//! small-time equivalent with its validity conditions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{integrate_semiline_with, DecayEnvelope, PhaseHint, QuadOptions};
use crate::scalar::{c, Real};
use crate::special::shifted_aux;
use crate::transforms::{log_langevin, MarginalPoint};
use crate::ComplexValue;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MU_THRESHOLD: f64 = 10.0;
/// Largest number of phase periods q_exact will integrate through.
pub const MAX_OSCILLATIONS: f64 = 1e4;
/// Bound on `(|F_r| + |F_i|) ξ e^ξ` for `ξ ≥ 2π`; the supremum 4.5908 is attained at 2π.
pub const F_DECAY_CONSTANT: f64 = 4.6;
const MAX_PANELS: usize = 100_000;

/// Point `(w, β, x, ζ, z)` of the tangent-process state space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct ChaosPoint<T> {
    pub w: T,
    pub beta: T,
    pub x: T,
    pub zeta: T,
    pub z: T,
}

impl<T: Real> ChaosPoint<T> {
    pub fn new(w: T, beta: T, x: T, zeta: T, z: T) -> Self {
        Self { w, beta, x, zeta, z }
    }

    pub fn marginal(&self) -> MarginalPoint<T> {
        MarginalPoint::new(self.w, self.beta, self.zeta, self.z)
    }

    /// Image under the scaling that maps time `s` to time 1:
    /// `(w/√s, β/√s, x/s², ζ/s^{3/2}, z/s^{3/2})`.
    pub fn to_unit_time(&self, s: T) -> Self {
        let r = s.sqrt();
        let r3 = s * r;
        Self::new(self.w / r, self.beta / r, self.x / (s * s), self.zeta / r3, self.z / r3)
    }

    /// Inverse of [`ChaosPoint::to_unit_time`].
    pub fn from_unit_time(&self, s: T) -> Self {
        let r = s.sqrt();
        let r3 = s * r;
        Self::new(self.w * r, self.beta * r, self.x * s * s, self.zeta * r3, self.z * r3)
    }

    /// Lower edge `(z² + ζ²)/(2s)` of the support in x.
    pub fn support_edge(&self, s: T) -> T {
        (self.z * self.z + self.zeta * self.zeta) / (s + s)
    }

    fn finite(&self) -> bool {
        [self.w, self.beta, self.x, self.zeta, self.z].iter().all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleParams<T> {
    pub b_sq: T,
    pub b_prime: T,
    pub mu: T,
    pub nu: T,
}

pub fn scale_params<T: Real>(p: &ChaosPoint<T>, s: T) -> Result<ScaleParams<T>> {
    positive_time("scale_params", s)?;
    let two = c::<T>(2.0);
    let ws = p.w * p.w + p.beta * p.beta;
    let a = s * p.w - two * p.z;
    let b = s * p.beta - two * p.zeta;
    let b_sq = (a * a + b * b) / c(8.0);
    let b_prime = (c::<T>(4.0) * (p.w * p.z + p.beta * p.zeta) - s * ws) / c(8.0);
    let s2 = s * s;
    let s3 = s2 * s;
    let mu = c::<T>(6.0) * b_sq / (c::<T>(5.0) * s3) + (b_prime - p.x) / s2 + ws / (c::<T>(24.0) * s);
    let nu = c::<T>(17.0) * b_sq / (c::<T>(35.0) * s3) + ws / (c::<T>(360.0) * s);
    Ok(ScaleParams { b_sq, b_prime, mu, nu })
}

/// `μ_s` written as `3[(z − sw/12)² + (ζ − sβ/12)²]/(5s³) + (w² + β²)/(16s) − x/s²`.
pub fn mu_completed_square<T: Real>(p: &ChaosPoint<T>, s: T) -> T {
    let a = p.z - s * p.w / c(12.0);
    let b = p.zeta - s * p.beta / c(12.0);
    c::<T>(3.0) * (a * a + b * b) / (c::<T>(5.0) * s * s * s) + (p.w * p.w + p.beta * p.beta) / (c::<T>(16.0) * s)
        - p.x / (s * s)
}

/// Density `q̃_s` of `(w_s, β_s, ζ_s, z̄_s)`.
pub fn marginal_gauss<T: Real>(w: T, beta: T, zeta: T, z: T, s: T) -> Result<T> {
    positive_time("marginal_gauss", s)?;
    Ok(log_marginal_gauss(w, beta, zeta, z, s).exp())
}

fn log_marginal_gauss<T: Real>(w: T, beta: T, zeta: T, z: T, s: T) -> T {
    log_langevin(s, w, z) + log_langevin(s, beta, zeta)
}

/// Pieces of the inversion integrand that depend only on (p, s).
#[derive(Debug, Clone, Copy)]
struct Integrand<T> {
    /// `B²/s³`
    bb: T,
    /// `(w² + β²)/(2s)`
    ww: T,
    /// `(B′ − x)/s²`
    lin: T,
}

impl<T: Real> Integrand<T> {
    fn new(p: &ChaosPoint<T>, s: T) -> Result<Self> {
        let sp = scale_params(p, s)?;
        Ok(Self {
            bb: sp.b_sq / (s * s * s),
            ww: (p.w * p.w + p.beta * p.beta) / (s + s),
            lin: (sp.b_prime - p.x) / (s * s),
        })
    }

    fn phase(&self, xi: T, u_i: T, v_i: T) -> T {
        c::<T>(2.0) * xi * xi * (self.bb * u_i + self.lin + self.ww * v_i)
    }

    fn eval(&self, xi: T) -> T {
        let a = shifted_aux(xi);
        let lam = self.phase(xi, a.u_i, a.v_i);
        let g = c::<T>(2.0) * (a.f_r_xi5 * lam.cos() - a.f_i_xi5 * lam.sin());
        g * (-self.bb * a.u_r_m12 - self.ww * a.v_r_m1).exp()
    }

    /// Envelope valid for ξ ≥ 2π, from `U_r − 12 ≥ 2ξ − 8`, `V_r − 1 ≥ ξ/2 − 21/20` and
    /// `(|F_r| + |F_i|) ≤ C e^{−ξ}/ξ`, with `ξ⁴ e^{−ξ/2} ≤ (8/e)⁴`.
    fn envelope(&self) -> Result<DecayEnvelope<T>> {
        let two_pi = T::TAU();
        let half = c::<T>(0.5);
        let rate = half + c::<T>(2.0) * self.bb + half * self.ww;
        let log_at_threshold = -T::PI() - self.bb * (c::<T>(4.0) * T::PI() - c(8.0))
            - self.ww * (T::FRAC_PI_2() - c(1.05));
        let k = c::<T>(2.0 * F_DECAY_CONSTANT) * (c::<T>(8.0) / T::E()).powi(4);
        DecayEnvelope::exponential(rate, k * log_at_threshold.exp(), two_pi)
    }

    /// Bound on `|dΛ/dξ| / 2ξ` used to size panels against the oscillation.
    fn phase_hint(&self) -> PhaseHint<T> {
        let q = c::<T>(2.0) * (c::<T>(1.2) * self.bb + self.lin.abs() + self.ww / c(12.0));
        PhaseHint { quadratic: q, linear: T::zero() }
    }
}

/// `G_s(ξ) e^{−(B²/s³)(U_r − 12) − ((w² + β²)/2s)(V_r − 1)} ξ⁵`.
pub fn integrand_eval<T: Real>(p: &ChaosPoint<T>, s: T, xi: T) -> Result<T> {
    if !p.finite() || !xi.is_finite() {
        return Err(Error::NonFinite { op: "integrand_eval" });
    }
    let v = Integrand::new(p, s)?.eval(xi.abs());
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { op: "integrand_eval" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityEstimate<T> {
    pub value: T,
    /// `quad_error + tail_bound`, in density units.
    pub error_estimate: T,
    pub quad_error: T,
    pub tail_bound: T,
    pub panels_used: usize,
    /// `|value| ≤ error_estimate`: the sign of `value` is not resolved.
    pub consistent_with_zero: bool,
}

/// `q_s(p) = q̃_s/(3πs²) ∫₀^∞ integrand_eval dξ`, with `tol` relative to the integral
/// (absolute floor `tol/100`).
pub fn q_exact<T: Real>(p: &ChaosPoint<T>, s: T, tol: T) -> Result<DensityEstimate<T>> {
    const OP: &str = "q_exact";
    if !(p.x > T::zero()) {
        return Err(Error::domain(OP, format!("x must be positive, got {}", p.x)));
    }
    integrate_inversion(OP, p, s, tol, T::one(), |_| T::one())
}

/// `q̃_s/(3πs²) ∫₀^∞ integrand·weight`, where `|weight| ≤ weight_bound`.
fn integrate_inversion<T: Real, F: Fn(T) -> T>(
    op: &'static str,
    p: &ChaosPoint<T>,
    s: T,
    tol: T,
    weight_bound: T,
    weight: F,
) -> Result<DensityEstimate<T>> {
    if !p.finite() {
        return Err(Error::NonFinite { op });
    }
    positive_time(op, s)?;
    if !(tol > T::zero()) {
        return Err(Error::invalid(op, "tolerance must be positive"));
    }
    let ig = Integrand::new(p, s)?;
    let env = ig.envelope()?;
    let env = DecayEnvelope::new(env.kind, env.rate, env.prefactor * weight_bound, env.threshold)?;
    let opts = QuadOptions {
        abs_tol: tol * c(1e-2),
        rel_tol: tol,
        max_panels: MAX_PANELS,
        max_width: T::one(),
        phase: Some(ig.phase_hint()),
    };
    let upper = env.truncation_point(opts.abs_tol * c(0.5));
    let periods = ig.phase_hint().quadratic * upper * upper / T::TAU();
    if periods > c(MAX_OSCILLATIONS) {
        return Err(Error::BudgetExceeded {
            op,
            tol: tol.as_f64(),
            budget: MAX_OSCILLATIONS as usize,
            achieved: periods.as_f64(),
        });
    }
    let r = integrate_semiline_with(|xi| ComplexValue::new(ig.eval(xi) * weight(xi), T::zero()), &env, &opts)?;
    let log_pref = log_marginal_gauss(p.w, p.beta, p.zeta, p.z, s) - (c::<T>(3.0) * T::PI() * s * s).ln();
    let pref = log_pref.exp();
    let value = pref * r.value.re;
    let quad_error = pref * r.quad_error;
    let tail_bound = pref * r.tail_bound;
    let error_estimate = quad_error + tail_bound;
    Ok(DensityEstimate {
        value,
        error_estimate,
        quad_error,
        tail_bound,
        panels_used: r.panels_used,
        consistent_with_zero: value.abs() <= error_estimate,
    })
}

/// `∫_{x_lo}^{x_hi} q_s(w, β, x, ζ, z) dx` with `(w, β, ζ, z)` from `p` (its x is ignored).
/// Λ_s is affine in x with slope `−2ξ²/s²`, so the x-integral is taken inside the inversion
/// integral: it multiplies the integrand at the midpoint by `(x_hi − x_lo)·sinc(ξ²(x_hi − x_lo)/s²)`.
pub fn q_x_interval<T: Real>(p: &ChaosPoint<T>, s: T, x_lo: T, x_hi: T, tol: T) -> Result<DensityEstimate<T>> {
    const OP: &str = "q_x_interval";
    if !(x_lo >= T::zero() && x_hi > x_lo && x_hi.is_finite()) {
        return Err(Error::domain(OP, format!("need 0 ≤ x_lo < x_hi, got [{x_lo}, {x_hi}]")));
    }
    let width = x_hi - x_lo;
    let mid = ChaosPoint { x: (x_lo + x_hi) * c(0.5), ..*p };
    let k = width / (s * s);
    integrate_inversion(OP, &mid, s, tol, width, move |xi: T| {
        let a = xi * xi * k;
        if a.abs() < c(1e-4) {
            width * (T::one() - a * a / c(6.0))
        } else {
            width * a.sin() / a
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Condition22,
    Condition23,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport<T> {
    pub satisfied: Regime,
    pub mu: T,
    pub epsilon: T,
    pub condition22: bool,
    pub condition23: bool,
}

/// Condition 22: `μ_s ≥ mu_threshold` and `x/s² ≤ (z² + ζ²)/s³ + μ_s/ε`.
/// Condition 23: `((sw − 2z)² + (sβ − 2ζ)²)/s³ + (w² + β²)/s ≥ mu_threshold` and
/// `2sx ≤ z² + ζ² + εs²(w² + β²)`.
pub fn regime_check<T: Real>(p: &ChaosPoint<T>, s: T, eps: T, mu_threshold: T) -> Result<RegimeReport<T>> {
    const OP: &str = "regime_check";
    if !(eps > T::zero()) || !(mu_threshold > T::zero()) {
        return Err(Error::invalid(OP, "ε and mu_threshold must be positive"));
    }
    let sp = scale_params(p, s)?;
    let zz = p.z * p.z + p.zeta * p.zeta;
    let ws = p.w * p.w + p.beta * p.beta;
    let s2 = s * s;
    let s3 = s2 * s;
    let condition22 = sp.mu >= mu_threshold && p.x / s2 <= zz / s3 + sp.mu / eps;
    let two = c::<T>(2.0);
    let a = s * p.w - two * p.z;
    let b = s * p.beta - two * p.zeta;
    let divergent = (a * a + b * b) / s3 + ws / s;
    let condition23 = divergent >= mu_threshold && two * s * p.x <= zz + eps * s2 * ws;
    let satisfied = if condition22 {
        Regime::Condition22
    } else if condition23 {
        Regime::Condition23
    } else {
        Regime::None
    };
    Ok(RegimeReport { satisfied, mu: sp.mu, epsilon: eps, condition22, condition23 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticEval<T> {
    /// `None` when `μ_s ≤ 0`.
    pub value: Option<T>,
    pub log_value: Option<T>,
    pub report: RegimeReport<T>,
}

/// `q̃_s / (60π s² μ_s³)`, the small-time equivalent claimed under either regime condition.
pub fn q_asymptotic<T: Real>(p: &ChaosPoint<T>, s: T, eps: T) -> Result<AsymptoticEval<T>> {
    q_asymptotic_with(p, s, eps, c(DEFAULT_MU_THRESHOLD))
}

pub fn q_asymptotic_with<T: Real>(p: &ChaosPoint<T>, s: T, eps: T, mu_threshold: T) -> Result<AsymptoticEval<T>> {
    let report = regime_check(p, s, eps, mu_threshold)?;
    if !(report.mu > T::zero()) {
        return Ok(AsymptoticEval { value: None, log_value: None, report });
    }
    let log = log_marginal_gauss(p.w, p.beta, p.zeta, p.z, s)
        - (c::<T>(60.0) * T::PI() * s * s).ln()
        - c::<T>(3.0) * report.mu.ln();
    Ok(AsymptoticEval { value: Some(log.exp()), log_value: Some(log), report })
}

fn positive_time<T: Real>(op: &'static str, s: T) -> Result<()> {
    if s > T::zero() && s.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("time must be positive, got {s}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_scale_params() {
        let p = ChaosPoint::new(0.0, 0.0, 0.3, 0.0, 0.0);
        let sp = scale_params(&p, 0.5f64).unwrap();
        assert_eq!((sp.b_sq, sp.b_prime, sp.nu), (0.0, 0.0, 0.0));
        assert!((sp.mu + 0.3 / 0.25).abs() < 1e-15);
        assert!(scale_params(&p, 0.0).is_err());
    }

    #[test]
    fn integrand_vanishes_at_origin() {
        let p = ChaosPoint::new(0.1, 0.2, 0.5, 0.3, 0.4);
        assert_eq!(integrand_eval(&p, 1.0f64, 0.0).unwrap(), 0.0);
        let v = integrand_eval(&p, 1.0f64, 1e-4).unwrap();
        assert!((v / 1e-4 - 12.0).abs() < 1e-3);
    }

    #[test]
    fn regime_examples() {
        let p = ChaosPoint::new(1.0, 1.0, 0.01, 0.5, 0.5);
        let r = regime_check(&p, 0.1f64, 0.5, 10.0).unwrap();
        assert_eq!(r.satisfied, Regime::Condition22);
        let p = ChaosPoint::new(0.0, 0.0, 2.0, 0.0, 0.0);
        let r = regime_check(&p, 0.1f64, 0.5, 10.0).unwrap();
        assert_eq!(r.satisfied, Regime::None);
        assert!(q_asymptotic(&p, 0.1f64, 0.5).unwrap().value.is_none());
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ChaosPoint::new(0.0, 0.0, 0.0, 0.0, 0.0);
        assert!(q_exact(&p, 1.0f64, 1e-8).is_err());
        let p = ChaosPoint::new(0.0, 0.0, 0.5, 0.0, 0.0);
        assert!(q_exact(&p, -1.0f64, 1e-8).is_err());
        assert!(q_exact(&p, 1.0f64, 0.0).is_err());
    }
}
