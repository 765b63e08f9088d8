//! Closed-form Fourier–Laplace transforms of `(w_s, ∫w, ∫w²)` and of the tangent process,
//! and the kernel `Φ(λ) = Ψ(√−λ)` used by the density inversion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::ensure_finite;
use crate::scalar::{c, Real};
use crate::special::{
    horner_complex, horner_real, C_COEFFS, G_COEFFS, SH2_HALF_OVER_X2_CH, TH_OVER_X, U_COEFFS,
    X_MINUS_TH_OVER_X3,
};
use crate::ComplexValue;

/// Below this `|λ|` (or `b²`, `(bs)²`) the kernels are evaluated from their Taylor series.
pub const SERIES_RADIUS: f64 = 0.25;
const PHI_SERIES_RADIUS: f64 = 1.0;

/// `E[exp(i r w_s + i c ∫w − (b²/2)∫w²)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlQueryZ<T> {
    pub s: T,
    pub r: T,
    pub c: T,
    pub b: T,
}

/// `E[exp(i r w_s + i ϱ β_s + i γ ζ_s + i c z̄_s − b² A_s)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlQueryY<T> {
    pub s: T,
    pub r: T,
    pub rho: T,
    pub gamma: T,
    pub c: T,
    pub b: T,
}

/// Gaussian coordinates `(w, β, ζ, z)` of the tangent process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginalPoint<T> {
    pub w: T,
    pub beta: T,
    pub zeta: T,
    pub z: T,
}

impl<T: Real> MarginalPoint<T> {
    pub fn new(w: T, beta: T, zeta: T, z: T) -> Self {
        Self { w, beta, zeta, z }
    }

    /// `B² = ((w − 2z)² + (β − 2ζ)²)/8`
    fn b_sq(&self) -> T {
        let a = self.w - c::<T>(2.0) * self.z;
        let b = self.beta - c::<T>(2.0) * self.zeta;
        (a * a + b * b) / c(8.0)
    }

    fn w_sq(&self) -> T {
        self.w * self.w + self.beta * self.beta
    }

    fn z_sq(&self) -> T {
        self.z * self.z + self.zeta * self.zeta
    }

    fn finite(&self) -> bool {
        self.w.is_finite() && self.beta.is_finite() && self.zeta.is_finite() && self.z.is_finite()
    }
}

/// Covariance of `(√(2b) w_s, √(2b³) ∫τ dw_τ)` under the Ornstein–Uhlenbeck measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OuCovariance<T> {
    pub k: [[T; 2]; 2],
    /// `det K = 2(bs − 2) + 8e^{−bs} − 2(bs + 2)e^{−2bs}`
    pub delta: T,
}

/// Density of `(w_s, ∫₀^s w)`.
pub fn langevin_density<T: Real>(s: T, w: T, z: T) -> Result<T> {
    positive_time("langevin_density", s)?;
    Ok(log_langevin(s, w, z).exp())
}

pub(crate) fn log_langevin<T: Real>(s: T, w: T, z: T) -> T {
    let d = z - s * w * c(0.5);
    (c::<T>(3.0).sqrt() / (T::PI() * s * s)).ln() - c::<T>(6.0) / (s * s * s) * d * d - w * w / (s + s)
}

pub fn flt_z<T: Real>(q: &FlQueryZ<T>) -> Result<ComplexValue<T>> {
    const OP: &str = "flt_Z";
    if !(q.s >= T::zero() && q.b >= T::zero()) || !(q.s.is_finite() && q.b.is_finite()) {
        return Err(Error::domain(OP, format!("need s ≥ 0 and b ≥ 0, got s = {}, b = {}", q.s, q.b)));
    }
    if !(q.r.is_finite() && q.c.is_finite()) {
        return Err(Error::NonFinite { op: OP });
    }
    let (s, b, r, cc) = (q.s, q.b, q.r, q.c);
    let x = b * s;
    let half = c::<T>(0.5);
    // Coefficients of r², rc, c² and log ch(bs).
    let (k_rr, k_rc, k_cc, log_ch) = if x * x < c(SERIES_RADIUS) {
        let x2 = x * x;
        (
            s * half * horner_real(&TH_OVER_X, 0, x2),
            c::<T>(2.0) * s * s * horner_real(&SH2_HALF_OVER_X2_CH, 0, x2),
            s * s * s * half * horner_real(&X_MINUS_TH_OVER_X3, 0, x2),
            x.cosh().ln(),
        )
    } else {
        let e2 = (-(x + x)).exp();
        let th = (T::one() - e2) / (T::one() + e2);
        let sech = c::<T>(2.0) * (-x).exp() / (T::one() + e2);
        (
            th / (b + b),
            (T::one() - sech) / (b * b),
            (x - th) / (c::<T>(2.0) * b * b * b),
            x + e2.ln_1p() - T::LN_2(),
        )
    };
    let log = -half * log_ch - k_rr * r * r - k_rc * r * cc - k_cc * cc * cc;
    ensure_finite(OP, ComplexValue::new(log.exp(), T::zero()))
}

pub fn flt_y<T: Real>(q: &FlQueryY<T>) -> Result<ComplexValue<T>> {
    let a = flt_z(&FlQueryZ { s: q.s, r: q.r, c: q.c, b: q.b })?;
    let b = flt_z(&FlQueryZ { s: q.s, r: q.rho, c: q.gamma, b: q.b })?;
    Ok(a * b)
}

/// Density of `(w_1, ∫₀¹ w)` weighted by `E[e^{−(b²/2)∫w²} | w_1, ∫w]`.
pub fn laplace_z1<T: Real>(w: T, z: T, b: T) -> Result<T> {
    const OP: &str = "laplace_Z1";
    if !(b >= T::zero()) || !b.is_finite() {
        return Err(Error::domain(OP, format!("need b ≥ 0, got {b}")));
    }
    if b == T::zero() {
        return langevin_density(T::one(), w, z);
    }
    let half = c::<T>(0.5);
    let d = w - c::<T>(2.0) * z;
    let b2 = b * b;
    let log = if b2 < c(SERIES_RADIUS) {
        // b − 2 th(b/2) = −b³/u(−b²), 1 − (b/2)coth(b/2) = b² T₁(−b²), (b/2)coth(b/2) = g(−b²).
        let lam = -b2;
        let u = horner_real(&U_COEFFS, 0, lam);
        let t1 = horner_real(&G_COEFFS, 1, lam);
        let g = horner_real(&G_COEFFS, 0, lam);
        half * (b / b.sinh()).ln() + half * (-u).ln() - (T::TAU()).ln() + d * d / (c::<T>(8.0) * t1)
            - half * b2 * z * z
            - half * g * w * w
    } else {
        let e = (-b).exp();
        let coth_half = (T::one() + e) / (T::one() - e);
        let log_sh = b + (-(e * e)).ln_1p() - T::LN_2();
        let denom = b - c::<T>(2.0) / coth_half;
        c::<T>(2.0) * b.ln() - T::TAU().ln() - half * (denom.ln() + log_sh)
            + b2 / c(8.0) * d * d / (T::one() - half * b * coth_half)
            - half * b2 * z * z
            - b / c(4.0) * coth_half * w * w
    };
    finite_exp(OP, log)
}

/// `Ψ(b) = E[e^{−b² A_1} | w_1, β_1, ζ_1, z̄_1] × density`, closed form in log space.
pub fn psi<T: Real>(p: &MarginalPoint<T>, b: T) -> Result<T> {
    const OP: &str = "psi";
    if !(b >= T::zero()) || !b.is_finite() {
        return Err(Error::domain(OP, format!("need b ≥ 0, got {b}")));
    }
    if !p.finite() {
        return Err(Error::NonFinite { op: OP });
    }
    let half = c::<T>(0.5);
    if b == T::zero() {
        let a = p.z - half * p.w;
        let g = p.zeta - half * p.beta;
        let log = (c::<T>(3.0) / (T::PI() * T::PI())).ln() - half * p.w_sq() - c::<T>(6.0) * (a * a + g * g);
        return finite_exp(OP, log);
    }
    let b2 = b * b;
    if b2 < c(SERIES_RADIUS) {
        return finite_exp(OP, log_phi_series(p, ComplexValue::new(-b2, T::zero())).re);
    }
    let e = (-b).exp();
    let coth_half = (T::one() + e) / (T::one() - e);
    let log_den = (c::<T>(8.0) * T::PI() * T::PI()).ln()
        + (b * half - T::LN_2() + (b * (T::one() + e) - c::<T>(2.0) * (T::one() - e)).ln())
        + (b * half - T::LN_2() + (-e).ln_1p());
    let s = c::<T>(8.0) * p.b_sq();
    let exponent = b2 / c(8.0) * s / (T::one() - half * b * coth_half) - half * b2 * p.z_sq()
        - b / c(4.0) * coth_half * p.w_sq();
    finite_exp(OP, c::<T>(4.0) * b.ln() - log_den + exponent)
}

/// `Φ(λ) = Ψ(√−λ)`, analytic for `ℜλ < 4π²`.
pub fn phi<T: Real>(p: &MarginalPoint<T>, lam: ComplexValue<T>) -> Result<ComplexValue<T>> {
    const OP: &str = "phi";
    ensure_finite(OP, lam)?;
    if !p.finite() {
        return Err(Error::NonFinite { op: OP });
    }
    let four_pi2 = c::<T>(4.0) * T::PI() * T::PI();
    if lam.re >= four_pi2 {
        return Err(Error::domain(OP, format!("ℜλ = {} ≥ 4π²", lam.re)));
    }
    let log = if lam.norm() < c(PHI_SERIES_RADIUS) { log_phi_series(p, lam) } else { log_phi_closed(p, lam) };
    let v = log.exp();
    let v = if lam.im == T::zero() { ComplexValue::new(v.re, T::zero()) } else { v };
    ensure_finite(OP, v)
}

fn log_phi_series<T: Real>(p: &MarginalPoint<T>, lam: ComplexValue<T>) -> ComplexValue<T> {
    let cc = horner_complex(&C_COEFFS, 0, lam);
    let g = horner_complex(&G_COEFFS, 0, lam);
    let u = horner_complex(&U_COEFFS, 0, lam);
    log_phi_from(p, lam, cc.ln(), g, u)
}

fn log_phi_closed<T: Real>(p: &MarginalPoint<T>, lam: ComplexValue<T>) -> ComplexValue<T> {
    let i = ComplexValue::new(T::zero(), T::one());
    let one = ComplexValue::new(T::one(), T::zero());
    let half = c::<T>(0.5);
    let mut k = lam.sqrt();
    if k.im < T::zero() {
        k = -k;
    }
    // With ℑk ≥ 0, q = e^{ik} has modulus ≤ 1 and every expression below is bounded.
    let q = (i * k).exp();
    let g = k * half * i * (q + one) / (q - one);
    let tan_half = -i * (q - one) / (q + one);
    let u = lam / (one - tan_half * c::<T>(2.0) / k);
    let ik4 = i * k * c::<T>(0.25);
    let bracket = q - (ik4 + half) - q * q * (-ik4 + half);
    let log_d = -i * k + bracket.ln();
    let log_c = lam.ln() * c::<T>(2.0) - c::<T>(4.0).ln() - log_d;
    log_phi_from(p, lam, log_c, g, u)
}

// log Φ = log c(λ) − log 2π² + B'λ − (W/2) g(λ) + B² u(λ), with B' = (z² + ζ²)/2 − B².
fn log_phi_from<T: Real>(
    p: &MarginalPoint<T>,
    lam: ComplexValue<T>,
    log_c: ComplexValue<T>,
    g: ComplexValue<T>,
    u: ComplexValue<T>,
) -> ComplexValue<T> {
    let half = c::<T>(0.5);
    let b_sq = p.b_sq();
    let b_prime = half * p.z_sq() - b_sq;
    log_c - (c::<T>(2.0) * T::PI() * T::PI()).ln() + lam * b_prime - g * (half * p.w_sq()) + u * b_sq
}

pub fn ou_covariance_oracle<T: Real>(b: T, s: T) -> Result<OuCovariance<T>> {
    const OP: &str = "ou_covariance_oracle";
    if !(b > T::zero() && s > T::zero()) || !(b.is_finite() && s.is_finite()) {
        return Err(Error::domain(OP, format!("need b, s > 0, got b = {b}, s = {s}")));
    }
    let x = b * s;
    let e1 = (-x).exp();
    let e2 = e1 * e1;
    let one = T::one();
    let k11 = -(-(x + x)).exp_m1();
    let k12 = x - one + c::<T>(2.0) * e1 - (x + one) * e2;
    let k22 = x * x - c::<T>(3.0) + c::<T>(4.0) * (x + one) * e1 - (x + one) * (x + one) * e2;
    let delta = c::<T>(2.0) * (x - c(2.0)) + c::<T>(8.0) * e1 - c::<T>(2.0) * (x + c(2.0)) * e2;
    Ok(OuCovariance { k: [[k11, k12], [k12, k22]], delta })
}

fn positive_time<T: Real>(op: &'static str, s: T) -> Result<()> {
    if s > T::zero() && s.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("time must be positive, got {s}")))
    }
}

fn finite_exp<T: Real>(op: &'static str, log: T) -> Result<T> {
    if log.is_nan() || log == T::infinity() {
        return Err(Error::NonFinite { op });
    }
    Ok(log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const P: MarginalPoint<f64> = MarginalPoint { w: 0.1, beta: 0.2, zeta: 0.3, z: 0.4 };

    #[test]
    fn langevin_prefactor() {
        let v = langevin_density(1.0, 0.0, 0.0).unwrap();
        assert!((v - 3f64.sqrt() / std::f64::consts::PI).abs() < 1e-15);
        assert!(langevin_density(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn flt_z_limits() {
        let q = FlQueryZ { s: 1.0, r: 1.0, c: 1.0, b: 1e-6 };
        let expect = (-(1.0 + 1.0 + 1.0 / 3.0) / 2.0f64).exp();
        assert!((flt_z(&q).unwrap().re - expect).abs() < 1e-6);
        let q = FlQueryZ { s: 2.0, r: 0.0, c: 0.0, b: 0.8 };
        assert!((flt_z(&q).unwrap().re - 1.6f64.cosh().powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn flt_z_branches_meet() {
        let x = SERIES_RADIUS.sqrt();
        for (r, cc) in [(0.3, -0.7), (1.2, 0.4)] {
            let below = f64::from_bits(x.to_bits() - 1);
            let lo = flt_z(&FlQueryZ { s: 1.0, r, c: cc, b: below }).unwrap().re;
            let hi = flt_z(&FlQueryZ { s: 1.0, r, c: cc, b: x }).unwrap().re;
            assert!((lo - hi).abs() < 1e-13 * lo, "{lo} {hi}");
        }
    }

    #[test]
    fn flt_y_edge_cases() {
        let q = FlQueryY { s: 1.5, r: 0.0, rho: 0.0, gamma: 0.0, c: 0.0, b: 0.7 };
        assert!((flt_y(&q).unwrap().re - 1.0 / 1.05f64.cosh()).abs() < 1e-15);
        let q = FlQueryY { s: 0.0, r: 3.0, rho: -1.0, gamma: 2.0, c: 5.0, b: 0.7 };
        assert_eq!(flt_y(&q).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn laplace_z1_small_b_is_langevin() {
        let a: f64 = laplace_z1(0.3, 0.2, 1e-4).unwrap();
        let b = langevin_density(1.0, 0.3, 0.2).unwrap();
        assert!((a / b - 1.0).abs() < 1e-6);
        assert_eq!(laplace_z1(0.3, 0.2, 0.0).unwrap(), b);
    }

    #[test]
    fn laplace_z1_branches_meet() {
        let b = SERIES_RADIUS.sqrt();
        let lo = laplace_z1(0.4, -0.3, f64::from_bits(b.to_bits() - 1)).unwrap();
        let hi = laplace_z1(0.4, -0.3, b).unwrap();
        assert!((lo / hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn psi_at_origin() {
        let o = MarginalPoint::new(0.0, 0.0, 0.0, 0.0);
        let v = psi(&o, 0.0).unwrap();
        assert!((v - 3.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn psi_factorizes() {
        for b in [0.1, 0.3, 0.5, 1.0, 3.0] {
            let a = psi(&P, b).unwrap();
            let f = laplace_z1(P.w, P.z, b).unwrap() * laplace_z1(P.beta, P.zeta, b).unwrap();
            assert!((a / f - 1.0).abs() < 1e-12, "b = {b}: {a} vs {f}");
        }
    }

    #[test]
    fn psi_survives_large_b() {
        let v = psi(&P, 2000.0).unwrap();
        assert!(v.is_finite() && v >= 0.0);
    }

    #[test]
    fn phi_matches_psi_on_negative_axis() {
        for b in [0.0, 0.4, 1.0, 2.5] {
            let a = phi(&P, Complex64::new(-b * b, 0.0)).unwrap();
            let e = psi(&P, b).unwrap();
            assert!((a.re / e - 1.0).abs() < 1e-12 && a.im == 0.0, "b = {b}");
        }
    }

    #[test]
    fn phi_branches_meet() {
        for arg in [0.3, 1.7, 2.9] {
            let z = Complex64::from_polar(PHI_SERIES_RADIUS, arg);
            let a = log_phi_series(&P, z);
            let b = log_phi_closed(&P, z);
            assert!((a.exp() - b.exp()).norm() < 1e-13 * a.exp().norm(), "arg {arg}");
        }
    }

    #[test]
    fn phi_domain() {
        let four_pi2 = 4.0 * std::f64::consts::PI.powi(2);
        assert!(matches!(phi(&P, Complex64::new(four_pi2, 0.0)), Err(Error::Domain { .. })));
        assert!(phi(&P, Complex64::new(four_pi2 - 1.0, 3.0)).is_ok());
    }

    #[test]
    fn ou_covariance_determinant() {
        let k = ou_covariance_oracle(0.7f64, 1.3).unwrap();
        let det = k.k[0][0] * k.k[1][1] - k.k[0][1] * k.k[1][0];
        assert!((det - k.delta).abs() < 1e-13);
        assert!((k.k[0][0] - (1.0 - (-2.0f64 * 0.91).exp())).abs() < 1e-15);
    }
}
