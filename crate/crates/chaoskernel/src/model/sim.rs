use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fields::PhasePoint;
use crate::density::ChaosPoint;
use crate::error::{Error, Result};

pub const DEFAULT_STEPS_PER_UNIT: usize = 4096;
/// Paths with `|λ|` beyond this are rejected before `ch λ` overflows.
pub const LAMBDA_GUARD: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Left-point sums everywhere.
    Euler,
    /// Trapezoid sums; the time integrals of the driving Brownian motions also receive the
    /// exact bridge correction, so `(w, β, ζ, z̄)` have their exact joint law.
    #[default]
    #[serde(rename = "exact-gaussian-plus-trapezoid")]
    ExactGaussianTrapezoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathConfig {
    pub s_final: f64,
    pub steps: usize,
    pub seed: u64,
    pub scheme: Scheme,
}

impl PathConfig {
    pub fn new(s_final: f64, steps: usize, seed: u64, scheme: Scheme) -> Result<Self> {
        let cfg = Self { s_final, steps, seed, scheme };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_final > 0.0 && self.s_final.is_finite()) {
            return Err(Error::invalid("PathConfig", format!("s_final must be positive, got {}", self.s_final)));
        }
        if self.steps == 0 {
            return Err(Error::invalid("PathConfig", "steps must be at least 1"));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.s_final / self.steps as f64
    }

    /// Generator of path `index`: one ChaCha stream per path, so paths are independent of the
    /// order and the number of workers that produce them.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// State of the diffusion together with its driving motions and their tangent functionals.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DudleySample {
    pub t: f64,
    pub point: PhasePoint,
    pub w: f64,
    pub beta: f64,
    /// `∫β`
    pub zeta: f64,
    /// `∫w`
    pub zbar: f64,
    /// `½∫(w² + β²)`
    pub a: f64,
}

/// Integrates the Itô system `dλ = dw + ½ th λ dt`, `dμ = dβ/ch λ` and the position equations,
/// drawing the increments `(Δw, Δβ)` of step `k` from `increments(k)`. `observe` sees every
/// grid state, the initial one included.
pub fn integrate_dudley<I, O>(cfg: &PathConfig, mut increments: I, mut observe: O) -> Result<DudleySample>
where
    I: FnMut(usize) -> (f64, f64),
    O: FnMut(&DudleySample),
{
    cfg.validate()?;
    let dt = cfg.dt();
    let trapezoid = cfg.scheme == Scheme::ExactGaussianTrapezoid;
    let mut st = DudleySample::default();
    observe(&st);
    let mut vel = st.point.velocity();
    for k in 0..cfg.steps {
        let (dw, db) = increments(k);
        let p = st.point;
        let next = PhasePoint {
            lambda: p.lambda + dw + 0.5 * p.lambda.tanh() * dt,
            mu: p.mu + db / p.lambda.cosh(),
            ..p
        };
        if !(next.lambda.abs() <= LAMBDA_GUARD) || !next.mu.is_finite() {
            return Err(Error::PathBlowUp { op: "simulate_dudley", step: k, lambda: next.lambda });
        }
        let (w1, b1) = (st.w + dw, st.beta + db);
        let new_vel = next.velocity();
        let (x, y, z, zeta, zbar, a);
        if trapezoid {
            let h = 0.5 * dt;
            x = p.x + h * (vel[0] + new_vel[0]);
            y = p.y + h * (vel[1] + new_vel[1]);
            z = p.z + h * (vel[2] + new_vel[2]);
            zeta = st.zeta + h * (st.beta + b1);
            zbar = st.zbar + h * (st.w + w1);
            a = st.a + 0.5 * h * (st.w * st.w + st.beta * st.beta + w1 * w1 + b1 * b1);
        } else {
            x = p.x + dt * vel[0];
            y = p.y + dt * vel[1];
            z = p.z + dt * vel[2];
            zeta = st.zeta + dt * st.beta;
            zbar = st.zbar + dt * st.w;
            a = st.a + 0.5 * dt * (st.w * st.w + st.beta * st.beta);
        }
        st = DudleySample {
            t: (k + 1) as f64 * dt,
            point: PhasePoint { x, y, z, ..next },
            w: w1,
            beta: b1,
            zeta,
            zbar,
            a,
        };
        vel = new_vel;
        observe(&st);
    }
    Ok(st)
}

/// Grid path of the diffusion number `index` under `cfg`.
pub fn simulate_dudley(cfg: &PathConfig, index: u64) -> Result<Vec<DudleySample>> {
    let mut rng = cfg.rng(index);
    let sd = cfg.dt().sqrt();
    let mut path = Vec::with_capacity(cfg.steps + 1);
    integrate_dudley(
        cfg,
        |_| (sd * rng.sample::<f64, _>(StandardNormal), sd * rng.sample::<f64, _>(StandardNormal)),
        |s| path.push(*s),
    )?;
    Ok(path)
}

/// One draw of `Y_s = (w_s, β_s, A_s, ζ_s, z̄_s)` for path `index`.
pub fn simulate_tangent(cfg: &PathConfig, index: u64) -> Result<ChaosPoint<f64>> {
    cfg.validate()?;
    let mut rng = cfg.rng(index);
    let dt = cfg.dt();
    let sd = dt.sqrt();
    let (mut w, mut b) = (0.0f64, 0.0f64);
    let (mut zbar, mut zeta, mut a) = (0.0f64, 0.0f64, 0.0f64);
    match cfg.scheme {
        Scheme::Euler => {
            for _ in 0..cfg.steps {
                zbar += w;
                zeta += b;
                a += w * w + b * b;
                w += sd * rng.sample::<f64, _>(StandardNormal);
                b += sd * rng.sample::<f64, _>(StandardNormal);
            }
            zbar *= dt;
            zeta *= dt;
            a *= 0.5 * dt;
        }
        Scheme::ExactGaussianTrapezoid => {
            let mut prev_sq = 0.0;
            for _ in 0..cfg.steps {
                let (w0, b0) = (w, b);
                w += sd * rng.sample::<f64, _>(StandardNormal);
                b += sd * rng.sample::<f64, _>(StandardNormal);
                zbar += w0 + w;
                zeta += b0 + b;
                let sq = w * w + b * b;
                a += prev_sq + sq;
                prev_sq = sq;
            }
            // The integral of a Brownian bridge over one step is N(0, dt³/12), independent
            // of the endpoints; summed over the grid it is N(0, steps·dt³/12).
            let bridge = (cfg.steps as f64 * dt * dt * dt / 12.0).sqrt();
            zbar = 0.5 * dt * zbar + bridge * rng.sample::<f64, _>(StandardNormal);
            zeta = 0.5 * dt * zeta + bridge * rng.sample::<f64, _>(StandardNormal);
            a *= 0.25 * dt;
        }
    }
    Ok(ChaosPoint::new(w, b, a, zeta, zbar))
}

/// Paths `0..paths` of [`simulate_tangent`], in index order whatever the thread count.
pub fn tangent_ensemble(cfg: &PathConfig, paths: usize) -> Result<Vec<ChaosPoint<f64>>> {
    cfg.validate()?;
    (0..paths as u64).into_par_iter().map(|i| simulate_tangent(cfg, i)).collect()
}

/// First time `|β| = level` for a Brownian motion on a grid of width `dt`; each step
/// also tests the bridge between grid values, and a crossing is dated at the step midpoint.
pub fn hitting_time(seed: u64, index: u64, dt: f64, level: f64) -> Result<f64> {
    if !(dt > 0.0 && level > 0.0) {
        return Err(Error::invalid("hitting_time", "dt and level must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    rng.set_stream(index);
    let sd = dt.sqrt();
    let mut b = 0.0f64;
    let mut k = 0u64;
    loop {
        let next = b + sd * rng.sample::<f64, _>(StandardNormal);
        let crossed = if next.abs() >= level {
            true
        } else {
            let up = (-2.0 * (level - b) * (level - next) / dt).exp();
            let down = (-2.0 * (level + b) * (level + next) / dt).exp();
            rng.random::<f64>() < up + down
        };
        if crossed {
            return Ok((k as f64 + 0.5) * dt);
        }
        b = next;
        k += 1;
    }
}

pub fn hitting_times(seed: u64, n: usize, dt: f64, level: f64) -> Result<Vec<f64>> {
    (0..n as u64).into_par_iter().map(|i| hitting_time(seed, i, dt, level)).collect()
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moment {
    pub name: String,
    pub mean: f64,
    pub std_error: f64,
}

impl Moment {
    pub fn of(name: &str, values: impl Iterator<Item = f64>) -> Self {
        let (mut n, mut mean, mut m2) = (0.0f64, 0.0f64, 0.0f64);
        for v in values {
            n += 1.0;
            let d = v - mean;
            mean += d / n;
            m2 += d * (v - mean);
        }
        let var = if n > 1.0 { m2 / (n - 1.0) } else { f64::NAN };
        Self { name: name.to_string(), mean, std_error: (var / n).sqrt() }
    }
}

/// Means of the five coordinates and of `e^{−A}`.
pub fn summarize(samples: &[ChaosPoint<f64>]) -> Vec<Moment> {
    vec![
        Moment::of("w", samples.iter().map(|p| p.w)),
        Moment::of("beta", samples.iter().map(|p| p.beta)),
        Moment::of("a", samples.iter().map(|p| p.x)),
        Moment::of("zeta", samples.iter().map(|p| p.zeta)),
        Moment::of("zbar", samples.iter().map(|p| p.z)),
        Moment::of("exp_minus_a", samples.iter().map(|p| (-p.x).exp())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_noise_is_the_geodesic() {
        let cfg = PathConfig::new(0.7, 64, 0, Scheme::ExactGaussianTrapezoid).unwrap();
        let end = integrate_dudley(&cfg, |_| (0.0, 0.0), |_| {}).unwrap();
        assert_eq!(end.point.lambda, 0.0);
        assert!((end.point.x - 0.7).abs() < 1e-14);
        assert_eq!((end.point.y, end.point.z), (0.0, 0.0));
    }

    #[test]
    fn blow_up_is_reported() {
        let cfg = PathConfig::new(1.0, 4, 0, Scheme::Euler).unwrap();
        let r = integrate_dudley(&cfg, |_| (200.0, 0.0), |_| {});
        assert!(matches!(r, Err(Error::PathBlowUp { step: 1, .. })));
    }

    #[test]
    fn reproducible() {
        let cfg = PathConfig::new(1.0, 128, 42, Scheme::ExactGaussianTrapezoid).unwrap();
        assert_eq!(simulate_tangent(&cfg, 3).unwrap(), simulate_tangent(&cfg, 3).unwrap());
        assert_ne!(simulate_tangent(&cfg, 3).unwrap(), simulate_tangent(&cfg, 4).unwrap());
        assert_eq!(simulate_dudley(&cfg, 1).unwrap(), simulate_dudley(&cfg, 1).unwrap());
    }

    #[test]
    fn config_validation() {
        assert!(PathConfig::new(0.0, 10, 0, Scheme::Euler).is_err());
        assert!(PathConfig::new(1.0, 0, 0, Scheme::Euler).is_err());
    }

    #[test]
    fn scheme_names() {
        assert_eq!(serde_json::to_string(&Scheme::ExactGaussianTrapezoid).unwrap(), "\"exact-gaussian-plus-trapezoid\"");
        assert_eq!(serde_json::to_string(&Scheme::Euler).unwrap(), "\"euler\"");
    }
}
