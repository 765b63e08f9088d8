use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::sim::{integrate_dudley, PathConfig, Scheme};
use super::stats::log_log_slope;
use crate::error::{Error, Result};

pub const MIN_PROBE_PATHS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderRow {
    pub s: f64,
    /// Empirical `P[sup_{t≤s} ‖R_t‖ ≥ R s^{3/2}]`.
    pub tail_r: f64,
    /// Empirical `P[sup_{t≤s} ‖R′_t‖ ≥ R s^{5/2}]`.
    pub tail_r_prime: f64,
    pub median_r: f64,
    pub median_r_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderTable {
    pub r: f64,
    pub paths: usize,
    pub steps: usize,
    pub rows: Vec<RemainderRow>,
    /// Log–log slope of `median sup ‖R‖` against s.
    pub exponent_r: f64,
    pub exponent_r_prime: f64,
}

/// Distance between the diffusion and its tangent process:
/// `R = (λ, μ) − (w, β)` and `R′ = (x, y, z) − (t + A, ζ, z̄)`, supremum over the grid.
fn path_sups(cfg: &PathConfig, index: u64) -> Result<(f64, f64)> {
    let mut rng = cfg.rng(index);
    let sd = cfg.dt().sqrt();
    let (mut sup_r, mut sup_rp) = (0.0f64, 0.0f64);
    integrate_dudley(
        cfg,
        |_| (sd * rng.sample::<f64, _>(StandardNormal), sd * rng.sample::<f64, _>(StandardNormal)),
        |st| {
            let p = st.point;
            sup_r = sup_r.max((p.lambda - st.w).hypot(p.mu - st.beta));
            let rx = p.x - st.t - st.a;
            let ry = p.y - st.zeta;
            let rz = p.z - st.zbar;
            sup_rp = sup_rp.max((rx * rx + ry * ry + rz * rz).sqrt());
        },
    )?;
    Ok((sup_r, sup_rp))
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Tail frequencies and median scaling of the two remainders, `steps` grid steps per path
/// whatever s, one seed stream per (s-index, path).
pub fn remainder_probe(s_values: &[f64], r: f64, paths: usize, steps: usize, seed: u64) -> Result<RemainderTable> {
    const OP: &str = "remainder_probe";
    if paths < MIN_PROBE_PATHS {
        return Err(Error::invalid(OP, format!("need at least {MIN_PROBE_PATHS} paths, got {paths}")));
    }
    if s_values.is_empty() || s_values.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
        return Err(Error::domain(OP, "s values must lie in (0, 1]"));
    }
    if !(r > 0.0) {
        return Err(Error::domain(OP, "R must be positive"));
    }
    let mut rows = Vec::with_capacity(s_values.len());
    for (j, &s) in s_values.iter().enumerate() {
        let cfg = PathConfig::new(s, steps, seed.wrapping_add(j as u64), Scheme::ExactGaussianTrapezoid)?;
        let sups: Vec<(f64, f64)> = (0..paths as u64).into_par_iter().map(|i| path_sups(&cfg, i)).collect::<Result<_>>()?;
        let (thr_r, thr_rp) = (r * s.powf(1.5), r * s.powf(2.5));
        let n = paths as f64;
        let tail_r = sups.iter().filter(|v| v.0 >= thr_r).count() as f64 / n;
        let tail_r_prime = sups.iter().filter(|v| v.1 >= thr_rp).count() as f64 / n;
        let mut a: Vec<f64> = sups.iter().map(|v| v.0).collect();
        let mut b: Vec<f64> = sups.iter().map(|v| v.1).collect();
        rows.push(RemainderRow { s, tail_r, tail_r_prime, median_r: median(&mut a), median_r_prime: median(&mut b) });
    }
    let (exponent_r, exponent_r_prime) = if rows.len() >= 2 {
        let s: Vec<f64> = rows.iter().map(|r| r.s).collect();
        let mr: Vec<f64> = rows.iter().map(|r| r.median_r).collect();
        let mp: Vec<f64> = rows.iter().map(|r| r.median_r_prime).collect();
        (log_log_slope(&s, &mr)?, log_log_slope(&s, &mp)?)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(RemainderTable { r, paths, steps, rows, exponent_r, exponent_r_prime })
}
