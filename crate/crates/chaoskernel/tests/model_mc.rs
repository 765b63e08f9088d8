use chaoskernel::model::{
    bracket_basis, hormander_rank, integrate_dudley, lie_bracket_numeric, matrix_rank, remainder_probe, simulate_dudley,
    simulate_tangent, summarize, tangent_ensemble, vector_fields, FieldVector, Moment, PathConfig, PhasePoint, Scheme,
};
use chaoskernel::Error;
use proptest::prelude::*;

fn cfg(s: f64, steps: usize, seed: u64) -> PathConfig {
    PathConfig::new(s, steps, seed, Scheme::ExactGaussianTrapezoid).unwrap()
}

#[test]
fn fields_at_the_origin() {
    let o = PhasePoint::default();
    let (v1, v2, v0) = vector_fields(&o);
    assert_eq!(v1.0, [0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    assert_eq!(v2.0, [0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    assert_eq!(v0.0, [1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    let (_, _, v0) = vector_fields(&PhasePoint::new(1.0, 0.0, 0.0, 0.0, 0.0));
    assert_eq!(v0.0[5], 1f64.sinh());
    let b = bracket_basis(&o);
    assert_eq!(b[3].0, [0.0, 0.5, 0.0, 0.0, 0.0, 1.0]);
    assert_eq!(b[5].0, [0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    assert_eq!(hormander_rank(&o), 6);
    assert_eq!(matrix_rank(&[v1, v2, v0]), 3);
}

/// Spatial part of V′₀, which carries no s-dependence.
fn v0(p: &PhasePoint) -> FieldVector {
    vector_fields(p).2
}

proptest! {
    #[test]
    fn brackets_match_finite_differences(l in -3.0f64..3.0, m in -3.0f64..3.0, x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0) {
        let p = PhasePoint::new(l, m, x, y, z);
        let b = bracket_basis(&p);
        let v1 = |q: &PhasePoint| vector_fields(q).0;
        let v2 = |q: &PhasePoint| vector_fields(q).1;
        let b20 = |q: &PhasePoint| lie_bracket_numeric(v2, v0, q, 1e-5);
        let pairs = [
            (lie_bracket_numeric(v1, v0, &p, 1e-5), &b[3]),
            (lie_bracket_numeric(v2, v0, &p, 1e-5), &b[4]),
            (lie_bracket_numeric(v2, b20, &p, 1e-3), &b[5]),
        ];
        for (fd, closed) in pairs {
            let scale = closed.0.iter().fold(1.0f64, |a, v| a.max(v.abs()));
            prop_assert!(fd.max_abs_diff(closed) <= 1e-6 * scale);
        }
        prop_assert_eq!(hormander_rank(&p), 6);
    }
}

#[test]
fn zero_noise_is_the_geodesic() {
    let c = cfg(0.7, 100, 0);
    let end = integrate_dudley(&c, |_| (0.0, 0.0), |_| {}).unwrap();
    assert_eq!(end.point.lambda, 0.0);
    assert_eq!(end.point.mu, 0.0);
    assert!((end.point.x - 0.7).abs() < 1e-14);
    assert_eq!((end.point.y, end.point.z), (0.0, 0.0));
}

#[test]
fn mass_shell_along_paths() {
    for i in 0..20 {
        for st in simulate_dudley(&cfg(2.0, 2000, 9), i).unwrap() {
            let scale = st.point.lambda.cosh().powi(2) * st.point.mu.cosh().powi(2);
            assert!(st.point.mass_shell_defect().abs() <= 1e-14 * scale);
        }
    }
}

#[test]
fn mean_time_coordinate() {
    // ch λ ch μ is an eigenfunction of the generator ½Δ of the velocity with eigenvalue 1, so
    // E[x_s] = e^s − 1 = s + s²/2 + s³/6 + … exactly.
    let s = 0.1f64;
    let c = PathConfig::new(s, 256, 3, Scheme::Euler).unwrap();
    let xs: Vec<f64> = (0..20_000u64).map(|i| simulate_dudley(&c, i).unwrap().last().unwrap().point.x).collect();
    let m = Moment::of("x", xs.into_iter());
    assert!((m.mean - s.exp_m1()).abs() <= 3.0 * m.std_error, "{} ± {}", m.mean, m.std_error);
}

#[test]
fn tangent_moments() {
    let samples = tangent_ensemble(&cfg(1.0, 256, 11), 100_000).unwrap();
    let m = summarize(&samples);
    let get = |name: &str| m.iter().find(|v| v.name == name).unwrap().clone();
    for name in ["w", "beta", "zeta", "zbar"] {
        let v = get(name);
        assert!(v.mean.abs() <= 3.0 * v.std_error, "{name}");
    }
    let a = get("a");
    assert!((a.mean - 0.5).abs() <= 3.0 * a.std_error);
    let e = get("exp_minus_a");
    assert!((e.mean - 1.0 / 1f64.cosh()).abs() <= 3.0 * e.std_error);
}

#[test]
fn characteristic_function_of_the_gaussian_pair() {
    // (w_1, ∫w) has covariance [[1, ½], [½, ⅓]].
    let samples = tangent_ensemble(&cfg(1.0, 64, 5), 100_000).unwrap();
    for r in [-1.0, 0.5, 1.5] {
        for c in [-2.0, 0.3, 1.0] {
            let want = (-0.5 * (r * r + r * c + c * c / 3.0f64)).exp();
            let re = Moment::of("re", samples.iter().map(|p| (r * p.w + c * p.z).cos()));
            let im = Moment::of("im", samples.iter().map(|p| (r * p.w + c * p.z).sin()));
            assert!((re.mean - want).abs() <= 3.0 * re.std_error, "({r}, {c})");
            assert!(im.mean.abs() <= 3.0 * im.std_error, "({r}, {c})");
        }
    }
}

#[test]
fn doubling_steps_moves_the_estimate_little() {
    let mean = |steps| {
        let s = tangent_ensemble(&cfg(1.0, steps, 21), 50_000).unwrap();
        Moment::of("e", s.iter().map(|p| (-p.x).exp()))
    };
    let (a, b) = (mean(64), mean(128));
    assert!((a.mean - b.mean).abs() < 2.0 * a.std_error.max(b.std_error));
}

#[test]
fn reproducible_whatever_the_thread_count() {
    let c = cfg(1.0, 128, 77);
    assert_eq!(simulate_tangent(&c, 42).unwrap(), simulate_tangent(&c, 42).unwrap());
    assert_eq!(simulate_dudley(&c, 3).unwrap(), simulate_dudley(&c, 3).unwrap());
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| tangent_ensemble(&c, 500)).unwrap();
    let b = four.install(|| tangent_ensemble(&c, 500)).unwrap();
    assert_eq!(a, b);
    assert_ne!(simulate_tangent(&c, 1).unwrap(), simulate_tangent(&c, 2).unwrap());
}

#[test]
fn probe_tails_monotone_in_r() {
    let s = [0.2, 0.1];
    let lo = remainder_probe(&s, 0.5, 2000, 128, 8).unwrap();
    let hi = remainder_probe(&s, 1.0, 2000, 128, 8).unwrap();
    for (a, b) in lo.rows.iter().zip(&hi.rows) {
        assert!(a.tail_r >= b.tail_r && a.tail_r_prime >= b.tail_r_prime);
        assert_eq!(a.median_r, b.median_r);
    }
    assert!(matches!(remainder_probe(&s, 1.0, 999, 128, 8), Err(Error::InvalidInput { .. })));
}

#[test]
fn invalid_configs() {
    assert!(PathConfig::new(0.0, 10, 1, Scheme::Euler).is_err());
    assert!(PathConfig::new(1.0, 0, 1, Scheme::Euler).is_err());
}
