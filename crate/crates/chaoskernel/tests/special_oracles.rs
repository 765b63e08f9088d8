use chaoskernel::special::{
    aux_eval, aux_eval_regularized, sh2cos2, sh2cos2_zeros, tan_fixed_points, TAN_FIXED_POINT_CAP,
};
use num_complex::Complex64;
use proptest::prelude::*;

/// Unscaled textbook evaluation at `λ = 2iξ²` (k = √λ = (1 + i)ξ).
fn direct(xi: f64) -> [f64; 6] {
    let k = Complex64::new(xi, xi);
    let lam = k * k;
    let half = k / 2.0;
    let u = lam / (1.0 - 2.0 * half.tan() / k);
    let g = half / half.tan();
    let d = 1.0 - k.cos() - half * k.sin();
    let f = lam * lam / (4.0 * d) / xi.powi(4);
    let x2 = 2.0 * xi * xi;
    [f.re, f.im, -u.re, u.im / x2, g.re, -g.im / x2]
}

#[test]
fn closed_forms_match_unscaled_evaluation() {
    for xi in [0.6, 1.0, 2.0, 3.7, 8.0, 15.0] {
        let a = aux_eval(xi).unwrap();
        let got = [a.f_r, a.f_i, a.u_r, a.u_i, a.v_r, a.v_i];
        let want = direct(xi);
        for (g, w) in got.iter().zip(want.iter()) {
            // F is e^{−ξ}-small; compare it against the size of the other terms at large ξ.
            assert!((g - w).abs() <= 1e-11 * w.abs().max(1e-6), "ξ = {xi}: {g} vs {w}");
        }
    }
}

#[test]
fn limits_at_zero() {
    let a = aux_eval(1e-3f64).unwrap();
    assert!((a.u_r - 12.0).abs() < 1e-10);
    assert!((a.u_i - 1.2).abs() < 1e-10);
    assert!((a.v_r - 1.0).abs() < 1e-10);
    assert!((a.v_i - 1.0 / 12.0).abs() < 1e-10);
    let r = aux_eval_regularized(0.0f64).unwrap();
    assert_eq!(r.f_r_reg, 6.0);
    // Exact Taylor coefficients of the closed forms (rational arithmetic).
    assert!((r.tilde_u_r - 1.0 / 175.0).abs() < 1e-15);
    assert!((r.tilde_u_i + 1.0 / 15750.0).abs() < 1e-15);
    assert!((r.tilde_v_r - 1.0 / 180.0).abs() < 1e-15);
    assert!((r.tilde_v_i + 1.0 / 7560.0).abs() < 1e-15);
}

#[test]
fn regularized_matches_differences() {
    let xi: f64 = 0.7;
    let a = aux_eval(xi).unwrap();
    let r = aux_eval_regularized(xi).unwrap();
    let x4 = xi.powi(4);
    assert!(((a.u_r - 12.0) / x4 - r.tilde_u_r).abs() <= 1e-9 * r.tilde_u_r.abs());
    assert!(((a.v_r - 1.0) / x4 - r.tilde_v_r).abs() <= 1e-9 * r.tilde_v_r.abs());
}

#[test]
fn ten_is_asymptotic() {
    let a = aux_eval(10.0f64).unwrap();
    assert!((a.u_r - 24.4).abs() < 1e-2);
    assert!((a.v_r - 5.0).abs() < 1e-3);
}

#[test]
fn decay_bounds_on_the_far_range() {
    let mut xi = std::f64::consts::TAU;
    while xi <= 200.0 {
        let a = aux_eval(xi).unwrap();
        assert!(a.u_r - 2.0 * xi >= 4.0, "U_r at {xi}");
        assert!(a.v_r >= 3.0, "V_r at {xi}");
        assert!((a.f_r.abs() + a.f_i.abs()) * xi * xi.exp() <= chaoskernel::density::F_DECAY_CONSTANT, "F at {xi}");
        xi += 0.01;
    }
}

#[test]
fn f_denominator_positive() {
    for i in 1..=5000 {
        let x = i as f64 * 0.01;
        let (ch, sh, co, si) = (x.cosh(), x.sinh(), x.cos(), x.sin());
        let d = (ch - co) * ((ch - co) - x * (sh + si) + 0.5 * x * x * (ch + co));
        assert!(d > 0.0, "{x}");
    }
}

#[test]
fn roots() {
    let r = tan_fixed_points::<f64>(1).unwrap();
    assert!((r[0].value - 4.493_409_457_909_064).abs() < 1e-14);
    assert!(17.0 * std::f64::consts::PI / 12.0 < r[0].value);
    assert!(((17.0 * std::f64::consts::PI / 12.0).tan() - (2.0 + 3f64.sqrt())).abs() < 1e-13);
    assert!(tan_fixed_points::<f64>(TAN_FIXED_POINT_CAP + 1).is_err());
    let z = sh2cos2_zeros::<f64>(3).unwrap();
    assert!((z[0].norm() - std::f64::consts::PI / (2.0 * 2f64.sqrt())).abs() < 1e-15);
    for zk in z {
        assert!((zk.arg() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!(sh2cos2(zk.conj()).norm() < 1e-12);
    }
}

proptest! {
    #[test]
    fn even_in_xi(xi in 0.0f64..40.0) {
        prop_assert_eq!(aux_eval(xi).unwrap(), aux_eval(-xi).unwrap());
    }

    #[test]
    fn lower_bounds(xi in 0.0f64..50.0) {
        let a = aux_eval(xi).unwrap();
        prop_assert!(a.u_r >= 12.0 && a.v_r >= 1.0);
    }
}
