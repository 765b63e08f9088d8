use chaoskernel::transforms::{flt_y, flt_z, langevin_density, laplace_z1, ou_covariance_oracle, phi, psi, FlQueryY, FlQueryZ, MarginalPoint};
use num_complex::Complex64;
use proptest::prelude::*;

/// `E[exp(i r w_s + i c ∫w − (b²/2)∫w²)]` from the backward Feynman–Kac Riccati system
/// `α' = b²/2 − 2α²`, `β' = −2αβ − ic`, `γ' = −α − β²/2`, terminal `(0, ir, 0)`, value `e^{γ(0)}`.
fn riccati_oracle(s: f64, r: f64, c: f64, b: f64) -> Complex64 {
    let n = 20_000;
    let h = s / n as f64;
    let ic = Complex64::new(0.0, c);
    let rhs = |y: [Complex64; 3]| {
        [
            Complex64::new(b * b / 2.0, 0.0) - 2.0 * y[0] * y[0],
            -2.0 * y[0] * y[1] - ic,
            -y[0] - y[1] * y[1] / 2.0,
        ]
    };
    let add = |y: [Complex64; 3], k: [Complex64; 3], t: f64| [y[0] + k[0] * t, y[1] + k[1] * t, y[2] + k[2] * t];
    let mut y = [Complex64::new(0.0, 0.0), Complex64::new(0.0, r), Complex64::new(0.0, 0.0)];
    // Integrate backward from s to 0.
    for _ in 0..n {
        let k1 = rhs(y);
        let k2 = rhs(add(y, k1, -h / 2.0));
        let k3 = rhs(add(y, k2, -h / 2.0));
        let k4 = rhs(add(y, k3, -h));
        for i in 0..3 {
            y[i] -= (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
        }
    }
    y[2].exp()
}

fn fz(s: f64, r: f64, c: f64, b: f64) -> Complex64 {
    flt_z(&FlQueryZ { s, r, c, b }).unwrap()
}

#[test]
fn flt_z_matches_riccati_solution() {
    for &(s, r, c, b) in &[(1.0, 0.5, 0.3, 0.7), (1.0, 1.0, 1.0, 1e-6), (2.0, -0.4, 1.3, 1.5), (0.3, 2.0, -3.0, 0.1), (1.0, 0.0, 0.0, 3.0)] {
        let got = fz(s, r, c, b);
        let want = riccati_oracle(s, r, c, b);
        assert!((got - want).norm() < 1e-12, "{s} {r} {c} {b}: {got} vs {want}");
    }
}

#[test]
fn flt_z_small_b_limit() {
    let want = (-(1.0 + 1.0 + 1.0 / 3.0) / 2.0f64).exp();
    assert!((fz(1.0, 1.0, 1.0, 1e-6) - want).norm() < 1e-6);
    assert!((fz(1.0, 1.0, 1.0, 0.0) - want).norm() < 1e-15);
}

#[test]
fn flt_y_structure() {
    let q = FlQueryY { s: 1.0, r: 0.2, rho: 0.4, gamma: 0.3, c: 0.1, b: 0.5 };
    assert_eq!(flt_y(&q).unwrap(), fz(1.0, 0.2, 0.1, 0.5) * fz(1.0, 0.4, 0.3, 0.5));
    let zero = FlQueryY { s: 1.3, r: 0.0, rho: 0.0, gamma: 0.0, c: 0.0, b: 0.8 };
    assert!((flt_y(&zero).unwrap().re - 1.0 / (1.3f64 * 0.8).cosh()).abs() < 1e-15);
}

/// Trapezoid sum over a square; exponentially accurate for these Gaussians.
fn plane_integral(f: impl Fn(f64, f64) -> f64) -> f64 {
    let h = 0.04;
    let n = 300;
    let mut sum = 0.0;
    for i in -n..=n {
        for j in -n..=n {
            sum += f(i as f64 * h, j as f64 * h);
        }
    }
    sum * h * h
}

#[test]
fn langevin_normalization() {
    assert!((langevin_density(1.0, 0.0, 0.0).unwrap() - 3f64.sqrt() / std::f64::consts::PI).abs() < 1e-15);
    let total = plane_integral(|w, z| langevin_density(1.0, w, z).unwrap());
    assert!((total - 1.0).abs() < 1e-10, "{total}");
}

#[test]
fn laplace_z1_normalization() {
    for b in [0.5f64, 1.0, 2.0] {
        let total = plane_integral(|w, z| laplace_z1(w, z, b).unwrap());
        assert!((total - b.cosh().powf(-0.5)).abs() < 1e-8, "b = {b}: {total}");
    }
}

#[test]
fn laplace_z1_small_b() {
    let a = laplace_z1(0.3f64, 0.2, 1e-4).unwrap();
    let b = langevin_density(1.0, 0.3, 0.2).unwrap();
    assert!((a / b - 1.0).abs() < 1e-6);
}

#[test]
fn psi_values() {
    let o = MarginalPoint::new(0.0, 0.0, 0.0, 0.0);
    assert!((psi(&o, 0.0).unwrap() - 3.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
    let p = MarginalPoint::new(0.1f64, 0.2, 0.3, 0.4);
    let prod = laplace_z1(0.1, 0.4, 1.0).unwrap() * laplace_z1(0.2, 0.3, 1.0).unwrap();
    assert!((psi(&p, 1.0).unwrap() / prod - 1.0).abs() < 1e-13);
    assert!((phi(&p, Complex64::new(-1.0, 0.0)).unwrap().re / psi(&p, 1.0).unwrap() - 1.0).abs() < 1e-13);
    assert!((phi(&p, Complex64::new(0.0, 0.0)).unwrap().re / psi(&p, 0.0).unwrap() - 1.0).abs() < 1e-13);
}

#[test]
fn phi_decay_on_vertical_line() {
    let o = MarginalPoint::new(0.0, 0.0, 0.0, 0.0);
    let env = |t: f64| (-0.5 * (t / 2.0).sqrt()).exp();
    let fit = (100..=400)
        .step_by(10)
        .map(|t| phi(&o, Complex64::new(0.0, t as f64)).unwrap().norm() / env(t as f64))
        .fold(0.0, f64::max);
    assert!(phi(&o, Complex64::new(0.0, 200.0)).unwrap().norm() <= fit * env(200.0));
    // The envelope constant is stable: the ratio neither grows nor vanishes across the window.
    let r100 = phi(&o, Complex64::new(0.0, 100.0)).unwrap().norm() / env(100.0);
    let r400 = phi(&o, Complex64::new(0.0, 400.0)).unwrap().norm() / env(400.0);
    assert!(r400 < 10.0 * r100 && r100 < 10.0 * r400);
}

#[test]
fn ou_covariance() {
    let k = ou_covariance_oracle(0.8, 1.5).unwrap();
    assert!((k.k[0][0] - (1.0 - (-2.0 * 1.2f64).exp())).abs() < 1e-15);
    let det = k.k[0][0] * k.k[1][1] - k.k[0][1] * k.k[1][0];
    assert!((det - k.delta).abs() < 1e-12);
    let mut last = 0.0;
    for i in 1..200 {
        let d = ou_covariance_oracle(0.05 * i as f64, 1.0).unwrap().delta;
        assert!(d > last);
        last = d;
    }
    let small = ou_covariance_oracle(1e-5f64, 1.0).unwrap();
    assert!((small.k[0][0] / 2e-5 - 1.0).abs() < 1e-4);
}

proptest! {
    #[test]
    fn flt_z_is_positive_definite(
        s in 0.1f64..3.0, b in 0.0f64..3.0,
        r in prop::array::uniform3(-3.0f64..3.0), c in prop::array::uniform3(-3.0f64..3.0),
    ) {
        let g = |i: usize, j: usize| fz(s, r[i] - r[j], c[i] - c[j], b);
        for i in 0..3 {
            prop_assert!(g(i, i).norm() <= 1.0 + 1e-15);
        }
        for i in 0..3 {
            for j in 0..i {
                prop_assert!((g(i, j) - g(j, i).conj()).norm() < 1e-14);
                prop_assert!(g(i, i).re * g(j, j).re - g(i, j).norm_sqr() >= -1e-12);
            }
        }
        let det = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
            - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
        prop_assert!(det.re >= -1e-12 && det.im.abs() < 1e-12);
    }

    #[test]
    fn flt_z_bounded(s in 0.0f64..5.0, r in -10.0f64..10.0, c in -10.0f64..10.0, b in 0.0f64..10.0) {
        prop_assert!(fz(s, r, c, b).norm() <= 1.0 + 1e-15);
    }

    #[test]
    fn laplace_z1_central_symmetry(w in -4.0f64..4.0, z in -3.0f64..3.0, b in 0.0f64..5.0) {
        prop_assert_eq!(laplace_z1(w, z, b).unwrap(), laplace_z1(-w, -z, b).unwrap());
    }

    #[test]
    fn phi_conjugate_symmetry(w in -2.0f64..2.0, beta in -2.0f64..2.0, zeta in -1.0f64..1.0, z in -1.0f64..1.0,
                              re in -50.0f64..30.0, im in -100.0f64..100.0) {
        let p = MarginalPoint::new(w, beta, zeta, z);
        let a = phi(&p, Complex64::new(re, -im)).unwrap();
        let b = phi(&p, Complex64::new(re, im)).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-14 * a.norm().max(1e-300));
    }

    #[test]
    fn phi_real_positive_decreasing_on_negative_axis(w in -2.0f64..2.0, beta in -2.0f64..2.0, zeta in -1.0f64..1.0,
                                                     z in -1.0f64..1.0, lam in -30.0f64..0.0, gap in 0.01f64..5.0) {
        let p = MarginalPoint::new(w, beta, zeta, z);
        let hi = phi(&p, Complex64::new(lam, 0.0)).unwrap();
        let lo = phi(&p, Complex64::new(lam - gap, 0.0)).unwrap();
        prop_assert!(hi.im == 0.0 && lo.im == 0.0);
        prop_assert!(lo.re > 0.0 && lo.re < hi.re);
    }

    #[test]
    fn psi_decreasing_in_b(w in -2.0f64..2.0, beta in -2.0f64..2.0, zeta in -1.0f64..1.0, z in -1.0f64..1.0,
                           b in 0.0f64..6.0, gap in 0.01f64..2.0) {
        let p = MarginalPoint::new(w, beta, zeta, z);
        prop_assert!(psi(&p, b + gap).unwrap() < psi(&p, b).unwrap());
    }
}
