use std::f64::consts::PI;

use eigenbound::fourier::{
    apply_free_resolvent, apply_helmholtz, critical_exponent, lp_grid_norm, measure_2pc_scaling_report,
    plancherel_norm, trial_ratio, PeriodicField, ResolventQuery, TrialKind,
};
use eigenbound::kernels::sqrt_upper;
use eigenbound::potential::GridSpec;
use eigenbound::quadrature::{integrate_pieces, Tolerance};
use eigenbound::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn single_modes_are_scaled() {
    let grid = GridSpec::cube(3, PI, 16).unwrap();
    let rq = ResolventQuery::new(1.0, 0.3).unwrap();
    let k = [2.0, -1.0, 3.0];
    let f = PeriodicField::from_fn(grid.clone(), |x| Complex64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]));
    let u = apply_free_resolvent(&f, &rq).unwrap();
    let m = 1.0 / c(14.0 - 1.0, -0.3);
    for (a, b) in u.values.iter().zip(&f.values) {
        assert!((a - b * m).norm() < 1e-12);
    }
    // constant mode at λ = ε = 1
    let one = PeriodicField::from_fn(grid, |_| c(1.0, 0.0));
    let rq = ResolventQuery::new(1.0, 1.0).unwrap();
    let u = apply_free_resolvent(&one, &rq).unwrap();
    for v in &u.values {
        assert!((v - 1.0 / c(-1.0, -1.0)).norm() < 1e-14);
        assert!((v.norm() - 0.5f64.sqrt()).abs() < 1e-14);
    }
    assert!((rq.z - c(0.0, 2.0)).norm() < 1e-15);
}

#[test]
fn round_trip_and_errors() {
    let grid = GridSpec::new(vec![6.0, 5.0, 4.0], vec![24, 20, 16]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let values = (0..grid.len()).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let f = PeriodicField::new(grid.clone(), values).unwrap();
    let rq = ResolventQuery::new(1.5, 0.2).unwrap();
    let back = apply_helmholtz(&apply_free_resolvent(&f, &rq).unwrap(), &rq).unwrap();
    let err = back.values.iter().zip(&f.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(err < 1e-12, "{err}");

    // Nyquist π/h = π·24/12 ≈ 6.28 < 4λ = 8
    let rq = ResolventQuery::new(2.0, 0.5).unwrap();
    assert!(matches!(apply_free_resolvent(&f, &rq), Err(Error::Resolution(_))));
    assert!(matches!(ResolventQuery::new(1.0, 1.5), Err(Error::Range(_))));
    assert!(matches!(ResolventQuery::new(-1.0, 0.5), Err(Error::Range(_))));
    assert!(!ResolventQuery::new(1.0, 0.5).unwrap().in_estimate_regime());
    assert!(ResolventQuery::new(4.0, 0.5).unwrap().in_estimate_regime());
    assert!(matches!(
        PeriodicField::new(grid, vec![c(0.0, 0.0); 3]),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn periodic_green_function_oracle() {
    // (−d² − w)u = f on a circle of length 2L: u = G * f with
    // G(r) = −cos(k(|r| − L))/(2k sin(kL)), k² = w = λ² + iελ.
    let (lam, eps, half) = (1.0, 0.3, 10.0);
    let rq = ResolventQuery::new(lam, eps).unwrap();
    let k = sqrt_upper(c(lam * lam, eps * lam));
    let green = |r: f64| -((r.abs() - half) * k).cos() / (2.0 * k * (k * half).sin());
    let gauss = |y: f64| (-0.5 * (y - 1.0) * (y - 1.0)).exp();
    let grid = GridSpec::cube(1, half, 128).unwrap();
    let f = PeriodicField::from_fn(grid, |x| c(gauss(x[0]), 0.0));
    let u = apply_free_resolvent(&f, &rq).unwrap();
    let h = 2.0 * half / 128.0;
    for i in (0..128).step_by(9) {
        let x0 = -half + i as f64 * h;
        let integrand = |y: f64| {
            let mut r = x0 - y;
            if r > half {
                r -= 2.0 * half;
            } else if r < -half {
                r += 2.0 * half;
            }
            green(r) * gauss(y)
        };
        let mut pts = vec![-half, half, x0];
        pts.extend([x0 - half, x0 + half].iter().filter(|p| p.abs() < half));
        let oracle = integrate_pieces(integrand, &pts, Tolerance::rel(1e-13).with_abs(1e-15)).value;
        assert!((u.values[i] - oracle).norm() < 1e-10, "x {x0}: {} vs {oracle}", u.values[i]);
    }
}

#[test]
fn grid_norms() {
    let grid = GridSpec::new(vec![2.0, 3.0], vec![10, 12]).unwrap();
    let one = PeriodicField::from_fn(grid, |_| c(1.0, 0.0));
    for p in [1.0, 2.0, 4.0] {
        let exact = 24.0f64.powf(1.0 / p);
        assert!((lp_grid_norm(&one, p) - exact).abs() < 1e-12 * exact);
    }

    let grid = GridSpec::cube(3, 8.0, 48).unwrap();
    let gauss = PeriodicField::from_fn(grid, |x| {
        let r2: f64 = x.iter().map(|t| t * t).sum();
        Complex64::from_polar((-0.5 * r2).exp(), x[0])
    });
    assert!((lp_grid_norm(&gauss, 2.0) - plancherel_norm(&gauss)).abs() < 1e-12);
    // ‖e^{−|x|²/2}‖_p = (2π/p)^{d/(2p)}
    for p in [2.0, 4.0, 6.0] {
        let exact = (2.0 * PI / p).powf(1.5 / p);
        let got = lp_grid_norm(&gauss, p);
        assert!((got - exact).abs() <= 0.01 * exact, "p {p}: {got} vs {exact}");
    }
}

#[test]
fn critical_exponents() {
    assert_eq!(critical_exponent(3).unwrap(), 4.0);
    assert_eq!(critical_exponent(2).unwrap(), 6.0);
    assert!(matches!(critical_exponent(1), Err(Error::Unsupported(_))));
}

#[test]
fn two_dimensional_scaling() {
    let eps = [0.4, 0.2, 0.1, 0.05];
    let report = measure_2pc_scaling_report(1.0, &eps, 2, 2, 256, 3).unwrap();
    assert_eq!(report.p, 6.0);
    assert!((report.fit.slope + 0.5).abs() <= 0.1, "slope {}", report.fit.slope);
    for w in report.points.windows(2) {
        assert!(w[1].estimate >= w[0].estimate);
    }
    let last = report.points.last().unwrap();
    assert!(last.cap_trial >= 2.0 * last.random, "{} vs {}", last.cap_trial, last.random);
    assert!(matches!(measure_2pc_scaling_report(1.0, &eps, 1, 1, 64, 0), Err(Error::Unsupported(_))));
}

#[test]
fn random_trials_are_seeded() {
    let grid = GridSpec::cube(2, 8.0 * PI, 64).unwrap();
    let rq = ResolventQuery::new(1.0, 0.2).unwrap();
    let a = trial_ratio(&grid, &rq, TrialKind::Random { seed: 11 }, 6.0).unwrap();
    let b = trial_ratio(&grid, &rq, TrialKind::Random { seed: 11 }, 6.0).unwrap();
    let other = trial_ratio(&grid, &rq, TrialKind::Random { seed: 12 }, 6.0).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
    assert_ne!(a.to_bits(), other.to_bits());
}
