use std::f64::consts::PI;

use eigenbound::birman_schwinger::{
    cert_bs_bound, discretize_bs, operator_norm, operator_norm_svd, schur_bound, verify_bs_scaling,
    weighted_resolvent_norm, NormMethod,
};
use eigenbound::bounds::dist_to_ray;
use eigenbound::eigensolvers::{construct_radial_3d, solve_square_well_1d};
use eigenbound::kernels::SpectralPoint;
use eigenbound::potential::{GridSpec, Potential};
use eigenbound::Error;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sp(e: Complex64, d: usize) -> SpectralPoint {
    SpectralPoint::new(e, d).unwrap()
}

#[test]
fn zero_potential_and_closed_form_entries() {
    let zero = Potential::square_well_1d(c(0.0, 0.0), 1.0).unwrap();
    let grid = GridSpec::cube(1, 2.0, 101).unwrap();
    let b = discretize_bs(&zero, &sp(c(-1.0, 0.0), 1), &grid).unwrap();
    assert!(b.is_empty());
    assert_eq!(operator_norm(&b).unwrap().value, 0.0);

    let v = Potential::square_well_1d(c(1.0, 0.0), 1.0).unwrap();
    let grid = GridSpec::cube(1, 1.0, 200).unwrap();
    let b = discretize_bs(&v, &sp(c(-1.0, 0.0), 1), &grid).unwrap();
    assert_eq!(b.len(), 200);
    let h = grid.spacing(0);
    let m = b.matrix.as_ref().unwrap();
    for j in (0..200).step_by(7) {
        for k in (0..200).step_by(5) {
            let r = (b.nodes[j][0] - b.nodes[k][0]).abs();
            let exact = 0.5 * (-r).exp() * h;
            assert!((m[(j, k)] - exact).norm() < 1e-14, "{j} {k}");
            assert_eq!(m[(j, k)], m[(k, j)]);
        }
    }
    let power = operator_norm(&b).unwrap();
    let svd = operator_norm_svd(&b).unwrap();
    assert_eq!(power.method, NormMethod::PowerIteration);
    assert_eq!(svd.method, NormMethod::FullSvd);
    assert!(power.residual <= 1e-8 * power.value);
    assert!((power.value - svd.value).abs() <= 1e-8 * svd.value, "{} vs {}", power.value, svd.value);
}

#[test]
fn resolution_and_domain_errors() {
    let v = Potential::square_well_1d(c(1.0, 0.0), 1.0).unwrap();
    let coarse = GridSpec::cube(1, 1.0, 5).unwrap();
    assert!(matches!(
        discretize_bs(&v, &sp(c(-1.0, 0.0), 1), &coarse),
        Err(Error::Resolution(_))
    ));
    let grid = GridSpec::cube(1, 1.0, 50).unwrap();
    assert!(matches!(discretize_bs(&v, &sp(c(2.0, 0.0), 1), &grid), Err(Error::Domain(_))));
}

#[test]
fn schur_dominates_the_norm() {
    let v = Potential::square_well_1d(c(0.3, 0.8), 2.0).unwrap();
    let z = Complex64::from_polar(1.0, 0.75 * PI);
    let grid = GridSpec::cube(1, 2.0, 401).unwrap();
    let b = discretize_bs(&v, &sp(z, 1), &grid).unwrap();
    let norm = operator_norm(&b).unwrap().value;
    // constant |V|: ρ ≡ 1 and every q gives the plain row sum
    let plain = b.dense().row_iter().map(|r| r.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max);
    for &q in &[1.0, 2.5] {
        let s = schur_bound(&b, &v, q).unwrap();
        assert!((s - plain).abs() < 1e-10 * plain);
        assert!(norm <= s + 1e-8 && s <= 10.0 * norm, "{norm} vs {s}");
    }
    // a non-constant sampled profile
    let g1 = GridSpec::cube(1, 3.0, 61).unwrap();
    let field = eigenbound::potential::SampledField::from_fn(g1.clone(), |x| c(1.0 + 0.5 * x[0].cos(), 0.2));
    let w = Potential::Sampled(field);
    let b = discretize_bs(&w, &sp(c(-0.5, 0.4), 1), &g1).unwrap();
    let n = operator_norm(&b).unwrap().value;
    for &q in &[0.5, 1.0, 3.0] {
        assert!(n <= schur_bound(&b, &w, q).unwrap() + 1e-8);
    }
}

#[test]
fn scaling_identity() {
    let well = Potential::square_well_1d(c(0.4, -0.7), 1.0).unwrap();
    let g1 = GridSpec::cube(1, 1.3, 301).unwrap();
    assert_eq!(verify_bs_scaling(&well, c(-1.0, 0.0), 1.0, &g1).unwrap(), 0.0);
    assert!(verify_bs_scaling(&well, c(-1.0, 0.0), 2.0, &g1).unwrap() <= 1e-8);
    let step = Potential::radial_step_3d(c(1.0, 0.5), 1.0).unwrap();
    let g3 = GridSpec::cube(3, 1.1, 19).unwrap();
    let diff = verify_bs_scaling(&step, c(-1.0, 0.3), 0.5, &g3).unwrap();
    assert!(diff <= 1e-8, "{diff}");
    assert!(matches!(verify_bs_scaling(&step, c(-1.0, 0.3), 0.0, &g3), Err(Error::Domain(_))));
}

#[test]
fn three_dimensional_refinement() {
    let v = Potential::radial_step_3d(c(1.0, 0.0), 1.0).unwrap();
    let e = sp(c(-1.0, 0.0), 3);
    let norms: Vec<f64> = [16, 24, 32]
        .iter()
        .map(|&n| operator_norm(&discretize_bs(&v, &e, &GridSpec::cube(3, 1.0, n).unwrap()).unwrap()).unwrap().value)
        .collect();
    for w in norms.windows(2) {
        assert!((w[1] - w[0]).abs() <= 0.01 * w[1], "{norms:?}");
    }
}

#[test]
fn trivial_bound_and_domination() {
    let cases = [
        (Potential::square_well_1d(c(0.5, 0.5), 3.0).unwrap(), c(-0.3, 0.2)),
        (Potential::square_well_1d(c(0.0, 1.0), 1.0).unwrap(), c(1.0, 0.5)),
        (Potential::radial_step_3d(c(2.0, 0.0), 0.8).unwrap(), c(-1.0, 0.0)),
        (Potential::rectangular_well(c(1.0, -1.0), 2.0, 2).unwrap(), c(-0.5, 0.5)),
    ];
    for (v, z) in &cases {
        let e = sp(*z, v.dim());
        let grid = eigenbound::birman_schwinger::default_bs_grid(v, &e).unwrap();
        let norm = operator_norm(&discretize_bs(v, &e, &grid).unwrap()).unwrap().value;
        assert!(norm <= 1.05 * v.sup_abs() / dist_to_ray(*z), "{}: {norm}", v.label());
    }
    // |V₁| ≤ |V₂| on the same grid with the same support
    let grid = GridSpec::cube(1, 2.0, 401).unwrap();
    let e = sp(c(0.5, 0.3), 1);
    let small = Potential::square_well_1d(c(0.3, 0.4), 2.0).unwrap();
    let large = Potential::square_well_1d(c(0.0, -0.9), 2.0).unwrap();
    let a = operator_norm(&discretize_bs(&small, &e, &grid).unwrap()).unwrap().value;
    let b = operator_norm(&discretize_bs(&large, &e, &grid).unwrap()).unwrap().value;
    assert!(a <= b * (1.0 + 1e-6));
}

#[test]
fn eigenpairs_give_norm_at_least_one() {
    let s = solve_square_well_1d(0.1, 0.5, 1.0).unwrap();
    let v = s.potential().unwrap();
    let grid = GridSpec::cube(1, s.r, 1 + (2.0 * s.r / 0.05).ceil() as usize).unwrap();
    let b = discretize_bs(&v, &sp(s.e, 1), &grid).unwrap();
    let n1 = operator_norm(&b).unwrap().value;
    assert!(n1 >= 0.95, "square well: {n1}");

    let r = construct_radial_3d(0.1, 0.5).unwrap();
    let v = r.potential().unwrap();
    let grid = GridSpec::cube(3, r.r, 33).unwrap();
    let b = discretize_bs(&v, &sp(r.e, 3), &grid).unwrap();
    let n3 = operator_norm(&b).unwrap().value;
    assert!(n3 >= 0.95, "radial: {n3}");
}

#[test]
fn weighted_resolvent() {
    let v = Potential::radial_step_3d(c(0.6, 0.8), 1.0).unwrap();
    let root = Potential::radial_step_3d(c(1.0, 0.0), 1.0).unwrap();
    let zero = Potential::radial_step_3d(c(0.0, 0.0), 1.0).unwrap();
    let grid = GridSpec::cube(3, 1.0, 17).unwrap();
    let z = c(-0.4, 0.6);
    let bs = operator_norm(&discretize_bs(&v, &sp(z, 3), &grid).unwrap()).unwrap().value;
    let wr = weighted_resolvent_norm(&root, &root, z, &grid).unwrap();
    assert!((bs - wr).abs() <= 1e-8 * bs, "{bs} vs {wr}");
    assert_eq!(weighted_resolvent_norm(&zero, &root, z, &grid).unwrap(), 0.0);
}

#[test]
fn bs_certificate() {
    // |z| = 1: the right side is C·F
    let v = Potential::radial_step_3d(c(0.5, 0.0), 1.0).unwrap();
    let z = Complex64::from_polar(1.0, 2.0);
    let cert = cert_bs_bound(&v, z, 2.0, 1.5).unwrap();
    let f = eigenbound::bounds::davies_nath_f(&v, 2.0, eigenbound::kernels::sqrt_upper(z).im).unwrap();
    assert!((cert.rhs - 1.5 * f).abs() < 1e-12 * cert.rhs);
    assert!(cert.lhs > 0.0);
}
