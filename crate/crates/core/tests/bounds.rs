use eigenbound::bounds::{
    cert_aad_1d, cert_corollary1, cert_corollary2, cert_davies_nath_1d, cert_frank, cert_theorem1, corollary1_exponent,
    corollary2_m, corollary2_m_from_parts, corollary2_split, davies_nath_f, dist_to_ray, lower_bound_functional,
    ls_ratio, sup_over_translates, BetaQ,
};
use eigenbound::potential::{GridSpec, Potential, SampledField};
use eigenbound::Error;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn step_gallery() -> Vec<Potential> {
    vec![
        Potential::square_well_1d(c(0.3, 1.0), 2.0).unwrap(),
        Potential::rectangular_well(c(1.0, -1.0), 3.0, 2).unwrap(),
        Potential::rectangular_well(c(0.5, 0.0), 2.0, 3).unwrap(),
        Potential::radial_step_3d(c(-0.5, 0.2), 1.7).unwrap(),
    ]
}

#[test]
fn functional_monotone_and_saturates() {
    for v in step_gallery() {
        for &q in &[1.5, 2.0] {
            let full = v.lq_norm(q).unwrap();
            let mut prev = f64::INFINITY;
            for &s in &[1.0, 0.1, 1e-3, 1e-6] {
                let f = davies_nath_f(&v, q, s).unwrap();
                assert!(f <= full * (1.0 + 1e-9));
                assert!(f >= prev * (1.0 - 1e-9) || prev.is_infinite(), "{}: not monotone", v.label());
                prev = f;
            }
            assert!((prev - full).abs() <= 1e-5 * full, "{}: {prev} vs {full}", v.label());
        }
    }
}

#[test]
fn functional_scaling_identity() {
    for v in step_gallery() {
        let d = v.dim() as f64;
        for &lam in &[0.5, 2.0] {
            let stretched = v.rescaled(c(1.0, 0.0), lam).unwrap();
            for &(q, s) in &[(1.5, 0.7), (2.0, 0.2)] {
                let lhs = davies_nath_f(&stretched, q, s).unwrap();
                let rhs = lam.powf(d / q) * davies_nath_f(&v, q, s * lam).unwrap();
                assert!((lhs - rhs).abs() <= 1e-8 * rhs, "{}: {lhs} vs {rhs}", v.label());
            }
        }
    }
}

#[test]
fn rectangular_well_supremum_at_origin() {
    let v = Potential::rectangular_well(c(1.0, 0.0), 4.0, 3).unwrap();
    let at_zero = v.exp_weighted_integral(2.0, 0.5, &[0.0; 3]).unwrap();
    let f = davies_nath_f(&v, 2.0, 0.5).unwrap();
    assert!((f - at_zero.sqrt()).abs() <= 1e-12 * f);
    // brute scan over translates never beats the origin
    for &y1 in &[-3.0, -1.0, 0.5, 2.0, 4.0] {
        for &y2 in &[-1.5, 0.0, 1.0] {
            let val = v.exp_weighted_integral(2.0, 0.5, &[y1, y2, 0.3]).unwrap();
            assert!(val <= at_zero * (1.0 + 1e-9));
        }
    }
}

#[test]
fn translate_search_finds_off_centre_peak() {
    // an off-centre bump sampled on a grid: the peak sits at its centre
    let grid = GridSpec::cube(1, 4.0, 81).unwrap();
    let field = SampledField::from_fn(grid, |x| {
        let t = x[0] - 1.3;
        c((-(t * t)).exp(), 0.0)
    });
    let v = Potential::Sampled(field);
    let (best, y) = sup_over_translates(&v, |y| v.exp_weighted_integral(1.0, 2.0, y)).unwrap();
    assert!((y[0] - 1.3).abs() < 1e-2, "peak found at {}", y[0]);
    assert!(best >= v.exp_weighted_integral(1.0, 2.0, &[1.3]).unwrap() * (1.0 - 1e-8));
}

#[test]
fn one_dimensional_certificates() {
    // V = 1 on [-R, R]: the weighted functional stays bounded as R grows
    let s = 0.5;
    let mut last = 0.0;
    for &r in &[10.0, 100.0, 1000.0] {
        let v = Potential::square_well_1d(c(1.0, 0.0), r).unwrap();
        last = davies_nath_f(&v, 1.0, s).unwrap();
        assert!(last <= 2.0 / s);
        let z = c(0.0, 2.0);
        let aad = cert_aad_1d(&v, z).unwrap();
        let dn = cert_davies_nath_1d(&v, z).unwrap();
        assert!(dn.rhs <= aad.rhs);
        assert_eq!(aad.constant, 0.5);
    }
    assert!((last - 2.0 / s).abs() < 1e-9);
}

/// (λ²V(λ·), λ²z).
fn scale_pair(v: &Potential, z: Complex64, lam: f64) -> (Potential, Complex64) {
    (v.rescaled(c(lam * lam, 0.0), 1.0 / lam).unwrap(), z * lam * lam)
}

#[test]
fn certificates_scale_invariant_and_phase_blind() {
    let z = Complex64::from_polar(1.0, 2.3);
    let v1 = Potential::square_well_1d(c(0.2, 0.4), 3.0).unwrap();
    let v3 = Potential::radial_step_3d(c(0.1, -0.3), 2.5).unwrap();
    for &lam in &[0.5, 2.0] {
        let (w1, zl) = scale_pair(&v1, z, lam);
        let pairs = [
            (cert_aad_1d(&v1, z).unwrap(), cert_aad_1d(&w1, zl).unwrap()),
            (cert_davies_nath_1d(&v1, z).unwrap(), cert_davies_nath_1d(&w1, zl).unwrap()),
        ];
        let (w3, zl3) = scale_pair(&v3, z, lam);
        let more = [
            (cert_theorem1(&v3, z, 2.0, 1.0).unwrap(), cert_theorem1(&w3, zl3, 2.0, 1.0).unwrap()),
            (cert_theorem1(&v3, z, 1.6, 1.0).unwrap(), cert_theorem1(&w3, zl3, 1.6, 1.0).unwrap()),
            (cert_corollary1(&v3, z, 2.0, 1.0).unwrap(), cert_corollary1(&w3, zl3, 2.0, 1.0).unwrap()),
            (cert_frank(&v3, z, 2.0, 1.0).unwrap(), cert_frank(&w3, zl3, 2.0, 1.0).unwrap()),
        ];
        for (a, b) in pairs.iter().chain(more.iter()) {
            assert!((a.ratio - b.ratio).abs() <= 1e-8 * a.ratio, "{}: {} vs {}", a.name, a.ratio, b.ratio);
        }
    }
    let rotated = Potential::radial_step_3d(c(0.1, -0.3) * Complex64::from_polar(1.0, 1.1), 2.5).unwrap();
    let a = cert_theorem1(&v3, z, 2.0, 1.0).unwrap();
    let b = cert_theorem1(&rotated, z, 2.0, 1.0).unwrap();
    assert!((a.ratio - b.ratio).abs() <= 1e-12 * a.ratio);
}

#[test]
fn certificate_exponents() {
    let v = Potential::radial_step_3d(c(1.0, 0.0), 1.0).unwrap();
    let z = c(-0.6, 2.0);
    let kappa_im = eigenbound::kernels::sqrt_upper(z).im;
    // weighted bound at the endpoint q = (d+1)/2
    let t = cert_theorem1(&v, z, 2.0, 1.0).unwrap();
    assert!((t.lhs - z.norm().sqrt()).abs() < 1e-15);
    assert!(matches!(cert_theorem1(&v, z, 2.5, 1.0), Err(Error::Range(_))));
    assert!(matches!(cert_theorem1(&v, z, 1.4, 1.0), Err(Error::Range(_))));
    // Hölder bound
    assert_eq!(corollary1_exponent(3, 2.0), 0.0);
    let c1 = cert_corollary1(&v, z, 2.0, 1.0).unwrap();
    assert!((c1.lhs - z.norm().powf(0.25)).abs() < 1e-15);
    let c4 = cert_corollary1(&v, z, 4.0, 1.0).unwrap();
    assert!((c4.lhs - z.norm().powf(0.25) * kappa_im.powf(0.75)).abs() < 1e-14);
    // long-range bound at the endpoint has the same |z| exponent
    let f = cert_frank(&v, z, 2.0, 1.0).unwrap();
    assert!((f.lhs - c1.lhs).abs() < 1e-15);
    // q → ∞ approaches the trivial bound dist(z, [0,∞)) ≤ ‖V‖_∞
    let far = cert_frank(&v, z, 1e8, 1.0).unwrap();
    assert!((far.lhs - dist_to_ray(z)).abs() < 1e-6);
}

#[test]
fn corollary2_pieces() {
    let d = 3;
    let beta = BetaQ::new(4.0, d).unwrap();
    let mut ms = Vec::new();
    for &s in &[1e-1, 1e-2, 1e-3] {
        ms.push(corollary2_m_from_parts(d, beta, 50.0, 1.0, s, 0.5));
    }
    // growth like -2dβ^{-1} ln(Im √z) = -3 ln(Im √z)
    for w in ms.windows(2) {
        assert!(((w[1] - w[0]) / 10f64.ln() - 3.0).abs() < 1e-12);
    }
    let v = Potential::radial_step_3d(c(0.2, 0.1), 6.0).unwrap();
    let z = c(1.0, 0.2);
    let m = corollary2_m(&v, 4.0, z, 0.5).unwrap();
    assert!(m > 0.0);
    let split = corollary2_split(&v, 4.0, z, 0.5).unwrap();
    let lhs = z.norm().powf(0.25);
    // the tail term is exactly half the left side divided by C_d
    assert!(0.5 * split.tail <= lhs / 2.0 * (1.0 + 1e-12));
    // estimating the weight by 1 inside the ball and by e^{-M} outside
    let p = 2.0;
    let s = eigenbound::kernels::sqrt_upper(z).im;
    let f = davies_nath_f(&v, p, s).unwrap().powf(p);
    let bound = split.local.powf(p) + (-split.m).exp() * v.lq_norm(p).unwrap().powf(p);
    assert!(f <= bound * (1.0 + 1e-9));
    // a ball larger than the support swallows it
    let huge = cert_corollary2(&v, 4.0, c(1.0, 1e-4), 0.5).unwrap();
    assert!((huge.rhs - 2.0 * 0.5 * v.lq_norm(2.0).unwrap()).abs() < 1e-12);
    assert!(matches!(corollary2_m(&v, 2.0, z, 0.5), Err(Error::Range(_))));
}

#[test]
fn lower_bound_and_ls_ratio() {
    let zero = Potential::constant_box(c(0.0, 0.0), vec![-1.0], vec![1.0]).unwrap();
    assert_eq!(lower_bound_functional(&zero, 0.1, 1.0).unwrap(), 0.0);
    let ij = Potential::ionescu_jerison(10.0, 3).unwrap();
    let eps: f64 = 0.1;
    let a = 1.0;
    let radius = a * eps.ln().abs() / eps;
    let value = lower_bound_functional(&ij, eps, a).unwrap();
    // the squared L² mass grows like 2π ln(1 + R/n), with no 1/n prefactor
    let law = 2.0 * std::f64::consts::PI * (1.0 + radius / 10.0).ln();
    let r = value * value / law;
    assert!(r > 0.8 && r < 1.05, "{value}² vs {law}");
    assert!(value > 10.0 * eigenbound::potential::ij_local_norm_model(10.0, radius, 3));
    let v = Potential::radial_step_3d(c(0.3, 0.1), 2.0).unwrap();
    let r = ls_ratio(&v, Complex64::from_polar(1.0, 0.4), 3.0).unwrap();
    assert!((r - v.lq_norm(3.0).unwrap().powi(-3)).abs() < 1e-12 * r);
    let (w, zl) = scale_pair(&v, c(0.8, 0.3), 2.0);
    let a = ls_ratio(&v, c(0.8, 0.3), 3.0).unwrap();
    let b = ls_ratio(&w, zl, 3.0).unwrap();
    assert!((a - b).abs() < 1e-12 * a);
    assert!(matches!(ls_ratio(&ij, c(-1.0, 0.0), 2.0), Err(Error::Divergent(_))));
}
