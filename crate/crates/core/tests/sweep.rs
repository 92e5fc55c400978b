use eigenbound::sweep::{fit_constant, fit_slope, log_correct};
use proptest::prelude::*;

fn points() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((1e-3f64..0.9, 1e-3f64..1e3), 3..12)
        .prop_filter("distinct abscissae", |p| p.iter().any(|q| (q.0 - p[0].0).abs() > 1e-6))
}

proptest! {
    #[test]
    fn slope_ignores_a_common_factor(pts in points(), k in 1e-3f64..1e3) {
        let a = fit_slope(&pts).unwrap();
        let scaled: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (x, k * y)).collect();
        let b = fit_slope(&scaled).unwrap();
        prop_assert!((a.slope - b.slope).abs() < 1e-9);
        prop_assert!((b.intercept - a.intercept - k.ln()).abs() < 1e-9);
        prop_assert!((a.max_residual - b.max_residual).abs() < 1e-9);
    }

    #[test]
    fn fitted_constant_grows_with_the_sweep(pts in points(), extra in (1e-3f64..1e3, 1e-3f64..1e3)) {
        let before = fit_constant(&pts).unwrap();
        let mut more = pts.clone();
        more.push(extra);
        let after = fit_constant(&more).unwrap();
        prop_assert!(after.value >= before.value);
        prop_assert_eq!(after.sweep_size, pts.len() + 1);
        prop_assert!(more.iter().all(|(l, r)| *l <= after.value * r * (1.0 + 1e-12)));
    }

    #[test]
    fn zero_log_power_is_identity(pts in points()) {
        prop_assert_eq!(log_correct(&pts, 0.0).unwrap(), pts);
    }
}
