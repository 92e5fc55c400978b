//! Log-log slope fits and fitted constants for sweeps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares line through (ln x, ln y).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

impl SlopeFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.slope * x.ln() + self.intercept).exp()
    }
}

pub fn fit_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!("slope fit needs 3 points, got {}", points.len())));
    }
    if points.iter().any(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::Domain("slope fit needs positive coordinates".into()));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 1e-300 {
        return Err(Error::Degenerate("all abscissae are equal".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    Ok(SlopeFit {
        points: points.to_vec(),
        slope,
        intercept,
        max_residual,
    })
}

/// Smallest constant C with lhs ≤ C·rhs_unit on the whole sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittedConstant {
    pub value: f64,
    pub sweep_size: usize,
}

pub fn fit_constant(pairs: &[(f64, f64)]) -> Result<FittedConstant> {
    if pairs.is_empty() {
        return Err(Error::Degenerate("empty sweep".into()));
    }
    if pairs.iter().any(|(_, r)| !(*r > 0.0)) {
        return Err(Error::Domain("constant fit needs positive right-hand sides".into()));
    }
    Ok(FittedConstant {
        value: pairs.iter().map(|(l, r)| l / r).fold(f64::NEG_INFINITY, f64::max),
        sweep_size: pairs.len(),
    })
}

/// y ↦ y / |ln x|^power.
pub fn log_correct(points: &[(f64, f64)], power: f64) -> Result<Vec<(f64, f64)>> {
    points
        .iter()
        .map(|&(x, y)| {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::Domain(format!("log correction needs 0 < x < 1, got {x}")));
            }
            Ok((x, y / x.ln().abs().powf(power)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let sq: Vec<_> = [0.5, 1.0, 2.0, 4.0].iter().map(|&x| (x, x * x)).collect();
        let f = fit_slope(&sq).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-14 && f.max_residual < 1e-14);
        let inv: Vec<_> = [0.1, 0.3, 3.0].iter().map(|&x| (x, 5.0 / x)).collect();
        let f = fit_slope(&inv).unwrap();
        assert!((f.slope + 1.0).abs() < 1e-14 && (f.intercept - 5f64.ln()).abs() < 1e-14);
        assert!(matches!(fit_slope(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn constants_and_logs() {
        assert_eq!(fit_constant(&[(2.0, 1.0)]).unwrap().value, 2.0);
        assert_eq!(fit_constant(&[(1.0, 2.0), (3.0, 1.0)]).unwrap().value, 3.0);
        let pts = vec![(0.1, 7.0), (0.2, 3.0)];
        assert_eq!(log_correct(&pts, 0.0).unwrap(), pts);
        let logs: Vec<_> = [0.01, 0.1, 0.5].iter().map(|&x: &f64| (x, x.ln().abs())).collect();
        for (_, y) in log_correct(&logs, 1.0).unwrap() {
            assert!((y - 1.0).abs() < 1e-15);
        }
        assert!(matches!(log_correct(&[(2.0, 1.0)], 1.0), Err(Error::Domain(_))));
    }
}
