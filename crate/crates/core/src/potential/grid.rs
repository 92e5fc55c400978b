use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform tensor grid on [-L₁, L₁] × … × [-L_d, L_d], endpoints included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    half_extent: Vec<f64>,
    points: Vec<usize>,
}

impl GridSpec {
    pub fn new(half_extent: Vec<f64>, points: Vec<usize>) -> Result<Self> {
        let d = half_extent.len();
        if !(1..=3).contains(&d) {
            return Err(Error::Unsupported(format!("grid dimension {d}")));
        }
        if points.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: points.len(),
            });
        }
        if half_extent.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::Domain("grid half extents must be positive".into()));
        }
        if points.iter().any(|&n| n < 2) {
            return Err(Error::Domain("grid needs at least two points per axis".into()));
        }
        Ok(GridSpec { half_extent, points })
    }

    pub fn cube(d: usize, half_extent: f64, points: usize) -> Result<Self> {
        GridSpec::new(vec![half_extent; d], vec![points; d])
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn half_extent(&self) -> &[f64] {
        &self.half_extent
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.half_extent[axis] / (self.points[axis] - 1) as f64
    }

    pub fn max_spacing(&self) -> f64 {
        (0..self.dim()).map(|a| self.spacing(a)).fold(0.0, f64::max)
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.spacing(a)).product()
    }

    pub fn len(&self) -> usize {
        self.points.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        -self.half_extent[axis] + i as f64 * self.spacing(axis)
    }

    /// Multi-index of a row-major flat index (last axis fastest).
    pub fn unflatten(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for axis in (0..self.dim()).rev() {
            idx[axis] = flat % self.points[axis];
            flat /= self.points[axis];
        }
        idx
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.points).fold(0, |acc, (i, n)| acc * n + i)
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let idx = self.unflatten(flat);
        (0..self.dim()).map(|a| self.coord(a, idx[a])).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().zip(&self.half_extent).all(|(x, l)| x.abs() <= *l)
    }
}

/// Complex values on a grid, multilinear in each cell and zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub grid: GridSpec,
    pub values: Vec<Complex64>,
}

impl SampledField {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(SampledField { grid, values })
    }

    pub fn from_fn<F: Fn(&[f64]) -> Complex64>(grid: GridSpec, f: F) -> Self {
        let values = (0..grid.len()).map(|k| f(&grid.point(k))).collect();
        SampledField { grid, values }
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn interpolate(&self, x: &[f64]) -> Complex64 {
        let d = self.dim();
        if !self.grid.contains(x) {
            return Complex64::new(0.0, 0.0);
        }
        let mut base = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for a in 0..d {
            let t = (x[a] + self.grid.half_extent[a]) / self.grid.spacing(a);
            let last = self.grid.points[a] - 2;
            let i = (t.floor().max(0.0) as usize).min(last);
            base[a] = i;
            frac[a] = (t - i as f64).clamp(0.0, 1.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for corner in 0..(1usize << d) {
            let mut weight = 1.0;
            let mut idx = [0usize; 3];
            for a in 0..d {
                let bit = (corner >> a) & 1;
                idx[a] = base[a] + bit;
                weight *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
            }
            if weight != 0.0 {
                acc += self.values[self.grid.flatten(&idx[..d])] * weight;
            }
        }
        acc
    }

    /// Header "d n₁ … n_d L₁ … L_d", then one "re im" line per point in
    /// row-major order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let d = self.dim();
        write!(out, "{d}").unwrap();
        for n in &self.grid.points {
            write!(out, " {n}").unwrap();
        }
        for l in &self.grid.half_extent {
            write!(out, " {l:e}").unwrap();
        }
        out.push('\n');
        for v in &self.values {
            writeln!(out, "{:e} {:e}", v.re, v.im).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let d: usize = fields
            .first()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse("line 1: bad dimension".into()))?;
        if fields.len() != 1 + 2 * d {
            return Err(Error::Parse(format!(
                "line 1: expected {} header fields, found {}",
                1 + 2 * d,
                fields.len()
            )));
        }
        let points = fields[1..=d]
            .iter()
            .map(|s| s.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("line 1: {e}")))?;
        let half = fields[1 + d..]
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("line 1: {e}")))?;
        let grid = GridSpec::new(half, points)?;
        let mut values = Vec::with_capacity(grid.len());
        for (lineno, line) in lines {
            let mut it = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<f64> {
                s.ok_or_else(|| Error::Parse(format!("line {}: expected 're im'", lineno + 1)))?
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let re = parse(it.next())?;
            let im = parse(it.next())?;
            values.push(Complex64::new(re, im));
        }
        SampledField::new(grid, values).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        SampledField::from_text(&std::fs::read_to_string(path)?)
    }
}
