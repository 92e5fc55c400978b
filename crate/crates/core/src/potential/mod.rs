//! Gallery of complex potentials with pointwise evaluation and L^q-type
//! integrals (global norms, norms over balls, exponentially weighted).

mod geometry;
mod grid;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

pub use geometry::{ball_ball_volume, rect_disk_area, Region};
pub use grid::{GridSpec, SampledField};

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate_pieces, Tolerance};

/// Shape of the quasimode envelope χ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Envelope {
    Gaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    /// α on the box [lo, hi].
    ConstantBox { alpha: Complex64, lo: Vec<f64>, hi: Vec<f64> },
    /// α on [-R, R] × [-√R, √R]^{d-1}.
    RectangularWell { alpha: Complex64, r: f64, d: usize },
    /// V₀ on [-R, R].
    SquareWell1D { v0: Complex64, r: f64 },
    /// V₀ on the ball of radius R in three dimensions.
    RadialStep3D { v0: Complex64, r: f64 },
    /// (n + |x₁| + |x′|²)^{-1}.
    IonescuJerison { n: f64, d: usize },
    /// base + coupling·W with W sampled on a grid.
    Perturbed { base: Box<Potential>, coupling: Complex64, w: SampledField },
    /// ε χ(εx₁, √ε x′).
    GaussianQuasimode { eps: f64, d: usize, envelope: Envelope },
    /// εV₁ + ε²V₂ cut off outside |y| ≤ M, which cancels the Gaussian
    /// quasimode residual exactly inside the cutoff.
    TruncatedQuasimode { eps: f64, cutoff: f64, d: usize },
    Sampled(SampledField),
}

fn check_dim(d: usize) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("dimension {d}")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// |S^{k}|, the area of the unit k-sphere, for k = 0, 1, 2.
fn sphere_area(k: usize) -> f64 {
    match k {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 4.0 * PI,
    }
}

impl Potential {
    pub fn constant_box(alpha: Complex64, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_dim(lo.len())?;
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a < b)) {
            return Err(Error::Domain("box needs lo < hi on every axis".into()));
        }
        Ok(Potential::ConstantBox { alpha, lo, hi })
    }

    pub fn rectangular_well(alpha: Complex64, r: f64, d: usize) -> Result<Self> {
        check_dim(d)?;
        positive("R", r)?;
        Ok(Potential::RectangularWell { alpha, r, d })
    }

    pub fn square_well_1d(v0: Complex64, r: f64) -> Result<Self> {
        positive("R", r)?;
        Ok(Potential::SquareWell1D { v0, r })
    }

    pub fn radial_step_3d(v0: Complex64, r: f64) -> Result<Self> {
        positive("R", r)?;
        Ok(Potential::RadialStep3D { v0, r })
    }

    pub fn ionescu_jerison(n: f64, d: usize) -> Result<Self> {
        check_dim(d)?;
        positive("n", n)?;
        Ok(Potential::IonescuJerison { n, d })
    }

    pub fn gaussian_quasimode(eps: f64, d: usize) -> Result<Self> {
        check_dim(d)?;
        positive("eps", eps)?;
        Ok(Potential::GaussianQuasimode {
            eps,
            d,
            envelope: Envelope::Gaussian,
        })
    }

    pub fn truncated_quasimode(eps: f64, cutoff: f64, d: usize) -> Result<Self> {
        check_dim(d)?;
        positive("eps", eps)?;
        positive("M", cutoff)?;
        Ok(Potential::TruncatedQuasimode { eps, cutoff, d })
    }

    pub fn dim(&self) -> usize {
        match self {
            Potential::ConstantBox { lo, .. } => lo.len(),
            Potential::RectangularWell { d, .. }
            | Potential::IonescuJerison { d, .. }
            | Potential::GaussianQuasimode { d, .. }
            | Potential::TruncatedQuasimode { d, .. } => *d,
            Potential::SquareWell1D { .. } => 1,
            Potential::RadialStep3D { .. } => 3,
            Potential::Perturbed { base, .. } => base.dim(),
            Potential::Sampled(f) => f.dim(),
        }
    }

    /// Short identifier used in output records.
    pub fn label(&self) -> String {
        match self {
            Potential::ConstantBox { .. } => format!("box{}d", self.dim()),
            Potential::RectangularWell { r, d, .. } => format!("rect{d}d_R{r}"),
            Potential::SquareWell1D { r, .. } => format!("well1d_R{r:.4}"),
            Potential::RadialStep3D { r, .. } => format!("radial3d_R{r:.4}"),
            Potential::IonescuJerison { n, d } => format!("ij{d}d_n{n}"),
            Potential::Perturbed { base, .. } => format!("{}+W", base.label()),
            Potential::GaussianQuasimode { eps, d, .. } => format!("qm{d}d_eps{eps}"),
            Potential::TruncatedQuasimode { eps, d, .. } => format!("qmtrunc{d}d_eps{eps}"),
            Potential::Sampled(f) => format!("sampled{}d", f.dim()),
        }
    }

    /// Height and support of a constant step potential.
    pub fn step(&self) -> Option<(Complex64, Region)> {
        match self {
            Potential::ConstantBox { alpha, lo, hi } => Some((
                *alpha,
                Region::Boxed {
                    lo: lo.clone(),
                    hi: hi.clone(),
                },
            )),
            Potential::RectangularWell { alpha, r, d } => {
                let mut lo = vec![-r.sqrt(); *d];
                let mut hi = vec![r.sqrt(); *d];
                lo[0] = -r;
                hi[0] = *r;
                Some((*alpha, Region::Boxed { lo, hi }))
            }
            Potential::SquareWell1D { v0, r } => Some((
                *v0,
                Region::Boxed {
                    lo: vec![-r],
                    hi: vec![*r],
                },
            )),
            Potential::RadialStep3D { v0, r } => Some((*v0, Region::Ball { radius: *r })),
            _ => None,
        }
    }

    /// Bounding box of the support, or None when the support is unbounded.
    pub fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        if let Some((_, region)) = self.step() {
            return Some(match region {
                Region::Boxed { lo, hi } => (lo, hi),
                Region::Ball { radius } => (vec![-radius; 3], vec![radius; 3]),
            });
        }
        match self {
            Potential::TruncatedQuasimode { eps, cutoff, d } => {
                let mut hi = vec![cutoff / eps.sqrt(); *d];
                hi[0] = cutoff / eps;
                let lo = hi.iter().map(|v| -v).collect();
                Some((lo, hi))
            }
            Potential::Sampled(f) => {
                let hi = f.grid.half_extent().to_vec();
                let lo = hi.iter().map(|v| -v).collect();
                Some((lo, hi))
            }
            _ => None,
        }
    }

    /// True when |V| is symmetric under x ↦ -x and nonincreasing along rays
    /// from the origin, so that translates of a radial weight peak at y = 0.
    pub fn is_centrally_unimodal(&self) -> bool {
        match self {
            Potential::ConstantBox { lo, hi, .. } => lo.iter().zip(hi).all(|(a, b)| (a + b).abs() <= 1e-14 * b.abs()),
            Potential::RectangularWell { .. }
            | Potential::SquareWell1D { .. }
            | Potential::RadialStep3D { .. }
            | Potential::IonescuJerison { .. }
            | Potential::GaussianQuasimode { .. } => true,
            _ => false,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self.value(x))
    }

    /// Pointwise value without the dimension check.
    pub(crate) fn value(&self, x: &[f64]) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Potential::ConstantBox { alpha, lo, hi } => {
                if x.iter().zip(lo.iter().zip(hi)).all(|(x, (a, b))| *a <= *x && *x <= *b) {
                    *alpha
                } else {
                    zero
                }
            }
            Potential::RectangularWell { alpha, r, .. } => {
                let side = r.sqrt();
                if x[0].abs() <= *r && x[1..].iter().all(|v| v.abs() <= side) {
                    *alpha
                } else {
                    zero
                }
            }
            Potential::SquareWell1D { v0, r } => {
                if x[0].abs() <= *r {
                    *v0
                } else {
                    zero
                }
            }
            Potential::RadialStep3D { v0, r } => {
                if x.iter().map(|v| v * v).sum::<f64>() <= r * r {
                    *v0
                } else {
                    zero
                }
            }
            Potential::IonescuJerison { n, .. } => {
                let t: f64 = x[1..].iter().map(|v| v * v).sum();
                Complex64::new(1.0 / (n + x[0].abs() + t), 0.0)
            }
            Potential::Perturbed { base, coupling, w } => base.value(x) + coupling * w.interpolate(x),
            Potential::GaussianQuasimode { eps, .. } => {
                let t: f64 = x[1..].iter().map(|v| v * v).sum();
                Complex64::new(eps * (-0.5 * (eps * eps * x[0] * x[0] + eps * t)).exp(), 0.0)
            }
            Potential::TruncatedQuasimode { eps, cutoff, d } => {
                let t: f64 = x[1..].iter().map(|v| v * v).sum();
                truncated_value(*eps, *cutoff, *d, eps * x[0], (eps * t).sqrt())
            }
            Potential::Sampled(f) => f.interpolate(x),
        }
    }

    /// sup |V|. Exact except for `Perturbed`, where the triangle inequality
    /// bound is returned.
    pub fn sup_abs(&self) -> f64 {
        if let Some((a, _)) = self.step() {
            return a.norm();
        }
        match self {
            Potential::IonescuJerison { n, .. } => 1.0 / n,
            Potential::GaussianQuasimode { eps, .. } => *eps,
            Potential::Perturbed { base, coupling, w } => base.sup_abs() + coupling.norm() * w.max_abs(),
            Potential::TruncatedQuasimode { eps, cutoff, d } => {
                // scan the (y₁, |y′|) quarter disk
                let m = 400;
                let mut best = 0.0f64;
                for i in 0..=m {
                    let y1 = cutoff * i as f64 / m as f64;
                    let top = (cutoff * cutoff - y1 * y1).max(0.0).sqrt();
                    let jmax = if *d == 1 { 0 } else { m };
                    for j in 0..=jmax {
                        let rho = top * j as f64 / m as f64;
                        best = best.max(truncated_value(*eps, *cutoff, *d, y1, rho).norm());
                    }
                }
                best
            }
            Potential::Sampled(f) => f.max_abs(),
            _ => unreachable!("step variants handled above"),
        }
    }

    /// x ↦ amplitude·V(x/length) in the same family where possible.
    pub fn rescaled(&self, amplitude: Complex64, length: f64) -> Result<Potential> {
        positive("length", length)?;
        match self {
            Potential::ConstantBox { alpha, lo, hi } => Ok(Potential::ConstantBox {
                alpha: alpha * amplitude,
                lo: lo.iter().map(|v| v * length).collect(),
                hi: hi.iter().map(|v| v * length).collect(),
            }),
            Potential::RectangularWell { .. } => {
                let (a, region) = self.step().unwrap();
                match region {
                    Region::Boxed { lo, hi } => Potential::ConstantBox { alpha: a, lo, hi }.rescaled(amplitude, length),
                    Region::Ball { .. } => unreachable!(),
                }
            }
            Potential::SquareWell1D { v0, r } => Ok(Potential::SquareWell1D {
                v0: v0 * amplitude,
                r: r * length,
            }),
            Potential::RadialStep3D { v0, r } => Ok(Potential::RadialStep3D {
                v0: v0 * amplitude,
                r: r * length,
            }),
            Potential::Sampled(f) => {
                let grid = GridSpec::new(
                    f.grid.half_extent().iter().map(|v| v * length).collect(),
                    f.grid.points().to_vec(),
                )?;
                Ok(Potential::Sampled(SampledField {
                    grid,
                    values: f.values.iter().map(|v| v * amplitude).collect(),
                }))
            }
            other => Err(Error::Unsupported(format!("rescaling of {}", other.label()))),
        }
    }

    /// ‖V‖_q.
    pub fn lq_norm(&self, q: f64) -> Result<f64> {
        check_q(q)?;
        if let Some((a, region)) = self.step() {
            return Ok(a.norm() * region.volume().powf(1.0 / q));
        }
        let d = self.dim();
        let integral = match self {
            Potential::IonescuJerison { n, .. } => {
                if q <= (d as f64 + 1.0) / 2.0 {
                    return Err(Error::Divergent(format!(
                        "Ionescu-Jerison potential is not in L^{q} for d = {d}"
                    )));
                }
                let n = *n;
                let cuts = vec![f64::NEG_INFINITY, -10.0 * n, -n, 0.0, n, 10.0 * n, f64::INFINITY];
                self.axial_integral(q, &cuts, &|_| f64::INFINITY, &|_, _| 1.0)
            }
            Potential::GaussianQuasimode { eps, .. } => {
                return Ok(eps.powf(1.0 - (d as f64 + 1.0) / (2.0 * q)) * (2.0 * PI / q).powf(d as f64 / (2.0 * q)));
            }
            Potential::TruncatedQuasimode { eps, cutoff, .. } => {
                let x1_max = cutoff / eps;
                let rho_cap = |x1: f64| ((cutoff * cutoff - eps * eps * x1 * x1).max(0.0) / eps).sqrt();
                self.axial_integral(q, &[-x1_max, 0.0, x1_max], &rho_cap, &|_, _| 1.0)
            }
            Potential::Perturbed { base, w, .. } => {
                let inside = cell_integral(&w.grid, &|x| self.value(x).norm().powf(q));
                let base_inside = cell_integral(&w.grid, &|x| base.value(x).norm().powf(q));
                let base_total = base.lq_norm(q)?.powf(q);
                inside + (base_total - base_inside).max(0.0)
            }
            Potential::Sampled(f) => cell_integral(&f.grid, &|x| f.interpolate(x).norm().powf(q)),
            _ => unreachable!("step variants handled above"),
        };
        Ok(integral.powf(1.0 / q))
    }

    /// ‖V‖_{L^q(B(center, radius))}.
    pub fn local_ball_norm(&self, q: f64, center: &[f64], radius: f64) -> Result<f64> {
        check_q(q)?;
        if center.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: center.len(),
            });
        }
        if radius <= 0.0 {
            return Err(Error::Domain("ball radius must be positive".into()));
        }
        if let Some((a, region)) = self.step() {
            return Ok(a.norm() * region.overlap_with_ball(center, radius).powf(1.0 / q));
        }
        let integral = if self.is_axial() && on_axis(center) {
            let c1 = center[0];
            let (lo, hi) = self.axial_x1_range();
            let a = (c1 - radius).max(lo);
            let b = (c1 + radius).min(hi);
            if b <= a {
                return Ok(0.0);
            }
            let mut cuts = vec![a, b];
            cuts.extend(self.axial_x1_cuts().into_iter().filter(|t| *t > a && *t < b));
            let support = self.axial_rho_cap();
            let cap = |x1: f64| {
                let ball = (radius * radius - (x1 - c1).powi(2)).max(0.0).sqrt();
                ball.min(support(x1))
            };
            self.axial_integral(q, &cuts, &cap, &|_, _| 1.0)
        } else {
            self.cartesian_ball_integral(q, center, radius, &|_| 1.0)
        };
        Ok(integral.powf(1.0 / q))
    }

    /// ∫ |V(x)|^q e^{-s|x-y|} dx.
    pub fn exp_weighted_integral(&self, q: f64, s: f64, y: &[f64]) -> Result<f64> {
        check_q(q)?;
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.len(),
            });
        }
        if s < 0.0 {
            return Err(Error::Domain("decay rate s must be nonnegative".into()));
        }
        if s == 0.0 {
            return self.lq_norm(q).map(|v| v.powf(q));
        }
        if let Some((a, region)) = self.step() {
            return Ok(a.norm().powf(q) * profile_integral(&region, y, s));
        }
        if self.is_axial() && on_axis(y) {
            let y1 = y[0];
            let (lo, hi) = self.axial_x1_range();
            let mut cuts = vec![lo, hi];
            cuts.extend(self.axial_x1_cuts());
            for k in [-4.0, -1.0, 0.0, 1.0, 4.0] {
                let t = y1 + k / s;
                if t > lo && t < hi {
                    cuts.push(t);
                }
            }
            let cap = self.axial_rho_cap();
            return Ok(self.axial_integral(q, &cuts, &cap, &|x1, rho| {
                (-s * ((x1 - y1).powi(2) + rho * rho).sqrt()).exp()
            }));
        }
        match self.bounding_box() {
            Some((lo, hi)) => {
                let reach = y
                    .iter()
                    .zip(lo.iter().zip(&hi))
                    .map(|(c, (a, b))| (c - a).abs().max((c - b).abs()).powi(2))
                    .sum::<f64>()
                    .sqrt();
                Ok(self.cartesian_ball_integral(q, y, reach, &|rho| (-s * rho).exp()))
            }
            None => Ok(self.spherical_integral(q, y, f64::INFINITY, &|rho| (-s * rho).exp())),
        }
    }

    fn is_axial(&self) -> bool {
        matches!(
            self,
            Potential::IonescuJerison { .. } | Potential::GaussianQuasimode { .. } | Potential::TruncatedQuasimode { .. }
        )
    }

    fn axial_x1_range(&self) -> (f64, f64) {
        match self {
            Potential::TruncatedQuasimode { eps, cutoff, .. } => (-cutoff / eps, cutoff / eps),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    fn axial_x1_cuts(&self) -> Vec<f64> {
        match self {
            Potential::IonescuJerison { n, .. } => vec![-10.0 * n, -n, 0.0, *n, 10.0 * n],
            Potential::GaussianQuasimode { eps, .. } => vec![-5.0 / eps, -1.0 / eps, 0.0, 1.0 / eps, 5.0 / eps],
            Potential::TruncatedQuasimode { .. } => vec![0.0],
            _ => Vec::new(),
        }
    }

    fn axial_rho_cap(&self) -> Box<dyn Fn(f64) -> f64 + Sync + '_> {
        match self {
            Potential::TruncatedQuasimode { eps, cutoff, .. } => {
                Box::new(move |x1: f64| ((cutoff * cutoff - eps * eps * x1 * x1).max(0.0) / eps).sqrt())
            }
            _ => Box::new(|_| f64::INFINITY),
        }
    }

    /// Typical transverse length at axial position x₁.
    fn axial_rho_scale(&self, x1: f64) -> f64 {
        match self {
            Potential::IonescuJerison { n, .. } => (n + x1.abs()).sqrt(),
            Potential::GaussianQuasimode { eps, .. } | Potential::TruncatedQuasimode { eps, .. } => 1.0 / eps.sqrt(),
            _ => 1.0,
        }
    }

    /// |V|^q as a function of (x₁, |x′|).
    fn axial_abs_pow(&self, q: f64, x1: f64, rho: f64) -> f64 {
        match self {
            Potential::IonescuJerison { n, .. } => (n + x1.abs() + rho * rho).powf(-q),
            Potential::GaussianQuasimode { eps, .. } => {
                eps.powf(q) * (-0.5 * q * (eps * eps * x1 * x1 + eps * rho * rho)).exp()
            }
            Potential::TruncatedQuasimode { eps, cutoff, d } => {
                truncated_value(*eps, *cutoff, *d, eps * x1, eps.sqrt() * rho).norm().powf(q)
            }
            _ => unreachable!("only axial variants"),
        }
    }

    /// ∫ dx₁ ∫₀^{cap(x₁)} |S^{d-2}| ρ^{d-2} |V|^q w(x₁, ρ) dρ.
    fn axial_integral(
        &self,
        q: f64,
        x1_cuts: &[f64],
        rho_cap: &(dyn Fn(f64) -> f64 + Sync),
        weight: &(dyn Fn(f64, f64) -> f64 + Sync),
    ) -> f64 {
        let d = self.dim();
        let outer_tol = Tolerance::rel(1e-9).with_abs(1e-300);
        let inner_tol = Tolerance::rel(1e-11).with_abs(1e-300);
        if d == 1 {
            return integrate_pieces(|x1: f64| self.axial_abs_pow(q, x1, 0.0) * weight(x1, 0.0), x1_cuts, outer_tol).value;
        }
        let measure = sphere_area(d - 2);
        let inner = |x1: f64| {
            let cap = rho_cap(x1);
            if cap <= 0.0 {
                return 0.0;
            }
            let scale = self.axial_rho_scale(x1);
            let mut cuts = vec![0.0, cap];
            for k in [1.0, 4.0] {
                if k * scale < cap {
                    cuts.push(k * scale);
                }
            }
            let f = |rho: f64| {
                let jac = if d == 3 { rho } else { 1.0 };
                measure * jac * self.axial_abs_pow(q, x1, rho) * weight(x1, rho)
            };
            integrate_pieces(f, &cuts, inner_tol).value
        };
        integrate_pieces(inner, x1_cuts, outer_tol).value
    }

    /// ∫_{|x-c| ≤ radius} |V|^q w(|x-c|) dx by nested adaptive quadrature with
    /// the ball (clipped to the support box) as exact integration limits.
    fn cartesian_ball_integral(&self, q: f64, center: &[f64], radius: f64, weight: &dyn Fn(f64) -> f64) -> f64 {
        let d = self.dim();
        let (lo, hi) = self
            .bounding_box()
            .unwrap_or_else(|| (center.iter().map(|c| c - radius).collect(), center.iter().map(|c| c + radius).collect()));
        let tol = Tolerance::rel(1e-10).with_abs(1e-300);
        let limits = |axis: usize, room: f64| -> Vec<f64> {
            let a = (center[axis] - room).max(lo[axis]);
            let b = (center[axis] + room).min(hi[axis]);
            if b <= a {
                return Vec::new();
            }
            let mut cuts = vec![a, b];
            if center[axis] > a && center[axis] < b {
                cuts.push(center[axis]);
            }
            cuts
        };
        let value = |x: &[f64]| {
            let dist = x.iter().zip(center).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            self.value(x).norm().powf(q) * weight(dist)
        };
        let room = |used: f64| (radius * radius - used).max(0.0).sqrt();
        let cuts0 = limits(0, radius);
        if cuts0.is_empty() {
            return 0.0;
        }
        integrate_pieces(
            |x0: f64| {
                let u0 = (x0 - center[0]).powi(2);
                if d == 1 {
                    return value(&[x0]);
                }
                let cuts1 = limits(1, room(u0));
                if cuts1.is_empty() {
                    return 0.0;
                }
                integrate_pieces(
                    |x1: f64| {
                        let u1 = u0 + (x1 - center[1]).powi(2);
                        if d == 2 {
                            return value(&[x0, x1]);
                        }
                        let cuts2 = limits(2, room(u1));
                        if cuts2.is_empty() {
                            return 0.0;
                        }
                        integrate_pieces(|x2: f64| value(&[x0, x1, x2]), &cuts2, tol).value
                    },
                    &cuts1,
                    tol,
                )
                .value
            },
            &cuts0,
            tol,
        )
        .value
    }

    /// ∫_{|x-c| ≤ reach} |V|^q w(|x-c|) dx in polar coordinates about c.
    fn spherical_integral(&self, q: f64, center: &[f64], reach: f64, weight: &dyn Fn(f64) -> f64) -> f64 {
        let d = self.dim();
        let dirs = angular_rule(d);
        let shell = |rho: f64| {
            let mut point = [0.0; 3];
            let mut acc = 0.0;
            for (dir, w) in &dirs {
                for a in 0..d {
                    point[a] = center[a] + rho * dir[a];
                }
                acc += w * self.value(&point[..d]).norm().powf(q);
            }
            acc * rho.powi(d as i32 - 1) * weight(rho)
        };
        let mut cuts = vec![0.0, reach];
        if let Some((lo, hi)) = self.bounding_box() {
            // distances to the support faces
            for a in 0..d {
                for face in [lo[a], hi[a]] {
                    let t = (face - center[a]).abs();
                    if t > 0.0 && t < reach {
                        cuts.push(t);
                    }
                }
            }
        } else if reach.is_infinite() {
            cuts.push(1.0);
            cuts.push(10.0);
        }
        integrate_pieces(shell, &cuts, Tolerance::rel(1e-8).with_abs(1e-300)).value
    }
}

fn check_q(q: f64) -> Result<()> {
    if q >= 1.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::Range(format!("exponent q = {q} must be in [1, inf)")))
    }
}

fn on_axis(x: &[f64]) -> bool {
    x[1..].iter().all(|v| v.abs() <= 1e-12)
}

/// εV₁ + ε²V₂ at y = (y₁, |y′|) inside the cutoff, 0 outside.
fn truncated_value(eps: f64, cutoff: f64, d: usize, y1: f64, rho: f64) -> Complex64 {
    if y1 * y1 + rho * rho > cutoff * cutoff {
        return Complex64::new(0.0, 0.0);
    }
    let v1 = -Complex64::new(d as f64 - 1.0 - rho * rho, 2.0 * y1 - 1.0);
    let v2 = -(1.0 - y1 * y1);
    v1 * eps + eps * eps * v2
}

/// Directions and weights of a fixed rule on the unit sphere S^{d-1}.
fn angular_rule(d: usize) -> Vec<([f64; 3], f64)> {
    match d {
        1 => vec![([1.0, 0.0, 0.0], 1.0), ([-1.0, 0.0, 0.0], 1.0)],
        2 => {
            let m = 128;
            (0..m)
                .map(|k| {
                    let t = 2.0 * PI * (k as f64 + 0.5) / m as f64;
                    ([t.cos(), t.sin(), 0.0], 2.0 * PI / m as f64)
                })
                .collect()
        }
        _ => {
            let (mu, wmu) = gauss_legendre(24);
            let m = 48;
            let mut out = Vec::with_capacity(24 * m);
            for (c, wc) in mu.iter().zip(&wmu) {
                let s = (1.0 - c * c).sqrt();
                for k in 0..m {
                    let p = 2.0 * PI * (k as f64 + 0.5) / m as f64;
                    out.push(([*c, s * p.cos(), s * p.sin()], wc * 2.0 * PI / m as f64));
                }
            }
            out
        }
    }
}

/// ∫_Ω e^{-s|x-y|} dx = e^{-s r_max}|Ω| + s ∫₀^{r_max} e^{-sr} |Ω ∩ B(y, r)| dr.
fn profile_integral(region: &Region, y: &[f64], s: f64) -> f64 {
    let rmax = region.farthest(y);
    let mut cuts = vec![0.0, rmax];
    cuts.extend(region.kinks(y).into_iter().filter(|r| *r > 0.0 && *r < rmax));
    for k in [1.0, 4.0, 16.0, 64.0] {
        if k / s < rmax {
            cuts.push(k / s);
        }
    }
    let body = integrate_pieces(
        |r: f64| (-s * r).exp() * region.overlap_with_ball(y, r),
        &cuts,
        Tolerance::rel(1e-11).with_abs(1e-300),
    )
    .value;
    (-s * rmax).exp() * region.volume() + s * body
}

/// ∫ over the grid box by a 4-point Gauss–Legendre rule in every cell.
fn cell_integral(grid: &GridSpec, f: &(dyn Fn(&[f64]) -> f64 + Sync)) -> f64 {
    let d = grid.dim();
    let (xs, ws) = gauss_legendre(4);
    let cells: Vec<usize> = grid.points().iter().map(|n| n - 1).collect();
    let total_cells: usize = cells.iter().product();
    let nodes = xs.len().pow(d as u32);
    (0..total_cells)
        .into_par_iter()
        .map(|cell| {
            let mut idx = [0usize; 3];
            let mut m = cell;
            for a in (0..d).rev() {
                idx[a] = m % cells[a];
                m /= cells[a];
            }
            let mut acc = 0.0;
            let mut x = [0.0; 3];
            for node in 0..nodes {
                let mut k = node;
                let mut w = 1.0;
                for a in 0..d {
                    let j = k % xs.len();
                    k /= xs.len();
                    let h = grid.spacing(a);
                    x[a] = grid.coord(a, idx[a]) + 0.5 * h * (1.0 + xs[j]);
                    w *= 0.5 * h * ws[j];
                }
                acc += w * f(&x[..d]);
            }
            acc
        })
        .sum()
}

/// (1/n)·max(1, ln(R/n)), the model for the L^{(d+1)/2} mass of the
/// Ionescu–Jerison potential over a ball of radius R.
pub fn ij_local_norm_model(n: f64, r: f64, _d: usize) -> f64 {
    (1.0 / n) * (r / n).ln().max(1.0)
}

/// V_n + coupling·W.
pub fn perturbed_ij(n: f64, coupling: Complex64, w: SampledField) -> Result<Potential> {
    if coupling.norm() >= 1.0 {
        return Err(Error::Range(format!("|coupling| = {} must be below 1", coupling.norm())));
    }
    let base = Potential::ionescu_jerison(n, w.dim())?;
    Ok(Potential::Perturbed {
        base: Box::new(base),
        coupling,
        w,
    })
}

/// Default perturbation W = e^{-|x|²/2} sampled on a cube.
pub fn default_perturbation(d: usize, half_extent: f64, points: usize) -> Result<SampledField> {
    let grid = GridSpec::cube(d, half_extent, points)?;
    Ok(SampledField::from_fn(grid, |x| {
        Complex64::new((-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let w = Potential::rectangular_well(c(1.0, 0.0), 4.0, 3).unwrap();
        assert_eq!(w.eval(&[0.0, 0.0, 0.0]).unwrap(), c(1.0, 0.0));
        assert_eq!(w.eval(&[5.0, 0.0, 0.0]).unwrap(), c(0.0, 0.0));
        assert_eq!(w.eval(&[3.9, 2.1, 0.0]).unwrap(), c(0.0, 0.0));
        let ij = Potential::ionescu_jerison(10.0, 3).unwrap();
        assert!((ij.eval(&[2.0, 1.0, 1.0]).unwrap().re - 1.0 / 14.0).abs() < 1e-16);
        assert!(matches!(ij.eval(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn closed_form_norms() {
        let w = Potential::rectangular_well(c(1.0, 0.0), 1.0, 3).unwrap();
        assert!((w.lq_norm(2.0).unwrap() - 8f64.sqrt()).abs() < 1e-14);
        let sq = Potential::square_well_1d(c(0.0, 2.0), 3.0).unwrap();
        assert!((sq.lq_norm(1.0).unwrap() - 12.0).abs() < 1e-14);
        let ij = Potential::ionescu_jerison(10.0, 3).unwrap();
        assert!(matches!(ij.lq_norm(2.0), Err(Error::Divergent(_))));
        assert!(matches!(sq.lq_norm(0.5), Err(Error::Range(_))));
    }

    #[test]
    fn ball_norm_examples() {
        let sq = Potential::square_well_1d(c(0.0, 2.0), 1.0).unwrap();
        assert!((sq.local_ball_norm(1.0, &[0.0], 10.0).unwrap() - 4.0).abs() < 1e-14);
        let sq = Potential::square_well_1d(c(1.0, 0.0), 5.0).unwrap();
        assert!((sq.local_ball_norm(2.0, &[0.0], 1.0).unwrap() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn exp_weighted_steps() {
        let one = Potential::constant_box(c(1.0, 0.0), vec![-1.0], vec![1.0]).unwrap();
        let v = one.exp_weighted_integral(1.0, 1.0, &[0.0]).unwrap();
        assert!((v - 2.0 * (1.0 - (-1f64).exp())).abs() < 1e-12);
        let huge = Potential::constant_box(c(1.0, 0.0), vec![-1e6], vec![1e6]).unwrap();
        let v = huge.exp_weighted_integral(1.0, 2.0, &[0.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn model_curve() {
        assert!((ij_local_norm_model(10.0, 10.0, 3) - 0.1).abs() < 1e-16);
        assert!((ij_local_norm_model(10.0, 10.0 * std::f64::consts::E, 3) - 0.1).abs() < 1e-15);
        assert!((ij_local_norm_model(10.0, 1000.0, 3) - 0.1 * 100f64.ln()).abs() < 1e-15);
    }
}
