//! Gaussian quasimodes ψ = N^{-1/2} e^{ix₁} G(|y|), y = (εx₁, √ε x′), for
//! -Δ + V at z = 1 + iε, and the truncated potential that cancels the
//! residual inside |y| ≤ M.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::quadrature::{gauss_hermite, integrate, Tolerance};

const GH_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum QuasimodeKind {
    /// V = ε G(|y|).
    Gaussian,
    /// V = εV₁ + ε²V₂ on |y| ≤ M.
    Truncated { cutoff: f64, delta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quasimode {
    pub eps: f64,
    pub d: usize,
    /// N = ε^{-(d+1)/2}.
    pub normalization: f64,
    pub kind: QuasimodeKind,
    pub potential: Potential,
}

fn gaussian(t2: f64) -> f64 {
    (-0.5 * t2).exp()
}

impl Quasimode {
    /// (y₁, |y′|²).
    pub fn scaled(&self, x: &[f64]) -> (f64, f64) {
        let t: f64 = x[1..].iter().map(|v| v * v).sum();
        (self.eps * x[0], self.eps * t)
    }

    pub fn psi(&self, x: &[f64]) -> Complex64 {
        let (y1, rho2) = self.scaled(x);
        Complex64::from_polar(self.normalization.powf(-0.5) * gaussian(y1 * y1 + rho2), x[0])
    }

    /// z = 1 + iε.
    pub fn z(&self) -> Complex64 {
        Complex64::new(1.0, self.eps)
    }

    /// (-Δ - 1 - iε)ψ = m(y)ψ.
    fn residual_multiplier(&self, y1: f64, rho2: f64) -> Complex64 {
        let e = self.eps;
        let a = Complex64::new(self.d as f64 - 1.0 - rho2, 2.0 * y1 - 1.0);
        e * a + e * e * (1.0 - y1 * y1)
    }

    /// V as a function of y.
    fn potential_at(&self, y1: f64, rho2: f64) -> Complex64 {
        match self.kind {
            QuasimodeKind::Gaussian => Complex64::new(self.eps * gaussian(y1 * y1 + rho2), 0.0),
            QuasimodeKind::Truncated { cutoff, .. } => {
                if y1 * y1 + rho2 <= cutoff * cutoff {
                    -self.residual_multiplier(y1, rho2)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// g/ψ = m(y) + V(y).
    fn g_multiplier(&self, y1: f64, rho2: f64) -> Complex64 {
        self.residual_multiplier(y1, rho2) + self.potential_at(y1, rho2)
    }
}

pub fn gaussian_quasimode(eps: f64, d: usize) -> Result<Quasimode> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::Range(format!("eps = {eps} must lie in (0, 0.5]")));
    }
    Ok(Quasimode {
        eps,
        d,
        normalization: eps.powf(-(d as f64 + 1.0) / 2.0),
        kind: QuasimodeKind::Gaussian,
        potential: Potential::gaussian_quasimode(eps, d)?,
    })
}

/// δ with q = (d+1)/(2(1-δ)).
pub fn truncation_delta(d: usize, q: f64) -> Result<f64> {
    let crit = (d as f64 + 1.0) / 2.0;
    if !(q > crit) {
        return Err(Error::Range(format!("q = {q} must exceed (d+1)/2 = {crit}")));
    }
    Ok(1.0 - crit / q)
}

/// M = ε^{-δ/(2(2+d/q))}.
pub fn truncation_cutoff(eps: f64, d: usize, q: f64) -> Result<f64> {
    let delta = truncation_delta(d, q)?;
    Ok(eps.powf(-delta / (2.0 * (2.0 + d as f64 / q))))
}

pub fn truncated_quasimode(eps: f64, q: f64, d: usize) -> Result<Quasimode> {
    let delta = truncation_delta(d, q)?;
    let cutoff = truncation_cutoff(eps, d, q)?;
    truncated_quasimode_with_cutoff(eps, cutoff, delta, d)
}

/// The truncated construction at an explicit cutoff M.
pub fn truncated_quasimode_with_cutoff(eps: f64, cutoff: f64, delta: f64, d: usize) -> Result<Quasimode> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::Range(format!("eps = {eps} must lie in (0, 0.5]")));
    }
    Ok(Quasimode {
        eps,
        d,
        normalization: eps.powf(-(d as f64 + 1.0) / 2.0),
        kind: QuasimodeKind::Truncated { cutoff, delta },
        potential: Potential::truncated_quasimode(eps, cutoff, d)?,
    })
}

/// (ε(d-1-|y′|²+2iy₁-i) + ε²(1-y₁²))ψ(x).
pub fn residual_analytic(qm: &Quasimode, x: &[f64]) -> Complex64 {
    let (y1, rho2) = qm.scaled(x);
    qm.residual_multiplier(y1, rho2) * qm.psi(x)
}

/// (-Δ_h - 1 - iε)ψ(x) with the (2d+1)-point Laplacian.
pub fn stencil_residual(qm: &Quasimode, x: &[f64], h: f64) -> Complex64 {
    let centre = qm.psi(x);
    let mut lap = Complex64::new(0.0, 0.0);
    let mut p = x.to_vec();
    for axis in 0..x.len() {
        p[axis] = x[axis] + h;
        let up = qm.psi(&p);
        p[axis] = x[axis] - h;
        let down = qm.psi(&p);
        p[axis] = x[axis];
        lap += (up - 2.0 * centre + down) / (h * h);
    }
    -lap - qm.z() * centre
}

/// ‖ψ‖₂² from one-dimensional integrals in x.
pub fn psi_norm2(qm: &Quasimode) -> f64 {
    let tol = Tolerance::rel(1e-13);
    let along = integrate(|t: f64| gaussian(2.0 * (qm.eps * t).powi(2)), f64::NEG_INFINITY, f64::INFINITY, tol).value;
    let across = integrate(|t: f64| gaussian(2.0 * qm.eps * t * t), f64::NEG_INFINITY, f64::INFINITY, tol).value;
    along * across.powi(qm.d as i32 - 1) / qm.normalization
}

/// ∫ e^{-|y|²} f(y₁, |y′|²) dy by a tensor Gauss–Hermite rule.
fn hermite_integral<F: Fn(f64, f64) -> f64>(d: usize, f: F) -> f64 {
    let (x, w) = gauss_hermite(GH_POINTS);
    let n = x.len();
    let mut total = 0.0;
    match d {
        1 => {
            for i in 0..n {
                total += w[i] * f(x[i], 0.0);
            }
        }
        2 => {
            for i in 0..n {
                for j in 0..n {
                    total += w[i] * w[j] * f(x[i], x[j] * x[j]);
                }
            }
        }
        _ => {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        total += w[i] * w[j] * w[k] * f(x[i], x[j] * x[j] + x[k] * x[k]);
                    }
                }
            }
        }
    }
    total
}

/// ∫_{lo ≤ |y| ≤ hi} f(y₁, |y′|²) dy in polar coordinates of the (y₁, |y′|)
/// half plane.
fn shell_integral<F: Fn(f64, f64) -> f64>(d: usize, lo: f64, hi: f64, f: F) -> f64 {
    let tol = Tolerance::rel(1e-11).with_abs(1e-300);
    match d {
        1 => integrate(|s: f64| f(s, 0.0) + f(-s, 0.0), lo, hi, tol).value,
        2 => integrate(
            |s: f64| {
                let inner = integrate(
                    |t: f64| {
                        let rho = s * t.sin();
                        f(s * t.cos(), rho * rho)
                    },
                    0.0,
                    PI,
                    tol,
                )
                .value;
                2.0 * s * inner
            },
            lo,
            hi,
            tol,
        )
        .value,
        _ => integrate(
            |s: f64| {
                let inner = integrate(
                    |t: f64| {
                        let rho = s * t.sin();
                        f(s * t.cos(), rho * rho) * t.sin()
                    },
                    0.0,
                    PI,
                    tol,
                )
                .value;
                2.0 * PI * s * s * inner
            },
            lo,
            hi,
            tol,
        )
        .value,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasimodeNorms {
    /// ‖(-Δ + V - 1 - iε)ψ‖₂.
    pub g2: f64,
    /// ‖V‖_q.
    pub vq: f64,
    /// ‖|V|^{1/2}ψ‖₂.
    pub vpsi2: f64,
}

fn check_q(d: usize, q: f64) -> Result<()> {
    let crit = (d as f64 + 1.0) / 2.0;
    if !(q > crit) {
        return Err(Error::Range(format!("q = {q} must exceed (d+1)/2 = {crit}")));
    }
    Ok(())
}

/// In y coordinates |ψ|² dx = e^{-|y|²} dy, so every norm is an integral
/// against the Gaussian weight.
pub fn quasimode_norms(qm: &Quasimode, q: f64) -> Result<QuasimodeNorms> {
    check_q(qm.d, q)?;
    let vq = qm.potential.lq_norm(q)?;
    let (g_sq, v_sq) = match qm.kind {
        QuasimodeKind::Gaussian => (
            hermite_integral(qm.d, |y1, r2| qm.g_multiplier(y1, r2).norm_sqr()),
            hermite_integral(qm.d, |y1, r2| qm.potential_at(y1, r2).norm()),
        ),
        QuasimodeKind::Truncated { cutoff, .. } => {
            let weight = |y1: f64, r2: f64| (-(y1 * y1 + r2)).exp();
            let outside = shell_integral(qm.d, cutoff, f64::INFINITY, |y1, r2| {
                weight(y1, r2) * qm.g_multiplier(y1, r2).norm_sqr()
            });
            let inside = shell_integral(qm.d, 0.0, cutoff, |y1, r2| {
                weight(y1, r2) * qm.potential_at(y1, r2).norm()
            });
            (outside, inside)
        }
    };
    Ok(QuasimodeNorms {
        g2: g_sq.sqrt(),
        vq,
        vpsi2: v_sq.sqrt(),
    })
}

/// ε^{(d+1)/(4q)-1} ‖V‖_q^{1/2} ‖g‖₂ / ‖V^{1/2}ψ‖₂.
pub fn check_proposition_condition(qm: &Quasimode, q: f64) -> Result<f64> {
    let n = quasimode_norms(qm, q)?;
    Ok(condition_quantity(qm.eps, qm.d, q, &n))
}

pub fn condition_quantity(eps: f64, d: usize, q: f64, n: &QuasimodeNorms) -> f64 {
    if n.g2 == 0.0 {
        return 0.0;
    }
    eps.powf((d as f64 + 1.0) / (4.0 * q) - 1.0) * n.vq.sqrt() * n.g2 / n.vpsi2
}

/// ε^{1-(d+1)/(2q)} / ‖V‖_q, the ratio in the quasimode eigenvalue bound.
pub fn quasimode_bound_ratio(qm: &Quasimode, q: f64) -> Result<f64> {
    check_q(qm.d, q)?;
    Ok(qm.eps.powf(1.0 - (qm.d as f64 + 1.0) / (2.0 * q)) / qm.potential.lq_norm(q)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasimodeRecord {
    pub eps: f64,
    pub q: f64,
    pub d: usize,
    pub g2: f64,
    pub vq: f64,
    pub vpsi2: f64,
    pub condition_quantity: f64,
}

pub fn quasimode_record(qm: &Quasimode, q: f64) -> Result<QuasimodeRecord> {
    let n = quasimode_norms(qm, q)?;
    Ok(QuasimodeRecord {
        eps: qm.eps,
        q,
        d: qm.d,
        g2: n.g2,
        vq: n.vq,
        vpsi2: n.vpsi2,
        condition_quantity: condition_quantity(qm.eps, qm.d, q, &n),
    })
}
