//! Exact eigenvalue constructions (the 1D complex square well and the 3D
//! radial step) and finite-difference eigensolvers used to cross-check them.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::sqrt_upper;
use crate::potential::Potential;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// iε + ω(1 - e^{2i(ω-1)R}) / (1 + e^{2i(ω-1)R}).
pub fn mode_function_f(eps: f64, r: f64, omega: Complex64) -> Result<Complex64> {
    let e = (2.0 * I * (omega - 1.0) * r).exp();
    let den = 1.0 + e;
    if den.norm() <= 1e-14 * (1.0 + e.norm()) {
        return Err(Error::Pole(format!("1 + e^(2i(w-1)R) vanishes at w = {omega}")));
    }
    Ok(I * eps + omega * (1.0 - e) / den)
}

fn mode_function_derivative(r: f64, omega: Complex64) -> Complex64 {
    let e = (2.0 * I * (omega - 1.0) * r).exp();
    let t = (1.0 - e) / (1.0 + e);
    let dt = -4.0 * I * r * e / ((1.0 + e) * (1.0 + e));
    t + omega * dt
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareWellSolution1D {
    pub eps: f64,
    pub rho: f64,
    pub c: f64,
    pub r: f64,
    /// Interior wavenumber: ψ = cos(k x) on [-R, R].
    pub k_in: Complex64,
    pub v0: Complex64,
    pub e: Complex64,
    /// |i k tan(kR) - (1 + iε)|.
    pub residual: f64,
    /// Zeros of the matching function inside a circle of radius π/(4R) about k_in.
    pub winding: i64,
    /// Zero of the auxiliary function f near ω = -iε, when Newton finds one.
    pub f_root: Option<Complex64>,
}

impl SquareWellSolution1D {
    pub fn potential(&self) -> Result<Potential> {
        Potential::square_well_1d(self.v0, self.r)
    }

    pub fn norm(&self, q: f64) -> f64 {
        self.v0.norm() * (2.0 * self.r).powf(1.0 / q)
    }

    /// ψ(x) = cos(kx) inside and cos(kR) e^{iκ(|x|-R)} outside.
    pub fn eigenfunction(&self, x: f64) -> Complex64 {
        if x.abs() <= self.r {
            (self.k_in * x).cos()
        } else {
            let kappa = c(1.0, self.eps);
            (self.k_in * self.r).cos() * (I * kappa * (x.abs() - self.r)).exp()
        }
    }
}

/// |i k tan(kR) - (1 + iε)|.
pub fn matching_residual(eps: f64, r: f64, k: Complex64) -> f64 {
    (I * k * (k * r).tan() - c(1.0, eps)).norm()
}

/// (|ln ε| - C)/((1-ρ)ε) moved down to the nearest R ≡ π/4 (mod π), which
/// centres the decaying matching root at Re k ≈ 1.
pub fn square_well_radius(eps: f64, rho: f64, c_const: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.2) {
        return Err(Error::Range(format!("eps = {eps} must lie in (0, 0.2]")));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Range(format!("rho = {rho} must lie in (0, 1)")));
    }
    let log = eps.ln().abs();
    if !(c_const > 0.0 && c_const < log) {
        return Err(Error::Range(format!("C = {c_const} must lie in (0, |ln eps| = {log})")));
    }
    let raw = (log - c_const) / ((1.0 - rho) * eps);
    let m = ((raw - PI / 4.0) / PI).floor();
    if m < 0.0 {
        return Err(Error::Range(format!("R = {raw} is too small to place a matching root")));
    }
    Ok(PI / 4.0 + m * PI)
}

/// (k + z) e^{-2ikR} - (k - z), whose zeros are the even matching roots.
fn matching_entire(z: Complex64, r: f64, k: Complex64) -> Complex64 {
    (k + z) * (-2.0 * I * k * r).exp() - (k - z)
}

/// Newton on -2ikR - Log((k-z)/(k+z)) - 2πim = 0 with the sheet m fixed by
/// the starting point.
fn newton_log_form(z: Complex64, r: f64, start: Complex64) -> Option<Complex64> {
    let ratio = (start - z) / (start + z);
    let m = ((-2.0 * r * start.re - ratio.arg()) / (2.0 * PI)).round();
    let mut k = start;
    for _ in 0..100 {
        let h = -2.0 * I * k * r - ((k - z) / (k + z)).ln() - 2.0 * PI * I * m;
        let dh = -2.0 * I * r - (1.0 / (k - z) - 1.0 / (k + z));
        let step = h / dh;
        k -= step;
        if !k.re.is_finite() || !k.im.is_finite() {
            return None;
        }
        if step.norm() <= 1e-15 * k.norm() {
            return Some(k);
        }
    }
    None
}

/// Number of zeros of g inside the circle |k - centre| = radius, by the
/// winding number of g along the circle.
pub fn winding_number<G: Fn(Complex64) -> Complex64>(g: G, centre: Complex64, radius: f64) -> Result<i64> {
    let mut n = 256usize;
    while n <= 1 << 18 {
        let vals: Vec<Complex64> = (0..=n)
            .map(|j| g(centre + Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64)))
            .collect();
        if vals.iter().any(|v| v.norm() == 0.0) {
            return Err(Error::Degenerate("zero on the counting contour".into()));
        }
        let steps: Vec<f64> = vals.windows(2).map(|w| (w[1] / w[0]).arg()).collect();
        if steps.iter().all(|s| s.abs() < PI / 3.0) {
            let total: f64 = steps.iter().sum();
            return Ok((total / (2.0 * PI)).round() as i64);
        }
        n *= 2;
    }
    Err(Error::NoConvergence("contour argument not resolved".into()))
}

/// Even eigenfunction of -∂² + V₀1_{[-R,R]} with eigenvalue (1+iε)².
pub fn solve_square_well_1d(eps: f64, rho: f64, c_const: f64) -> Result<SquareWellSolution1D> {
    let r = square_well_radius(eps, rho, c_const)?;
    let z = c(1.0, eps);
    let e = z * z;
    let eta = (2.0 / eps).ln() / (2.0 * r);
    let mut roots: Vec<Complex64> = Vec::new();
    for j in -4..4 {
        let start = c(1.0 + j as f64 * PI / r, -eta);
        if let Some(k) = newton_log_form(z, r, start) {
            if matching_residual(eps, r, k) <= 1e-12 && !roots.iter().any(|q| (q - k).norm() < 1e-9) {
                roots.push(k);
            }
        }
    }
    let k_in = roots
        .into_iter()
        .min_by(|a, b| (e - a * a).norm().partial_cmp(&(e - b * b).norm()).unwrap())
        .ok_or_else(|| Error::NoRoot(format!("eps = {eps}, R = {r}")))?;
    let winding = winding_number(|k| matching_entire(z, r, k), k_in, PI / (4.0 * r))?;
    if winding != 1 {
        return Err(Error::MultiRoot(winding));
    }
    Ok(SquareWellSolution1D {
        eps,
        rho,
        c: c_const,
        r,
        k_in,
        v0: e - k_in * k_in,
        e,
        residual: matching_residual(eps, r, k_in),
        winding,
        f_root: f_root(eps, r),
    })
}

fn f_root(eps: f64, r: f64) -> Option<Complex64> {
    let mut w = c(0.0, -eps);
    for _ in 0..100 {
        let f = mode_function_f(eps, r, w).ok()?;
        let step = f / mode_function_derivative(r, w);
        w -= step;
        if !(w.re.is_finite() && w.im.is_finite()) {
            return None;
        }
        if step.norm() <= 1e-14 * (eps + w.norm()) {
            return mode_function_f(eps, r, w).ok().filter(|v| v.norm() < 1e-10).map(|_| w);
        }
    }
    None
}

/// Tridiagonal solve with partial pivoting: sub[i] couples rows i+1 and i,
/// sup[i] couples rows i and i+1.
pub(crate) fn tridiagonal_solve(
    sub: &[Complex64],
    diag: &[Complex64],
    sup: &[Complex64],
    rhs: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = diag.len();
    let zero = c(0.0, 0.0);
    // banded U with two superdiagonals
    let mut d = diag.to_vec();
    let mut du = sup.to_vec();
    du.push(zero);
    let mut du2 = vec![zero; n];
    let mut dl = sub.to_vec();
    let mut b = rhs.to_vec();
    for i in 0..n.saturating_sub(1) {
        if d[i].norm() >= dl[i].norm() {
            if d[i].norm() == 0.0 {
                return Err(Error::Degenerate("singular tridiagonal system".into()));
            }
            let f = dl[i] / d[i];
            dl[i] = f;
            d[i + 1] -= f * du[i];
            b[i + 1] = b[i + 1] - f * b[i];
            du2[i] = zero;
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = f;
            let tmp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = tmp - f * d[i + 1];
            if i + 1 < n - 1 {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du[i + 1];
            }
            b.swap(i, i + 1);
            b[i + 1] = b[i + 1] - f * b[i];
        }
    }
    if d[n - 1].norm() == 0.0 {
        return Err(Error::Degenerate("singular tridiagonal system".into()));
    }
    let mut x = vec![zero; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        if i + 1 < n {
            acc -= du[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= du2[i] * x[i + 2];
        }
        x[i] = acc / d[i];
    }
    Ok(x)
}

/// -d²/dx² + V on the interior nodes of [lo, hi] with Dirichlet ends,
/// second-order stencil.
#[derive(Debug, Clone, PartialEq)]
pub struct GridOperator1D {
    pub lo: f64,
    pub hi: f64,
    pub h: f64,
    /// V at the interior nodes (the mean of both sides on a jump).
    pub potential: Vec<Complex64>,
}

impl GridOperator1D {
    /// `cells` equal cells on [lo, hi].
    pub fn new<F: Fn(f64) -> Complex64>(v: F, lo: f64, hi: f64, cells: usize) -> Result<Self> {
        if !(hi > lo) || cells < 3 {
            return Err(Error::Domain("grid operator needs hi > lo and at least 3 cells".into()));
        }
        let h = (hi - lo) / cells as f64;
        let nudge = 1e-9 * h;
        let potential = (1..cells)
            .map(|i| {
                let x = lo + i as f64 * h;
                0.5 * (v(x - nudge) + v(x + nudge))
            })
            .collect();
        Ok(GridOperator1D { lo, hi, h, potential })
    }

    pub fn from_potential(v: &Potential, lo: f64, hi: f64, cells: usize) -> Result<Self> {
        if v.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: v.dim(),
            });
        }
        GridOperator1D::new(|x| v.eval(&[x]).unwrap(), lo, hi, cells)
    }

    pub fn len(&self) -> usize {
        self.potential.len()
    }

    pub fn is_empty(&self) -> bool {
        self.potential.is_empty()
    }

    pub fn node(&self, i: usize) -> f64 {
        self.lo + (i + 1) as f64 * self.h
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        let inv = 1.0 / (self.h * self.h);
        (0..n)
            .map(|i| {
                let left = if i > 0 { x[i - 1] } else { c(0.0, 0.0) };
                let right = if i + 1 < n { x[i + 1] } else { c(0.0, 0.0) };
                (2.0 * x[i] - left - right) * inv + self.potential[i] * x[i]
            })
            .collect()
    }

    fn solve_shifted(&self, shift: Complex64, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.len();
        let inv = 1.0 / (self.h * self.h);
        let off = vec![c(-inv, 0.0); n - 1];
        let diag: Vec<Complex64> = self.potential.iter().map(|v| 2.0 * inv + v - shift).collect();
        tridiagonal_solve(&off, &diag, &off, rhs)
    }
}

fn hermitian_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Inverse iteration at a fixed shift, with the complex-symmetric Rayleigh
/// quotient xᵀHx / xᵀx as the eigenvalue estimate.
fn inverse_iteration(op: &GridOperator1D, shift: Complex64, start: Vec<Complex64>) -> Result<(Complex64, f64)> {
    let mut x = start;
    let mut lambda = shift;
    for it in 0..500 {
        let y = op.solve_shifted(shift, &x)?;
        let norm = hermitian_norm(&y);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NoConvergence("inverse iteration broke down".into()));
        }
        x = y.into_iter().map(|v| v / norm).collect();
        let hx = op.apply(&x);
        let num: Complex64 = x.iter().zip(&hx).map(|(a, b)| a * b).sum();
        let den: Complex64 = x.iter().map(|a| a * a).sum();
        let next = num / den;
        let done = (next - lambda).norm() <= 1e-14 * next.norm().max(1.0) && it > 2;
        lambda = next;
        if done {
            let res: Vec<Complex64> = hx.iter().zip(&x).map(|(a, b)| a - lambda * b).collect();
            return Ok((lambda, hermitian_norm(&res)));
        }
    }
    Err(Error::NoConvergence(format!("inverse iteration near {shift}")))
}

fn orthonormalize(block: &mut [Vec<Complex64>]) {
    for j in 0..block.len() {
        for k in 0..j {
            let (head, tail) = block.split_at_mut(j);
            let proj: Complex64 = head[k].iter().zip(tail[0].iter()).map(|(a, b)| a.conj() * b).sum();
            for (t, a) in tail[0].iter_mut().zip(head[k].iter()) {
                *t -= proj * a;
            }
        }
        let norm = hermitian_norm(&block[j]);
        block[j].iter_mut().for_each(|v| *v /= norm);
    }
}

/// Eigenvalues of the finite-difference operator nearest to `target`, with
/// residuals ‖(H-λ)v‖/‖v‖.
pub fn grid_eigensolve_1d(op: &GridOperator1D, target: Complex64, count: usize) -> Result<Vec<(Complex64, f64)>> {
    if op.h > 0.05 {
        return Err(Error::Resolution(format!("grid spacing {} exceeds 0.05", op.h)));
    }
    let n = op.len();
    let p = (count + 2).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut block: Vec<Vec<Complex64>> = (0..p)
        .map(|_| (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect();
    orthonormalize(&mut block);
    let mut ritz: Vec<Complex64> = Vec::new();
    for _ in 0..60 {
        for v in block.iter_mut() {
            *v = op.solve_shifted(target, v)?;
        }
        orthonormalize(&mut block);
        let hq: Vec<Vec<Complex64>> = block.iter().map(|v| op.apply(v)).collect();
        let small = DMatrix::from_fn(p, p, |i, j| block[i].iter().zip(&hq[j]).map(|(a, b)| a.conj() * b).sum());
        let vals = small
            .eigenvalues()
            .ok_or_else(|| Error::NoConvergence("Rayleigh-Ritz eigenvalues".into()))?;
        let mut next: Vec<Complex64> = vals.iter().cloned().collect();
        next.sort_by(|a, b| (a - target).norm().partial_cmp(&(b - target).norm()).unwrap());
        let settled = ritz.len() == next.len()
            && ritz
                .iter()
                .zip(&next)
                .take(count)
                .all(|(a, b)| (a - b).norm() <= 1e-10 * b.norm().max(1.0));
        ritz = next;
        if settled {
            break;
        }
    }
    let mut out: Vec<(Complex64, f64)> = Vec::new();
    for theta in ritz.into_iter().take(count) {
        let start: Vec<Complex64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let pair = inverse_iteration(op, theta, start)?;
        if !out.iter().any(|(l, _)| (l - pair.0).norm() <= 1e-9 * pair.0.norm().max(1.0)) {
            out.push(pair);
        }
    }
    out.sort_by(|a, b| (a.0 - target).norm().partial_cmp(&(b.0 - target).norm()).unwrap());
    Ok(out)
}

/// (4λ_{h/2} - λ_h)/3 from eigenvalues at two spacings.
pub fn richardson(coarse: Complex64, fine: Complex64) -> Complex64 {
    (4.0 * fine - coarse) / 3.0
}

/// Grid [-R - 20/ε', R + 20/ε'] with ±R on nodes and spacing at most h.
pub fn square_well_grid(sol: &SquareWellSolution1D, h: f64) -> Result<GridOperator1D> {
    let decay = sqrt_upper(sol.e).im;
    let half_cells = (sol.r / h).ceil() as usize;
    let step = sol.r / half_cells as f64;
    let pad = (20.0 / decay / step).ceil() as usize;
    let lo = -sol.r - pad as f64 * step;
    let v = sol.v0;
    let r = sol.r;
    GridOperator1D::new(
        move |x| if x.abs() <= r { v } else { c(0.0, 0.0) },
        lo,
        -lo,
        2 * (half_cells + pad),
    )
}

/// Eigenvalue of the grid operator nearest (1+iε)², Richardson-extrapolated
/// from spacings h and h/2.
pub fn square_well_grid_eigenvalue(sol: &SquareWellSolution1D, h: f64) -> Result<Complex64> {
    let coarse = grid_eigensolve_1d(&square_well_grid(sol, h)?, sol.e, 1)?[0].0;
    let fine = grid_eigensolve_1d(&square_well_grid(sol, h / 2.0)?, sol.e, 1)?[0].0;
    Ok(richardson(coarse, fine))
}

/// ‖(H - E)ψ‖₂ / ‖ψ‖₂ for the analytic eigenfunction sampled on the grid,
/// with the exact values used at the two end nodes.
pub fn residual_check_analytic_1d(sol: &SquareWellSolution1D, h: f64) -> Result<f64> {
    let op = square_well_grid(sol, h)?;
    let n = op.len();
    let psi: Vec<Complex64> = (0..n + 2).map(|i| sol.eigenfunction(op.lo + i as f64 * op.h)).collect();
    let inv = 1.0 / (op.h * op.h);
    let mut res2 = 0.0;
    let mut norm2 = 0.0;
    for i in 1..=n {
        let lap = (2.0 * psi[i] - psi[i - 1] - psi[i + 1]) * inv;
        let r = lap + op.potential[i - 1] * psi[i] - sol.e * psi[i];
        res2 += r.norm_sqr();
        norm2 += psi[i].norm_sqr();
    }
    Ok((res2 / norm2).sqrt())
}

/// -i z₂ sin(z₁R) + z₁ cos(z₁R).
pub fn radial_determinant(z1: Complex64, z2: Complex64, r: f64) -> Complex64 {
    -I * z2 * (z1 * r).sin() + z1 * (z1 * r).cos()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution3D {
    pub eps: f64,
    pub delta: f64,
    pub c: f64,
    pub r: f64,
    pub z1: Complex64,
    pub z2: Complex64,
    pub v0: Complex64,
    pub e: Complex64,
    pub residual: f64,
}

impl RadialSolution3D {
    pub fn potential(&self) -> Result<Potential> {
        Potential::radial_step_3d(self.v0, self.r)
    }

    pub fn norm(&self, q: f64) -> f64 {
        self.v0.norm() * (4.0 * PI / 3.0 * self.r.powi(3)).powf(1.0 / q)
    }
}

/// Radial step in three dimensions with eigenvalue z₂², Re z₁ = 1/2,
/// Im z₁ = ε and R ≡ 3π/2 (mod 2π) at or below C/(2ε).
pub fn construct_radial_3d(eps: f64, delta: f64) -> Result<RadialSolution3D> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::Range(format!("eps = {eps} must lie in (0, 0.1]")));
    }
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(Error::Range(format!("delta = {delta} must lie in (0, 0.5]")));
    }
    let c_const = -((1.0 + delta) * eps).ln();
    let raw = c_const / (2.0 * eps);
    let m = ((raw - 1.5 * PI) / (2.0 * PI)).floor().max(0.0);
    let r = 1.5 * PI + 2.0 * PI * m;
    let z1 = c(0.5, eps);
    let z2 = -I * z1 * (z1 * r).cos() / (z1 * r).sin();
    let residual = radial_determinant(z1, z2, r).norm();
    if z2.im < delta / 4.0 * eps {
        return Err(Error::Validation(format!(
            "Im z2 = {} below delta*eps/4 = {}",
            z2.im,
            delta * eps / 4.0
        )));
    }
    if residual > 1e-12 {
        return Err(Error::Validation(format!("determinant residual {residual:e}")));
    }
    Ok(RadialSolution3D {
        eps,
        delta,
        c: c_const,
        r,
        z1,
        z2,
        v0: z2 * z2 - z1 * z1,
        e: z2 * z2,
        residual,
    })
}

/// Eigenvalue nearest `target` of -u'' + V(r)u on [0, outer] with Dirichlet
/// ends, u = rψ. Spacing at most h with the step radius on a node.
pub fn radial_grid_eigensolve(v: &Potential, target: Complex64, h: f64, outer: f64) -> Result<(Complex64, f64)> {
    let (v0, r) = match v {
        Potential::RadialStep3D { v0, r } => (*v0, *r),
        other => return Err(Error::Unsupported(format!("radial solve for {}", other.label()))),
    };
    if h > 0.02 {
        return Err(Error::Resolution(format!("radial spacing {h} exceeds 0.02")));
    }
    let inner = (r / h).ceil() as usize;
    let step = r / inner as f64;
    let cells = (outer / step - 1e-9).ceil() as usize;
    let op = GridOperator1D::new(move |x| if x <= r { v0 } else { c(0.0, 0.0) }, 0.0, cells as f64 * step, cells)?;
    let mut found = grid_eigensolve_1d(&op, target, 1)?;
    Ok(found.remove(0))
}

/// Richardson-extrapolated radial eigenvalue near E = z₂².
pub fn radial_grid_eigenvalue(sol: &RadialSolution3D, h: f64) -> Result<Complex64> {
    let v = sol.potential()?;
    let outer = sol.r + 20.0 / sol.z2.im;
    let coarse = radial_grid_eigensolve(&v, sol.e, h, outer)?.0;
    let fine = radial_grid_eigensolve(&v, sol.e, h / 2.0, outer)?.0;
    Ok(richardson(coarse, fine))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_limits() {
        assert_eq!(mode_function_f(0.1, 10.0, c(0.0, 0.0)).unwrap(), c(0.0, 0.1));
        // deep in the upper half plane the exponential vanishes
        let w = c(0.3, 5.0);
        assert!((mode_function_f(0.1, 10.0, w).unwrap() - (c(0.0, 0.1) + w)).norm() < 1e-12);
        // 1 + e^{2i(ω-1)R} = 0 at ω = 1 + π/(2R)
        let r = 3.0;
        assert!(matches!(mode_function_f(0.1, r, c(1.0 + PI / (2.0 * r), 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn pivoted_tridiagonal_solve() {
        // zero leading diagonal forces a row swap
        let sub = vec![c(1.0, 0.0), c(2.0, -1.0)];
        let diag = vec![c(0.0, 0.0), c(1.0, 1.0), c(3.0, 0.0)];
        let sup = vec![c(2.0, 0.0), c(0.5, 0.0)];
        let x_true = vec![c(1.0, 2.0), c(-1.0, 0.5), c(0.25, -3.0)];
        let rhs: Vec<Complex64> = (0..3)
            .map(|i| {
                let mut acc = diag[i] * x_true[i];
                if i > 0 {
                    acc += sub[i - 1] * x_true[i - 1];
                }
                if i < 2 {
                    acc += sup[i] * x_true[i + 1];
                }
                acc
            })
            .collect();
        let x = tridiagonal_solve(&sub, &diag, &sup, &rhs).unwrap();
        for (a, b) in x.iter().zip(&x_true) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn determinant_special_values() {
        let z1 = c(0.5, 0.1);
        assert_eq!(radial_determinant(z1, c(0.3, 0.2), 0.0), z1);
    }
}
