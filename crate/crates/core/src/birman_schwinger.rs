//! Nyström discretisation of |V|^{1/2}(-Δ-z)^{-1}|V|^{1/2} on uniform grids,
//! its operator norm, the weighted Schur test and the weighted resolvent
//! f(-Δ-z)^{-1}g.
//!
//! On a uniform grid the kernel matrix is block Toeplitz, so products are
//! evaluated by zero-padded FFT convolution. A dense matrix is assembled only
//! for small node counts.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{davies_nath_f, BoundCertificate, CertificateMeta};
use crate::error::{Error, Result};
use crate::fft::FftNd;
use crate::kernels::{free_resolvent_kernel, hankel0_h1, SpectralPoint};
use crate::potential::{GridSpec, Potential};
use crate::quadrature::{integrate, Tolerance};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Largest node count for which the dense matrix is assembled.
pub const DENSE_LIMIT: usize = 2000;
/// Largest node count for the full SVD cross-check.
pub const SVD_LIMIT: usize = 500;

const NORM_TOL: f64 = 1e-8;
const MAX_MATVECS: usize = 10_000;
const KRYLOV_DIM: usize = 20;

/// Weighted kernel w·K(|x_j - x_k|) on all lattice offsets of a grid, with the
/// self-interaction replaced by the integral of K over the ball of volume w.
struct KernelLattice {
    points: Vec<usize>,
    fft: FftNd,
    table: Vec<Complex64>,
    table_hat: Vec<Complex64>,
}

impl KernelLattice {
    fn new(sp: &SpectralPoint, grid: &GridSpec) -> Result<Self> {
        let d = grid.dim();
        let points = grid.points().to_vec();
        let padded: Vec<usize> = points.iter().map(|n| 2 * n).collect();
        let fft = FftNd::new(&padded);
        let w = grid.cell_volume();
        let h: Vec<f64> = (0..d).map(|a| grid.spacing(a)).collect();
        let diag = w * self_interaction(sp, w)?;
        let mut table = vec![ZERO; fft.len()];
        for (flat, slot) in table.iter_mut().enumerate() {
            let mut rest = flat;
            let mut r2 = 0.0;
            let mut wrap = false;
            for axis in (0..d).rev() {
                let m = padded[axis];
                let p = rest % m;
                rest /= m;
                let n = points[axis];
                let off = if p < n {
                    p as f64
                } else if p > n {
                    p as f64 - m as f64
                } else {
                    wrap = true;
                    0.0
                };
                r2 += (off * h[axis]).powi(2);
            }
            if wrap {
                continue;
            }
            *slot = if r2 == 0.0 {
                diag
            } else {
                w * free_resolvent_kernel(sp, r2.sqrt())?
            };
        }
        let mut table_hat = table.clone();
        fft.forward(&mut table_hat);
        Ok(KernelLattice {
            points,
            fft,
            table,
            table_hat,
        })
    }

    fn grid_len(&self) -> usize {
        self.points.iter().product()
    }

    fn padded_index(&self, flat: usize) -> usize {
        let shape = self.fft.shape();
        let mut rest = flat;
        let mut out = 0;
        let mut stride = 1;
        for axis in (0..self.points.len()).rev() {
            let n = self.points[axis];
            out += (rest % n) * stride;
            rest /= n;
            stride *= shape[axis];
        }
        out
    }

    /// Table entry for the offset between two grid nodes.
    fn entry(&self, a: usize, b: usize) -> Complex64 {
        let shape = self.fft.shape();
        let (mut ra, mut rb) = (a, b);
        let mut out = 0;
        let mut stride = 1;
        for axis in (0..self.points.len()).rev() {
            let n = self.points[axis];
            let m = shape[axis];
            let off = (ra % n) as isize - (rb % n) as isize;
            ra /= n;
            rb /= n;
            out += off.rem_euclid(m as isize) as usize * stride;
            stride *= m;
        }
        self.table[out]
    }

    /// y_j = Σ_k T(x_j - x_k) x_k over the whole grid, with the table given
    /// in Fourier space.
    fn convolve_with(&self, hat: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid_len();
        let mut buf = vec![ZERO; self.fft.len()];
        for (k, v) in x.iter().enumerate() {
            buf[self.padded_index(k)] = *v;
        }
        self.fft.forward(&mut buf);
        buf.iter_mut().zip(hat).for_each(|(b, t)| *b *= t);
        self.fft.inverse(&mut buf);
        (0..n).map(|k| buf[self.padded_index(k)]).collect()
    }

    fn convolve(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.convolve_with(&self.table_hat, x)
    }

    fn abs_hat(&self) -> Vec<Complex64> {
        let mut hat: Vec<Complex64> = self.table.iter().map(|t| Complex64::new(t.norm(), 0.0)).collect();
        self.fft.forward(&mut hat);
        hat
    }
}

/// Mean of K over the ball of volume `w` centred at the origin.
fn self_interaction(sp: &SpectralPoint, w: f64) -> Result<Complex64> {
    let kappa = sp.kappa;
    match sp.d {
        1 => Ok(I / (2.0 * kappa)),
        2 => {
            let a = (w / PI).sqrt();
            let tol = Tolerance::rel(1e-12).with_abs(1e-300);
            let fail = std::cell::RefCell::new(None);
            let q = integrate(
                |r: f64| {
                    if r == 0.0 {
                        return ZERO;
                    }
                    match hankel0_h1(kappa * r) {
                        Ok(h) => 0.25 * I * h * 2.0 * PI * r,
                        Err(e) => {
                            *fail.borrow_mut() = Some(e);
                            ZERO
                        }
                    }
                },
                0.0,
                a,
                tol,
            );
            if let Some(e) = fail.into_inner() {
                return Err(e);
            }
            Ok(q.value / w)
        }
        3 => {
            let a = (3.0 * w / (4.0 * PI)).cbrt();
            // ∫₀^a r e^{iκr} dr
            let inner = (I * kappa * a).exp() * (-I * a / kappa + 1.0 / (kappa * kappa)) - 1.0 / (kappa * kappa);
            Ok(inner / w)
        }
        d => Err(Error::Unsupported(format!("dimension {d}"))),
    }
}

/// Discretised Birman–Schwinger operator on the nodes where V ≠ 0.
pub struct BSDiscretization {
    pub d: usize,
    pub sp: SpectralPoint,
    pub grid: GridSpec,
    /// Flat grid indices of the retained nodes.
    pub active: Vec<usize>,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    /// |V|^{1/2} at the retained nodes.
    pub sqrt_v: Vec<f64>,
    /// Dense matrix when the node count is at most `DENSE_LIMIT`.
    pub matrix: Option<DMatrix<Complex64>>,
    lattice: KernelLattice,
}

impl fmt::Debug for BSDiscretization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BSDiscretization")
            .field("d", &self.d)
            .field("sp", &self.sp)
            .field("grid", &self.grid)
            .field("nodes", &self.active.len())
            .field("dense", &self.matrix.is_some())
            .finish()
    }
}

fn check_grid(sp: &SpectralPoint, grid: &GridSpec) -> Result<()> {
    if sp.on_positive_axis() || sp.kappa.im <= 0.0 {
        return Err(Error::Domain(format!("E = {} lies on [0, inf)", sp.e)));
    }
    if grid.dim() != sp.d {
        return Err(Error::DimensionMismatch {
            expected: sp.d,
            got: grid.dim(),
        });
    }
    let limit = 0.25 / sp.kappa.im;
    if grid.max_spacing() > limit {
        return Err(Error::Resolution(format!(
            "grid spacing {} exceeds 1/(4 Im sqrt z) = {limit}",
            grid.max_spacing()
        )));
    }
    Ok(())
}

pub fn discretize_bs(v: &Potential, sp: &SpectralPoint, grid: &GridSpec) -> Result<BSDiscretization> {
    if v.dim() != grid.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: grid.dim(),
        });
    }
    check_grid(sp, grid)?;
    let lattice = KernelLattice::new(sp, grid)?;
    let w = grid.cell_volume();
    let mut active = Vec::new();
    let mut nodes = Vec::new();
    let mut sqrt_v = Vec::new();
    for k in 0..grid.len() {
        let x = grid.point(k);
        let a = v.eval(&x)?.norm();
        if a > 0.0 {
            active.push(k);
            nodes.push(x);
            sqrt_v.push(a.sqrt());
        }
    }
    let n = active.len();
    let matrix = (n <= DENSE_LIMIT).then(|| {
        DMatrix::from_fn(n, n, |j, k| sqrt_v[j] * lattice.entry(active[j], active[k]) * sqrt_v[k])
    });
    Ok(BSDiscretization {
        d: grid.dim(),
        sp: *sp,
        grid: grid.clone(),
        weights: vec![w; n],
        active,
        nodes,
        sqrt_v,
        matrix,
        lattice,
    })
}

impl BSDiscretization {
    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        if let Some(m) = &self.matrix {
            let v = nalgebra::DVector::from_column_slice(x);
            return (m * v).as_slice().to_vec();
        }
        let mut full = vec![ZERO; self.grid.len()];
        for ((k, s), xv) in self.active.iter().zip(&self.sqrt_v).zip(x) {
            full[*k] = s * xv;
        }
        let y = self.lattice.convolve(&full);
        self.active.iter().zip(&self.sqrt_v).map(|(k, s)| s * y[*k]).collect()
    }

    /// B* y = conj(B conj y), since B is symmetric.
    pub fn apply_adjoint(&self, y: &[Complex64]) -> Vec<Complex64> {
        let conj: Vec<Complex64> = y.iter().map(|v| v.conj()).collect();
        self.apply(&conj).into_iter().map(|v| v.conj()).collect()
    }

    /// The dense matrix, assembled on demand for node counts above `DENSE_LIMIT`.
    pub fn dense(&self) -> DMatrix<Complex64> {
        match &self.matrix {
            Some(m) => m.clone(),
            None => {
                let n = self.len();
                DMatrix::from_fn(n, n, |j, k| {
                    self.sqrt_v[j] * self.lattice.entry(self.active[j], self.active[k]) * self.sqrt_v[k]
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    PowerIteration,
    FullSvd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: NormMethod,
    /// Products with the Gram operator.
    pub iterations: usize,
    /// ‖Gx - σ²x‖ / σ for the final unit vector x.
    pub residual: f64,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm2(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest eigenvalue of a Hermitian positive semidefinite operator by power
/// iteration accelerated with restarted Krylov (Lanczos) projections.
fn top_gram_eigenvalue<G: Fn(&[Complex64]) -> Vec<Complex64>>(gram: G, n: usize) -> Result<NormEstimate> {
    if n == 0 {
        return Ok(NormEstimate {
            value: 0.0,
            method: NormMethod::PowerIteration,
            iterations: 0,
            residual: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xb5);
    let mut x: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let nx = norm2(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut matvecs = 0;
    let m = KRYLOV_DIM.min(n);
    loop {
        let mut basis: Vec<Vec<Complex64>> = vec![x.clone()];
        let mut images: Vec<Vec<Complex64>> = Vec::new();
        for j in 0..m {
            let gv = gram(&basis[j]);
            matvecs += 1;
            images.push(gv.clone());
            if j + 1 == m {
                break;
            }
            let mut w = gv;
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    w.iter_mut().zip(b).for_each(|(wv, bv)| *wv -= c * bv);
                }
            }
            let beta = norm2(&w);
            if beta <= 1e-13 * norm2(&images[j]).max(f64::MIN_POSITIVE) {
                break;
            }
            w.iter_mut().for_each(|v| *v /= beta);
            basis.push(w);
        }
        let k = images.len();
        let small = DMatrix::from_fn(k, k, |i, j| {
            let a = dot(&basis[i], &images[j]);
            let b = dot(&basis[j], &images[i]).conj();
            0.5 * (a + b)
        });
        let eig = small.symmetric_eigen();
        let (top, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let y = eig.eigenvectors.column(top);
        let mut next = vec![ZERO; n];
        let mut gx = vec![ZERO; n];
        for j in 0..k {
            for i in 0..n {
                next[i] += y[j] * basis[j][i];
                gx[i] += y[j] * images[j][i];
            }
        }
        let scale = norm2(&next);
        next.iter_mut().for_each(|v| *v /= scale);
        gx.iter_mut().for_each(|v| *v /= scale);
        let theta = theta.max(0.0);
        let res: f64 = gx
            .iter()
            .zip(&next)
            .map(|(g, v)| (g - theta * v).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if theta == 0.0 && res <= 1e-300 {
            return Ok(NormEstimate {
                value: 0.0,
                method: NormMethod::PowerIteration,
                iterations: matvecs,
                residual: 0.0,
            });
        }
        if res <= NORM_TOL * theta || k < m && res <= 1e-6 * theta {
            let sigma = theta.sqrt();
            return Ok(NormEstimate {
                value: sigma,
                method: NormMethod::PowerIteration,
                iterations: matvecs,
                residual: res / sigma,
            });
        }
        if matvecs >= MAX_MATVECS {
            return Err(Error::NoConvergence(format!(
                "operator norm after {matvecs} products, residual {res:e}"
            )));
        }
        x = next;
    }
}

/// Largest singular value of B.
pub fn operator_norm(b: &BSDiscretization) -> Result<NormEstimate> {
    top_gram_eigenvalue(|x| b.apply_adjoint(&b.apply(x)), b.len())
}

/// Largest singular value of a dense matrix by power iteration.
pub fn matrix_norm(m: &DMatrix<Complex64>) -> Result<NormEstimate> {
    let mh = m.adjoint();
    top_gram_eigenvalue(
        |x| {
            let v = nalgebra::DVector::from_column_slice(x);
            (&mh * (m * v)).as_slice().to_vec()
        },
        m.ncols(),
    )
}

/// Largest singular value from a full SVD, for node counts up to `SVD_LIMIT`.
pub fn operator_norm_svd(b: &BSDiscretization) -> Result<NormEstimate> {
    if b.len() > SVD_LIMIT {
        return Err(Error::Unsupported(format!("full SVD above {SVD_LIMIT} nodes, got {}", b.len())));
    }
    let value = if b.is_empty() {
        0.0
    } else {
        b.dense().singular_values().iter().cloned().fold(0.0, f64::max)
    };
    Ok(NormEstimate {
        value,
        method: NormMethod::FullSvd,
        iterations: 0,
        residual: 0.0,
    })
}

/// Schur test with weights |V(x)|^{q/2}/|V(y)|^{q/2}:
/// (sup_j Σ_k |B_jk| ρ_jk^{-1})^{1/2} (sup_k Σ_j |B_jk| ρ_jk)^{1/2}.
pub fn schur_bound(b: &BSDiscretization, v: &Potential, q: f64) -> Result<f64> {
    if v.dim() != b.d {
        return Err(Error::DimensionMismatch {
            expected: b.d,
            got: v.dim(),
        });
    }
    if b.is_empty() {
        return Ok(0.0);
    }
    // the node values must come from the same potential
    for (x, s) in b.nodes.iter().zip(&b.sqrt_v) {
        let a = v.eval(x)?.norm();
        if a == 0.0 {
            return Err(Error::Degenerate(format!("V vanishes at the support node {x:?}")));
        }
        if (a.sqrt() - s).abs() > 1e-12 * s {
            return Err(Error::Domain("potential differs from the discretised one".into()));
        }
    }
    let hat = b.lattice.abs_hat();
    let mut full = vec![ZERO; b.grid.len()];
    for (k, s) in b.active.iter().zip(&b.sqrt_v) {
        full[*k] = Complex64::new(s.powf(1.0 + q), 0.0);
    }
    let sums = b.lattice.convolve_with(&hat, &full);
    let row = b
        .active
        .iter()
        .zip(&b.sqrt_v)
        .map(|(k, s)| s.powf(1.0 - q) * sums[*k].re)
        .fold(0.0, f64::max);
    // |B| is symmetric, so the column supremum equals the row supremum
    Ok(row)
}

/// Relative difference between ‖BS(V, z)‖ and ‖BS(λ²V(λ·), λ²z)‖ with the
/// grid mapped by x → x/λ.
pub fn verify_bs_scaling(v: &Potential, z: Complex64, lam: f64, grid: &GridSpec) -> Result<f64> {
    if !(lam > 0.0) {
        return Err(Error::Domain(format!("lambda = {lam} must be positive")));
    }
    let d = v.dim();
    let n1 = operator_norm(&discretize_bs(v, &SpectralPoint::new(z, d)?, grid)?)?.value;
    let scaled = v.rescaled(Complex64::new(lam * lam, 0.0), 1.0 / lam)?;
    let half: Vec<f64> = grid.half_extent().iter().map(|l| l / lam).collect();
    let grid2 = GridSpec::new(half, grid.points().to_vec())?;
    let n2 = operator_norm(&discretize_bs(&scaled, &SpectralPoint::new(z * lam * lam, d)?, &grid2)?)?.value;
    if n1 == 0.0 {
        return Ok(if n2 == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok((n1 - n2).abs() / n1)
}

/// Points per axis for automatic grids.
fn axis_cap(d: usize) -> usize {
    match d {
        1 => 4001,
        2 => 161,
        _ => 41,
    }
}

/// Grid over the support box of V (or the cube of half side 4/Im √z for
/// unbounded support) with about ten points per wavelength, capped per
/// dimension.
pub fn default_bs_grid(v: &Potential, sp: &SpectralPoint) -> Result<GridSpec> {
    let d = v.dim();
    let half: Vec<f64> = match v.bounding_box() {
        Some((lo, hi)) => lo.iter().zip(&hi).map(|(a, b)| a.abs().max(b.abs())).collect(),
        None => vec![4.0 / sp.kappa.im; d],
    };
    let target = (0.25 / sp.kappa.im).min(0.6 / sp.kappa.norm().max(1e-12));
    let points = half
        .iter()
        .map(|l| ((2.0 * l / target).ceil() as usize + 1).clamp(2, axis_cap(d)))
        .collect();
    GridSpec::new(half, points)
}

/// ‖BS(V, z)‖ ≤ C |z|^{d/(2q)-1} F_V^q(Im √z).
pub fn cert_bs_bound(v: &Potential, z: Complex64, q: f64, c: f64) -> Result<BoundCertificate> {
    let d = v.dim();
    let sp = SpectralPoint::new(z, d)?;
    let grid = default_bs_grid(v, &sp)?;
    cert_bs_bound_on(v, z, q, c, &grid)
}

pub fn cert_bs_bound_on(v: &Potential, z: Complex64, q: f64, c: f64, grid: &GridSpec) -> Result<BoundCertificate> {
    let d = v.dim();
    let sp = SpectralPoint::new(z, d)?;
    let lhs = operator_norm(&discretize_bs(v, &sp, grid)?)?.value;
    let rhs = c * z.norm().powf(d as f64 / (2.0 * q) - 1.0) * davies_nath_f(v, q, sp.kappa.im)?;
    let meta = CertificateMeta {
        eps: None,
        q,
        d,
        potential: v.label(),
        z,
    };
    Ok(BoundCertificate::new("bs", lhs, rhs, c, meta))
}

/// Operator norm of f (-Δ-z)^{-1} g discretised on all grid nodes.
pub fn weighted_resolvent_norm(f: &Potential, g: &Potential, z: Complex64, grid: &GridSpec) -> Result<f64> {
    let d = grid.dim();
    for p in [f, g] {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let sp = SpectralPoint::new(z, d)?;
    check_grid(&sp, grid)?;
    let lattice = KernelLattice::new(&sp, grid)?;
    let fv: Vec<Complex64> = (0..grid.len()).map(|k| f.eval(&grid.point(k))).collect::<Result<_>>()?;
    let gv: Vec<Complex64> = (0..grid.len()).map(|k| g.eval(&grid.point(k))).collect::<Result<_>>()?;
    if fv.iter().all(|v| v.norm() == 0.0) || gv.iter().all(|v| v.norm() == 0.0) {
        return Ok(0.0);
    }
    let apply = |x: &[Complex64]| -> Vec<Complex64> {
        let gx: Vec<Complex64> = x.iter().zip(&gv).map(|(a, b)| a * b).collect();
        lattice.convolve(&gx).into_iter().zip(&fv).map(|(a, b)| a * b).collect()
    };
    let apply_adjoint = |y: &[Complex64]| -> Vec<Complex64> {
        let fy: Vec<Complex64> = y.iter().zip(&fv).map(|(a, b)| a * b.conj()).collect();
        let c: Vec<Complex64> = fy.iter().map(|v| v.conj()).collect();
        lattice
            .convolve(&c)
            .into_iter()
            .zip(&gv)
            .map(|(a, b)| a.conj() * b.conj())
            .collect()
    };
    Ok(top_gram_eigenvalue(|x| apply_adjoint(&apply(x)), grid.len())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_norm() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 0.0),
        ]));
        let est = matrix_norm(&m).unwrap();
        assert!((est.value - 3.0).abs() < 1e-12, "{}", est.value);
        assert!(est.residual <= 1e-8 * est.value);
        let zero = DMatrix::<Complex64>::zeros(4, 4);
        assert_eq!(matrix_norm(&zero).unwrap().value, 0.0);
    }

    #[test]
    fn self_interaction_limits() {
        // κ = i: ∫_{|x|<a} e^{-r}/(4πr) dx = 1 - e^{-a}(1 + a), about a²/2
        let sp = SpectralPoint::new(Complex64::new(-1.0, 0.0), 3).unwrap();
        for &w in &[1e-6, 0.1, 2.0] {
            let a: f64 = (3.0 * w / (4.0 * PI)).cbrt();
            let k = self_interaction(&sp, w).unwrap();
            let exact = (1.0 - (-a).exp() * (1.0 + a)) / w;
            assert!((k - exact).norm() < 1e-10 * exact, "{k} vs {exact}");
        }
        // d = 2: mean of -(1/2π) ln r + const; compare against the closed form
        // i π a H₁(κa)/(2κ w) - 1/(κ² w) evaluated through the K₀ relation at κ = i
        let sp2 = SpectralPoint::new(Complex64::new(-1.0, 0.0), 2).unwrap();
        let w2: f64 = 0.04;
        let a2 = (w2 / PI).sqrt();
        let k2 = self_interaction(&sp2, w2).unwrap();
        // ∫₀^a K₀(r) r dr / a² · 2 = (1 - a K₁(a))·2/a², with K₁ from its series
        let k1 = |x: f64| {
            let euler = 0.577_215_664_901_532_9;
            1.0 / x + 0.5 * x * ((x / 2.0).ln() + euler - 0.5) + x.powi(3) / 16.0 * ((x / 2.0).ln() + euler - 1.25)
        };
        let exact = (1.0 - a2 * k1(a2)) / (PI * a2 * a2);
        assert!((k2.re - exact).abs() < 1e-5 * exact && k2.im.abs() < 1e-12, "{k2} vs {exact}");
    }
}
