//! The exponentially weighted functional F_V^q and the eigenvalue bounds
//! built from it, each evaluated as a certificate lhs ≤ rhs.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::sqrt_upper;
use crate::potential::Potential;

/// Lower end of the admissible q window for the higher-dimensional weighted certificate when d = 2.
pub const Q_FLOOR_SLACK: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateMeta {
    pub eps: Option<f64>,
    pub q: f64,
    pub d: usize,
    pub potential: String,
    pub z: Complex64,
}

/// One evaluated inequality lhs ≤ rhs. `constant` is the constant already
/// folded into `rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub ratio: f64,
    pub satisfied: bool,
    pub meta: CertificateMeta,
}

impl BoundCertificate {
    pub fn new(name: &str, lhs: f64, rhs: f64, constant: f64, meta: CertificateMeta) -> Self {
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        BoundCertificate {
            name: name.to_string(),
            lhs,
            rhs,
            constant,
            ratio,
            satisfied: lhs <= rhs,
            meta,
        }
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.meta.eps = Some(eps);
        self
    }

    /// rhs with the constant divided out.
    pub fn unit_rhs(&self) -> f64 {
        if self.constant == 0.0 {
            0.0
        } else {
            self.rhs / self.constant
        }
    }

    /// The same inequality evaluated with another constant.
    pub fn with_constant(&self, constant: f64) -> Self {
        let unit = self.unit_rhs();
        BoundCertificate::new(&self.name, self.lhs, constant * unit, constant, self.meta.clone())
    }

    pub const CSV_HEADER: &'static str = "name,eps,q,d,lhs,rhs,constant,ratio,satisfied";

    pub fn csv_row(&self) -> String {
        let eps = self.meta.eps.map(|e| format!("{e:e}")).unwrap_or_default();
        format!(
            "{},{},{:e},{},{:e},{:e},{:e},{:e},{}",
            self.name, eps, self.meta.q, self.meta.d, self.lhs, self.rhs, self.constant, self.ratio, self.satisfied
        )
    }
}

/// β_q with β_q^{-1} = 1 - (d+1)/(2q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaQ {
    pub q: f64,
    pub d: usize,
    pub beta: f64,
}

impl BetaQ {
    pub fn new(q: f64, d: usize) -> Result<Self> {
        let crit = (d as f64 + 1.0) / 2.0;
        if !(q > crit) {
            return Err(Error::Range(format!("q = {q} must exceed (d+1)/2 = {crit}")));
        }
        Ok(BetaQ {
            q,
            d,
            beta: 1.0 / (1.0 - crit / q),
        })
    }
}

fn meta(v: &Potential, z: Complex64, q: f64) -> CertificateMeta {
    CertificateMeta {
        eps: None,
        q,
        d: v.dim(),
        potential: v.label(),
        z,
    }
}

/// Box over which translates are searched.
fn search_box(v: &Potential) -> Result<(Vec<f64>, Vec<f64>)> {
    if let Some(b) = v.bounding_box() {
        return Ok(b);
    }
    match v {
        Potential::Perturbed { w, .. } => {
            let hi = w.grid.half_extent().to_vec();
            Ok((hi.iter().map(|h| -h).collect(), hi))
        }
        other => Err(Error::Unsupported(format!("translate search for {}", other.label()))),
    }
}

/// sup over y of g(y): exact at y = 0 for centrally unimodal |V|, otherwise
/// a 9^d lattice scan of the search box followed by coordinate descent.
pub fn sup_over_translates<G>(v: &Potential, g: G) -> Result<(f64, Vec<f64>)>
where
    G: Fn(&[f64]) -> Result<f64> + Sync,
{
    let d = v.dim();
    if v.is_centrally_unimodal() {
        let y = vec![0.0; d];
        return Ok((g(&y)?, y));
    }
    let (lo, hi) = search_box(v)?;
    let per_axis = 9usize;
    let total = per_axis.pow(d as u32);
    let lattice: Vec<Vec<f64>> = (0..total)
        .map(|k| {
            let mut m = k;
            (0..d)
                .map(|a| {
                    let i = m % per_axis;
                    m /= per_axis;
                    lo[a] + (hi[a] - lo[a]) * i as f64 / (per_axis - 1) as f64
                })
                .collect()
        })
        .collect();
    let values = lattice.par_iter().map(|y| g(y)).collect::<Result<Vec<f64>>>()?;
    let (mut best_k, mut best) = (0, f64::NEG_INFINITY);
    for (k, val) in values.iter().enumerate() {
        if *val > best {
            best = *val;
            best_k = k;
        }
    }
    let mut y = lattice[best_k].clone();
    let mut step: Vec<f64> = (0..d).map(|a| (hi[a] - lo[a]) / (per_axis - 1) as f64).collect();
    while step.iter().cloned().fold(0.0, f64::max) > 1e-4 {
        let mut moved = false;
        for a in 0..d {
            for sign in [1.0, -1.0] {
                let mut trial = y.clone();
                trial[a] += sign * step[a];
                let val = g(&trial)?;
                if val > best {
                    best = val;
                    y = trial;
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            step.iter_mut().for_each(|s| *s *= 0.5);
        }
    }
    Ok((best, y))
}

/// F_V^q(s) = (sup_y ∫ |V(x)|^q e^{-s|x-y|} dx)^{1/q}.
pub fn davies_nath_f(v: &Potential, q: f64, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("decay rate s = {s} must be nonnegative")));
    }
    if s == 0.0 {
        return v.lq_norm(q);
    }
    let (sup, _) = sup_over_translates(v, |y| v.exp_weighted_integral(q, s, y))?;
    Ok(sup.powf(1.0 / q))
}

/// Distance from z to [0, ∞).
pub fn dist_to_ray(z: Complex64) -> f64 {
    if z.re <= 0.0 {
        z.norm()
    } else {
        z.im.abs()
    }
}

fn require_dim(v: &Potential, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} in dimension {}", v.dim())))
    }
}

/// |z|^{1/2} ≤ ½ ‖V‖₁ in one dimension.
pub fn cert_aad_1d(v: &Potential, z: Complex64) -> Result<BoundCertificate> {
    require_dim(v, v.dim() == 1, "the L1 bound")?;
    let lhs = z.norm().sqrt();
    let rhs = 0.5 * v.lq_norm(1.0)?;
    Ok(BoundCertificate::new("aad", lhs, rhs, 0.5, meta(v, z, 1.0)))
}

/// |z|^{1/2} ≤ ½ F_V^1(Im √z) in one dimension.
pub fn cert_davies_nath_1d(v: &Potential, z: Complex64) -> Result<BoundCertificate> {
    require_dim(v, v.dim() == 1, "the 1D exponentially weighted bound")?;
    let lhs = z.norm().sqrt();
    let rhs = 0.5 * davies_nath_f(v, 1.0, sqrt_upper(z).im)?;
    Ok(BoundCertificate::new("davies_nath", lhs, rhs, 0.5, meta(v, z, 1.0)))
}

/// |z|^{q-d/2} ≤ C (F_V^q(Im √z))^q for q ∈ [max(d/2, 1+δ₀), (d+1)/2].
pub fn cert_theorem1(v: &Potential, z: Complex64, q: f64, c: f64) -> Result<BoundCertificate> {
    let d = v.dim();
    require_dim(v, d >= 2, "the higher-dimensional bound")?;
    let df = d as f64;
    let lo = (df / 2.0).max(1.0 + Q_FLOOR_SLACK);
    let hi = (df + 1.0) / 2.0;
    if !(q >= lo && q <= hi) {
        return Err(Error::Range(format!("q = {q} outside [{lo}, {hi}]")));
    }
    let lhs = z.norm().powf(q - df / 2.0);
    let rhs = c * davies_nath_f(v, q, sqrt_upper(z).im)?.powf(q);
    Ok(BoundCertificate::new("theorem1", lhs, rhs, c, meta(v, z, q)))
}

/// Exponent d(2/(d+1) - 1/q) carried by Im √z in the Hölder corollary.
pub fn corollary1_exponent(d: usize, q: f64) -> f64 {
    let df = d as f64;
    df * (2.0 / (df + 1.0) - 1.0 / q)
}

/// |z|^{1/(d+1)} (Im √z)^{d(2/(d+1)-1/q)} ≤ C ‖V‖_q for q ≥ (d+1)/2.
pub fn cert_corollary1(v: &Potential, z: Complex64, q: f64, c: f64) -> Result<BoundCertificate> {
    let d = v.dim();
    require_dim(v, d >= 2, "the Hölder corollary")?;
    check_long_range(d, q, false)?;
    let lhs = z.norm().powf(1.0 / (d as f64 + 1.0)) * sqrt_upper(z).im.powf(corollary1_exponent(d, q));
    let rhs = c * v.lq_norm(q)?;
    Ok(BoundCertificate::new("corollary1", lhs, rhs, c, meta(v, z, q)))
}

/// |z|^{1/(2q)} dist(z, [0,∞))^{1-(d+1)/(2q)} ≤ C ‖V‖_q for q ≥ (d+1)/2.
pub fn cert_frank(v: &Potential, z: Complex64, q: f64, c: f64) -> Result<BoundCertificate> {
    let d = v.dim();
    check_long_range(d, q, false)?;
    let lhs = z.norm().powf(1.0 / (2.0 * q)) * dist_to_ray(z).powf(1.0 - (d as f64 + 1.0) / (2.0 * q));
    let rhs = c * v.lq_norm(q)?;
    Ok(BoundCertificate::new("frank", lhs, rhs, c, meta(v, z, q)))
}

fn check_long_range(d: usize, q: f64, strict: bool) -> Result<()> {
    let crit = (d as f64 + 1.0) / 2.0;
    let ok = if strict { q > crit } else { q >= crit };
    if ok {
        Ok(())
    } else {
        Err(Error::Range(format!("q = {q} below (d+1)/2 = {crit}")))
    }
}

/// M = max(0, (d+1)ln‖V‖_q - 2dβ_q^{-1} ln(β_q Im √z) - ln|z| + (d+1) ln(2C_d)).
pub fn corollary2_m(v: &Potential, q: f64, z: Complex64, cd: f64) -> Result<f64> {
    let d = v.dim();
    let beta = BetaQ::new(q, d)?;
    let s = sqrt_upper(z).im;
    if !(s > 0.0) {
        return Err(Error::Domain("Im √z must be positive".into()));
    }
    Ok(corollary2_m_from_parts(d, beta, v.lq_norm(q)?, z.norm(), s, cd))
}

/// The M formula from its scalar ingredients.
pub fn corollary2_m_from_parts(d: usize, beta: BetaQ, norm_q: f64, abs_z: f64, im_sqrt: f64, cd: f64) -> f64 {
    let df = d as f64;
    let m = (df + 1.0) * norm_q.ln() - 2.0 * df / beta.beta * (beta.beta * im_sqrt).ln() - abs_z.ln()
        + (df + 1.0) * (2.0 * cd).ln();
    m.max(0.0)
}

/// The pieces of the local bound: the best ball norm, the Hölder tail term
/// e^{-M/(d+1)}(β_q Im √z)^{-d(2/(d+1)-1/q)}‖V‖_q, M and the ball radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalSplit {
    pub m: f64,
    pub radius: f64,
    pub local: f64,
    pub center: Vec<f64>,
    pub tail: f64,
}

pub fn corollary2_split(v: &Potential, q: f64, z: Complex64, cd: f64) -> Result<LocalSplit> {
    let d = v.dim();
    let beta = BetaQ::new(q, d)?;
    let m = corollary2_m(v, q, z, cd)?;
    let s = sqrt_upper(z).im;
    let radius = m / s;
    let p = (d as f64 + 1.0) / 2.0;
    let (local, center) = if radius > 0.0 {
        sup_over_translates(v, |y| v.local_ball_norm(p, y, radius))?
    } else {
        (0.0, vec![0.0; d])
    };
    let tail = (-m / (d as f64 + 1.0)).exp() * (beta.beta * s).powf(-corollary1_exponent(d, q)) * v.lq_norm(q)?;
    Ok(LocalSplit {
        m,
        radius,
        local,
        center,
        tail,
    })
}

/// |z|^{1/(d+1)} ≤ 2C_d sup_y ‖V‖_{L^{(d+1)/2}(B(y, M/Im √z))}.
pub fn cert_corollary2(v: &Potential, q: f64, z: Complex64, cd: f64) -> Result<BoundCertificate> {
    let split = corollary2_split(v, q, z, cd)?;
    let lhs = z.norm().powf(1.0 / (v.dim() as f64 + 1.0));
    Ok(BoundCertificate::new(
        "corollary2",
        lhs,
        2.0 * cd * split.local,
        2.0 * cd,
        meta(v, z, q),
    ))
}

/// sup_y ‖V‖_{L^{(d+1)/2}(B(y, A|ln ε|/ε))}.
pub fn lower_bound_functional(v: &Potential, eps: f64, a: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Range(format!("eps = {eps} must lie in (0, 1/2)")));
    }
    let radius = a * eps.ln().abs() / eps;
    let p = (v.dim() as f64 + 1.0) / 2.0;
    Ok(sup_over_translates(v, |y| v.local_ball_norm(p, y, radius))?.0)
}

/// |z|^{q-d/2} / ‖V‖_q^q.
pub fn ls_ratio(v: &Potential, z: Complex64, q: f64) -> Result<f64> {
    let norm = v.lq_norm(q)?;
    if !norm.is_finite() {
        return Err(Error::Divergent(format!("‖V‖_{q} is infinite")));
    }
    Ok(z.norm().powf(q - v.dim() as f64 / 2.0) / norm.powf(q))
}
