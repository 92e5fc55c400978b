//! Experiment suites driven by a JSON configuration. Each run writes
//! `<out>/<experiment>.csv` and `<out>/<experiment>.summary.json`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::birman_schwinger::verify_bs_scaling;
use crate::bounds::{
    cert_aad_1d, cert_corollary1, cert_corollary2, cert_davies_nath_1d, cert_frank, cert_theorem1, corollary1_exponent,
    corollary2_split, lower_bound_functional, ls_ratio, BoundCertificate,
};
use crate::eigensolvers::{construct_radial_3d, solve_square_well_1d, RadialSolution3D, SquareWellSolution1D};
use crate::error::{Error, Result};
use crate::fourier::{default_points, measure_2pc_scaling_report};
use crate::potential::{ij_local_norm_model, GridSpec, Potential};
use crate::quasimode::{gaussian_quasimode, quasimode_record, truncated_quasimode, truncation_cutoff};
use crate::sweep::{fit_constant, fit_slope, log_correct, SlopeFit};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// (name, anchor, description)
pub const EXPERIMENTS: [(&str, &str, &str); 14] = [
    ("dn1d", "Eq. (DN)", "1D exponentially weighted bound on solver-built square wells"),
    ("thm1", "Eq. (DN higher dim)", "higher-dimensional weighted bound on the radial family"),
    ("cor1", "Eq. (bound cor 1)", "Hölder corollary on the radial family"),
    ("cor2", "Eq. (asspt on M)", "local ball bound with the cutoff M"),
    ("frank", "Eq. (Ruperts bound)", "long-range L^q bound on the radial family"),
    ("bs-scaling", "Scaling Lemma", "dilation identity of the Birman-Schwinger norm"),
    ("squarewell1d", "Eq. (even 5)", "1D square-well eigenpairs and their norms"),
    ("radial3d", "Eq. (z2 vs z1)", "3D radial step eigenpairs and their norms"),
    ("quasimode", "Eq. (computation)", "Gaussian quasimode norms and condition quantity"),
    ("quasimode-trunc", "Prop. (quasimode bound)", "truncated quasimode potential"),
    ("stein-tomas", "Eq. (2-pc)", "L2 -> L^pc resolvent growth on a periodic box"),
    ("ij-norms", "Eq. (Lq norms of Vn and Unk)", "norms of the slowly decaying family"),
    ("lower-bound", "Eq. (lower bound)", "local mass of square wells on the long ball"),
    ("ls-ratio", "Eq. (LS conjecture)", "ratio |z|^{q-d/2}/||V||_q^q along the radial sweep"),
];

pub fn list_experiments() -> String {
    let mut out = String::new();
    for (name, anchor, what) in EXPERIMENTS {
        let _ = writeln!(out, "{name:<16}{anchor:<32}{what}");
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    #[serde(rename = "C_dq", default, skip_serializing_if = "Option::is_none")]
    pub c_dq: Option<f64>,
    #[serde(rename = "C_d_prime", default, skip_serializing_if = "Option::is_none")]
    pub c_d_prime: Option<f64>,
    #[serde(rename = "C_d", default, skip_serializing_if = "Option::is_none")]
    pub c_d: Option<f64>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub experiment: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_list: Option<Vec<f64>>,
    #[serde(default)]
    pub constants: Constants,
    #[serde(default)]
    pub grid: GridOverrides,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Self {
        ExperimentConfig {
            experiment: experiment.to_string(),
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("config line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !EXPERIMENTS.iter().any(|(n, _, _)| *n == self.experiment) {
            let names: Vec<&str> = EXPERIMENTS.iter().map(|e| e.0).collect();
            return Err(Error::Config(format!(
                "unknown experiment '{}'; valid experiments: {}",
                self.experiment,
                names.join(", ")
            )));
        }
        if let Some(list) = &self.eps_list {
            if list.is_empty() {
                return Err(Error::Config("field eps_list: must not be empty".into()));
            }
            if let Some(e) = list.iter().find(|e| !(**e > 0.0 && **e <= 0.5)) {
                return Err(Error::Config(format!("field eps_list: entry {e} outside (0, 0.5]")));
            }
            if list.windows(2).any(|w| w[1] > w[0]) {
                return Err(Error::Config("field eps_list: must be sorted descending".into()));
            }
        }
        if let Some(d) = self.d {
            if !(1..=3).contains(&d) {
                return Err(Error::Config(format!("field d: {d} not in 1..=3")));
            }
        }
        Ok(())
    }

    fn eps_or(&self, default: &[f64]) -> Vec<f64> {
        self.eps_list.clone().unwrap_or_else(|| default.to_vec())
    }
}

/// Table and summary produced by one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub header: String,
    pub rows: Vec<String>,
    pub results: Value,
    /// Some certificate evaluated with a configured constant is violated.
    pub violated: bool,
}

impl ExperimentOutput {
    pub fn csv(&self) -> String {
        let mut s = self.header.clone();
        s.push('\n');
        for r in &self.rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub csv_path: PathBuf,
    pub summary_path: PathBuf,
    pub output: ExperimentOutput,
}

/// Runs the configured experiment and writes its files under `out`
/// (falling back to the config's `output`, then the working directory).
pub fn run(config: &ExperimentConfig, out: Option<&Path>) -> Result<RunOutcome> {
    config.validate()?;
    let output = evaluate(config)?;
    let dir = out
        .map(Path::to_path_buf)
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let csv_path = dir.join(format!("{}.csv", config.experiment));
    let summary_path = dir.join(format!("{}.summary.json", config.experiment));
    fs::write(&csv_path, output.csv())?;
    let exit_code = if output.violated { 2 } else { 0 };
    let summary = json!({
        "experiment": config.experiment,
        "artifact_version": VERSION,
        "config": config,
        "exit_code": exit_code,
        "results": output.results,
    });
    let text = serde_json::to_string_pretty(&summary).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(&summary_path, text + "\n")?;
    Ok(RunOutcome {
        exit_code,
        csv_path,
        summary_path,
        output,
    })
}

/// Computes an experiment without touching the file system.
pub fn evaluate(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    match config.experiment.as_str() {
        "dn1d" => dn1d(config),
        "thm1" => radial_certificates(config, Family::Weighted),
        "cor1" => radial_certificates(config, Family::Holder),
        "frank" => radial_certificates(config, Family::LongRange),
        "cor2" => cor2(config),
        "bs-scaling" => bs_scaling(),
        "squarewell1d" => squarewell1d(config),
        "radial3d" => radial3d(config),
        "quasimode" => quasimode(config),
        "quasimode-trunc" => quasimode_trunc(config),
        "stein-tomas" => stein_tomas(config),
        "ij-norms" => ij_norms(config),
        "lower-bound" => lower_bound(config),
        "ls-ratio" => ls_sweep(config),
        other => Err(Error::Config(format!("unknown experiment '{other}'"))),
    }
}

const SQUARE_WELL_EPS: [f64; 3] = [0.1, 0.05, 0.02];
const RADIAL_EPS: [f64; 3] = [0.1, 0.05, 0.02];
const CERT_EPS: [f64; 6] = [0.1, 0.08, 0.06, 0.04, 0.03, 0.02];
const QUASIMODE_EPS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];
const TRUNCATED_EPS: [f64; 3] = [0.3, 0.2, 0.1];

fn e(x: f64) -> String {
    format!("{x:e}")
}

fn wells(config: &ExperimentConfig, default: &[f64]) -> Result<Vec<SquareWellSolution1D>> {
    let rho = config.constants.rho.unwrap_or(0.5);
    let c = config.constants.c.unwrap_or(1.0);
    config
        .eps_or(default)
        .par_iter()
        .map(|&eps| solve_square_well_1d(eps, rho, c))
        .collect()
}

fn radials(config: &ExperimentConfig, default: &[f64]) -> Result<Vec<RadialSolution3D>> {
    let delta = config.constants.delta.unwrap_or(0.5);
    config
        .eps_or(default)
        .par_iter()
        .map(|&eps| construct_radial_3d(eps, delta))
        .collect()
}

fn slope_json(fit: &SlopeFit) -> Value {
    json!({ "slope": fit.slope, "intercept": fit.intercept, "max_residual": fit.max_residual })
}

fn dn1d(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let sols = wells(config, &SQUARE_WELL_EPS)?;
    let certs: Vec<(BoundCertificate, BoundCertificate)> = sols
        .par_iter()
        .map(|s| {
            let v = s.potential()?;
            Ok((
                cert_davies_nath_1d(&v, s.e)?.with_eps(s.eps),
                cert_aad_1d(&v, s.e)?.with_eps(s.eps),
            ))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (dn, aad) in &certs {
        rows.push(dn.csv_row());
        rows.push(aad.csv_row());
    }
    let violated = certs.iter().any(|(a, b)| !a.satisfied || !b.satisfied);
    let min_dn = certs.iter().map(|c| c.0.ratio).fold(f64::INFINITY, f64::min);
    let aad_log: Vec<f64> = certs
        .iter()
        .map(|(_, a)| a.ratio * a.meta.eps.unwrap_or(1.0).ln().abs())
        .collect();
    Ok(ExperimentOutput {
        header: BoundCertificate::CSV_HEADER.into(),
        rows,
        results: json!({
            "min_ratio_dn": min_dn,
            "ratio_dn": certs.iter().map(|c| c.0.ratio).collect::<Vec<_>>(),
            "ratio_aad": certs.iter().map(|c| c.1.ratio).collect::<Vec<_>>(),
            "ratio_aad_times_log": aad_log,
            "all_satisfied": !violated,
        }),
        violated,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Family {
    Weighted,
    Holder,
    LongRange,
}

/// Constant fitted on the first half of a sweep, then applied to all of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitFit {
    pub half: f64,
    pub full: f64,
    pub stability: f64,
    pub second_half_passes: bool,
}

pub fn split_fit(unit: &[BoundCertificate]) -> Result<SplitFit> {
    let pairs: Vec<(f64, f64)> = unit.iter().map(|c| (c.lhs, c.unit_rhs())).collect();
    let k = (pairs.len() / 2).max(1);
    let half = fit_constant(&pairs[..k])?.value;
    let full = fit_constant(&pairs)?.value;
    Ok(SplitFit {
        half,
        full,
        stability: full / half,
        second_half_passes: unit[k..].iter().all(|c| c.with_constant(half).satisfied),
    })
}

fn radial_certificates(config: &ExperimentConfig, family: Family) -> Result<ExperimentOutput> {
    let sols = radials(config, &CERT_EPS)?;
    let (q, fixed) = match family {
        Family::Weighted => (config.q.unwrap_or(2.0), config.constants.c_d_prime),
        Family::Holder => (config.q.unwrap_or(4.0), config.constants.c_dq),
        Family::LongRange => (config.q.unwrap_or(4.0), config.constants.c_dq),
    };
    let unit: Vec<BoundCertificate> = sols
        .par_iter()
        .map(|s| {
            let v = s.potential()?;
            let c = match family {
                Family::Weighted => cert_theorem1(&v, s.e, q, 1.0)?,
                Family::Holder => cert_corollary1(&v, s.e, q, 1.0)?,
                Family::LongRange => cert_frank(&v, s.e, q, 1.0)?,
            };
            Ok(c.with_eps(s.eps))
        })
        .collect::<Result<_>>()?;
    let mut results = json!({ "q": q, "corollary1_exponent": corollary1_exponent(3, q) });
    let constant = match fixed {
        Some(c) => {
            results["constant"] = json!(c);
            results["mode"] = json!("fixed");
            c
        }
        None => {
            let fit = split_fit(&unit)?;
            results["mode"] = json!("fitted");
            results["constant"] = json!(fit.half);
            results["split_fit"] = serde_json::to_value(&fit).map_err(|e| Error::Io(e.to_string()))?;
            fit.half
        }
    };
    let certs: Vec<BoundCertificate> = unit.iter().map(|c| c.with_constant(constant)).collect();
    let violated = fixed.is_some() && certs.iter().any(|c| !c.satisfied);
    results["ratios"] = json!(certs.iter().map(|c| c.ratio).collect::<Vec<_>>());
    results["all_satisfied"] = json!(certs.iter().all(|c| c.satisfied));
    Ok(ExperimentOutput {
        header: BoundCertificate::CSV_HEADER.into(),
        rows: certs.iter().map(BoundCertificate::csv_row).collect(),
        results,
        violated,
    })
}

fn cor2_all(sols: &[RadialSolution3D], q: f64, cd: f64) -> Result<Vec<BoundCertificate>> {
    sols.par_iter()
        .map(|s| Ok(cert_corollary2(&s.potential()?, q, s.e, cd)?.with_eps(s.eps)))
        .collect()
}

/// Smallest C_d (to 1e-6 in log scale) with every certificate satisfied.
pub fn fit_corollary2_constant(sols: &[RadialSolution3D], q: f64) -> Result<f64> {
    let ok = |cd: f64| -> Result<bool> { Ok(cor2_all(sols, q, cd)?.iter().all(|c| c.satisfied)) };
    let (mut lo, mut hi) = (1e-3f64, 1e3f64);
    if ok(lo)? {
        return Ok(lo);
    }
    if !ok(hi)? {
        return Err(Error::NoConvergence("no C_d ≤ 1e3 satisfies the local bound".into()));
    }
    while (hi / lo).ln() > 1e-6 {
        let mid = (lo * hi).sqrt();
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn cor2(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let sols = radials(config, &RADIAL_EPS)?;
    let q = config.q.unwrap_or(4.0);
    let (cd, mode) = match config.constants.c_d {
        Some(c) => (c, "fixed"),
        None => (fit_corollary2_constant(&sols, q)?, "fitted"),
    };
    let certs = cor2_all(&sols, q, cd)?;
    let splits: Vec<_> = sols
        .par_iter()
        .map(|s| corollary2_split(&s.potential()?, q, s.e, cd))
        .collect::<Result<_>>()?;
    let split_ok: Vec<bool> = certs
        .iter()
        .zip(&splits)
        .map(|(c, s)| cd * s.tail <= 0.5 * c.lhs * (1.0 + 1e-12))
        .collect();
    let mut rows = Vec::new();
    for (c, s) in certs.iter().zip(&splits) {
        rows.push(format!("{},{},{},{},{}", c.csv_row(), e(s.m), e(s.radius), e(s.local), e(s.tail)));
    }
    let violated = mode == "fixed" && certs.iter().any(|c| !c.satisfied);
    Ok(ExperimentOutput {
        header: format!("{},M,radius,local,tail", BoundCertificate::CSV_HEADER),
        rows,
        results: json!({
            "q": q,
            "mode": mode,
            "C_d": cd,
            "all_satisfied": certs.iter().all(|c| c.satisfied),
            "split_consistent": split_ok.iter().all(|b| *b),
        }),
        violated,
    })
}

fn bs_scaling() -> Result<ExperimentOutput> {
    let cases = [
        (
            "square_well_1d",
            Potential::square_well_1d(Complex64::new(0.4, -0.7), 1.0)?,
            GridSpec::cube(1, 1.3, 301)?,
        ),
        (
            "radial_step_3d",
            Potential::radial_step_3d(Complex64::new(1.0, 0.5), 1.0)?,
            GridSpec::cube(3, 1.1, 19)?,
        ),
    ];
    let zs = [Complex64::new(-1.0, 0.0), Complex64::new(-1.0, 0.3)];
    let mut jobs = Vec::new();
    for (name, v, g) in &cases {
        for z in zs {
            for lam in [0.5, 2.0] {
                jobs.push((*name, v, g, z, lam));
            }
        }
    }
    let errs: Vec<f64> = jobs
        .par_iter()
        .map(|(_, v, g, z, lam)| verify_bs_scaling(v, *z, *lam, g))
        .collect::<Result<_>>()?;
    let rows = jobs
        .iter()
        .zip(&errs)
        .map(|((name, _, _, z, lam), err)| format!("{name},{},{},{lam},{}", e(z.re), e(z.im), e(*err)))
        .collect();
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    Ok(ExperimentOutput {
        header: "potential,z_re,z_im,lambda,relative_error".into(),
        rows,
        results: json!({ "max_relative_error": worst, "cases": errs.len() }),
        violated: false,
    })
}

fn norm_fit(points: &[(f64, f64)], log_power: f64) -> Result<SlopeFit> {
    fit_slope(&log_correct(points, log_power)?)
}

fn squarewell1d(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let sols = wells(config, &SQUARE_WELL_EPS)?;
    let ratios: Vec<f64> = sols
        .par_iter()
        .map(|s| Ok(cert_davies_nath_1d(&s.potential()?, s.e)?.ratio))
        .collect::<Result<_>>()?;
    let rows = sols
        .iter()
        .zip(&ratios)
        .map(|(s, r)| format!("{},{},{},{},{},{}", e(s.eps), e(s.r), e(s.v0.re), e(s.v0.im), e(s.norm(1.0)), e(*r)))
        .collect();
    let mut results = json!({
        "max_residual": sols.iter().map(|s| s.residual).fold(0.0, f64::max),
        "windings": sols.iter().map(|s| s.winding).collect::<Vec<_>>(),
    });
    if sols.len() >= 3 {
        for q in [1.0, 2.0] {
            let pts: Vec<(f64, f64)> = sols.iter().map(|s| (s.eps, s.norm(q))).collect();
            results[format!("fit_q{q}")] = slope_json(&norm_fit(&pts, 1.0 / q)?);
        }
    }
    Ok(ExperimentOutput {
        header: "eps,R,V0_re,V0_im,normL1,ratio_DN".into(),
        rows,
        results,
        violated: false,
    })
}

fn radial3d(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let sols = radials(config, &RADIAL_EPS)?;
    let q = config.q.unwrap_or(4.0);
    let rows = sols
        .iter()
        .map(|s| {
            format!(
                "{},{},{},{},{},{},{},{}",
                e(s.eps),
                e(s.r),
                e(s.z2.re),
                e(s.z2.im),
                e(s.v0.re),
                e(s.v0.im),
                e(s.norm(q)),
                e(s.residual)
            )
        })
        .collect();
    let mut results = json!({
        "q": q,
        "max_residual": sols.iter().map(|s| s.residual).fold(0.0, f64::max),
        "min_im_z2_over_delta_eps": sols.iter().map(|s| s.z2.im / (s.delta * s.eps)).fold(f64::INFINITY, f64::min),
    });
    if sols.len() >= 3 {
        let pts: Vec<(f64, f64)> = sols.iter().map(|s| (s.eps, s.norm(q))).collect();
        results["fit"] = slope_json(&norm_fit(&pts, 3.0 / q)?);
        results["expected_slope"] = json!(1.0 - 3.0 / q);
    }
    Ok(ExperimentOutput {
        header: "eps,R,z2_re,z2_im,V0_re,V0_im,normLq,residual".into(),
        rows,
        results,
        violated: false,
    })
}

fn quasimode(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let d = config.d.unwrap_or(3);
    let q = config.q.unwrap_or(4.0);
    let recs: Vec<_> = config
        .eps_or(&QUASIMODE_EPS)
        .par_iter()
        .map(|&eps| quasimode_record(&gaussian_quasimode(eps, d)?, q))
        .collect::<Result<_>>()?;
    let rows = recs
        .iter()
        .map(|r| format!("{},{},{},{},{},{},{}", e(r.eps), e(r.q), r.d, e(r.g2), e(r.vq), e(r.vpsi2), e(r.condition_quantity)))
        .collect();
    let mut results = json!({ "d": d, "q": q, "records": recs });
    if recs.len() >= 3 {
        let fit = |f: &dyn Fn(&crate::quasimode::QuasimodeRecord) -> f64| {
            fit_slope(&recs.iter().map(|r| (r.eps, f(r))).collect::<Vec<_>>())
        };
        results["fit_g2"] = slope_json(&fit(&|r| r.g2)?);
        results["fit_vq"] = slope_json(&fit(&|r| r.vq)?);
        results["fit_vpsi2"] = slope_json(&fit(&|r| r.vpsi2)?);
        results["fit_condition"] = slope_json(&fit(&|r| r.condition_quantity)?);
    }
    Ok(ExperimentOutput {
        header: "eps,q,d,g2,Vq,Vpsi2,condition_quantity".into(),
        rows,
        results,
        violated: false,
    })
}

fn quasimode_trunc(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let d = config.d.unwrap_or(3);
    let q = config.q.unwrap_or(4.0);
    let recs: Vec<_> = config
        .eps_or(&TRUNCATED_EPS)
        .par_iter()
        .map(|&eps| {
            let rec = quasimode_record(&truncated_quasimode(eps, q, d)?, q)?;
            let m = truncation_cutoff(eps, d, q)?;
            Ok((m, rec.g2 / (eps * (-m * m / 4.0).exp()), rec))
        })
        .collect::<Result<_>>()?;
    let rows = recs
        .iter()
        .map(|(m, s, r)| format!("{},{},{},{},{},{},{}", e(r.eps), e(*m), e(r.g2), e(r.vq), e(r.vpsi2), e(r.condition_quantity), e(*s)))
        .collect();
    let lo = recs.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let hi = recs.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(ExperimentOutput {
        header: "eps,M,g2,Vq,Vpsi2,condition_quantity,g2_scaled".into(),
        rows,
        results: json!({ "d": d, "q": q, "g2_scaled_bracket": [lo, hi], "bracket_ratio": hi / lo }),
        violated: false,
    })
}

fn stein_tomas(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let d = config.d.unwrap_or(3);
    let lam = config.constants.lambda.unwrap_or(1.0);
    let n = config.grid.points.unwrap_or_else(|| default_points(d));
    let trials = config.grid.trials.unwrap_or(2);
    let report = measure_2pc_scaling_report(lam, &config.eps_or(&QUASIMODE_EPS), d, trials, n, config.seed)?;
    let rows = report
        .points
        .iter()
        .map(|p| format!("{},{},{},{},{}", e(p.eps), e(p.estimate), e(p.cap_trial), e(p.random), e(p.wrap)))
        .collect();
    let monotone = report.points.windows(2).all(|w| w[1].estimate >= w[0].estimate);
    let last = report.points.last().map(|p| p.cap_trial / p.random).unwrap_or(f64::NAN);
    Ok(ExperimentOutput {
        header: "eps,estimate,cap,random,wrap".into(),
        rows,
        results: json!({
            "lambda": lam,
            "d": d,
            "p": report.p,
            "points_per_axis": n,
            "half_extent": report.half_extent,
            "fit": slope_json(&report.fit),
            "monotone": monotone,
            "cap_over_random_at_smallest_eps": last,
        }),
        violated: false,
    })
}

/// Quadrature local norm against the model curve for (n, R/n).
pub fn ij_local_comparison(n: f64, r_over_n: f64, d: usize) -> Result<(f64, f64)> {
    let v = Potential::ionescu_jerison(n, d)?;
    let p = (d as f64 + 1.0) / 2.0;
    let r = n * r_over_n;
    Ok((v.local_ball_norm(p, &vec![0.0; d], r)?, ij_local_norm_model(n, r, d)))
}

fn ij_norms(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let d = config.d.unwrap_or(3);
    let q = config.q.unwrap_or(3.0);
    let ns = [10.0, 100.0, 1000.0];
    let scaled: Vec<f64> = ns
        .par_iter()
        .map(|&n| Ok(Potential::ionescu_jerison(n, d)?.lq_norm(q)? * n.powf(1.0 - (d as f64 + 1.0) / (2.0 * q))))
        .collect::<Result<_>>()?;
    let pairs = [(10.0, 10.0), (10.0, 100.0), (100.0, 10.0), (100.0, 100.0)];
    let local: Vec<(f64, f64)> = pairs
        .par_iter()
        .map(|&(n, k)| ij_local_comparison(n, k, d))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (n, s) in ns.iter().zip(&scaled) {
        rows.push(format!("lq_scaled,{},,{},,", e(*n), e(*s)));
    }
    for ((n, k), (val, model)) in pairs.iter().zip(&local) {
        rows.push(format!("local,{},{},{},{},{}", e(*n), e(*k), e(*val), e(*model), e(val / model)));
    }
    let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = scaled.iter().cloned().fold(0.0, f64::max);
    Ok(ExperimentOutput {
        header: "kind,n,R_over_n,value,model,ratio".into(),
        rows,
        results: json!({
            "d": d,
            "q": q,
            "lq_scaled_bracket": [lo, hi],
            "local_ratios": local.iter().map(|(v, m)| v / m).collect::<Vec<_>>(),
        }),
        violated: false,
    })
}

fn lower_bound(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let a = config.constants.a.unwrap_or(1.0);
    let sols = wells(config, &SQUARE_WELL_EPS)?;
    let vals: Vec<f64> = sols
        .par_iter()
        .map(|s| lower_bound_functional(&s.potential()?, s.eps, a))
        .collect::<Result<_>>()?;
    let rows = sols.iter().zip(&vals).map(|(s, v)| format!("{},{},{}", e(s.eps), e(a), e(*v))).collect();
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().cloned().fold(0.0, f64::max);
    Ok(ExperimentOutput {
        header: "eps,A,value".into(),
        rows,
        results: json!({ "A": a, "bracket": [lo, hi] }),
        violated: false,
    })
}

fn ls_sweep(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let q = config.q.unwrap_or(3.5);
    let sols = radials(config, &RADIAL_EPS)?;
    let vals: Vec<f64> = sols
        .par_iter()
        .map(|s| ls_ratio(&s.potential()?, s.e, q))
        .collect::<Result<_>>()?;
    let rows = sols.iter().zip(&vals).map(|(s, v)| format!("{},{},{}", e(s.eps), e(q), e(*v))).collect();
    Ok(ExperimentOutput {
        header: "eps,q,ls_ratio".into(),
        rows,
        results: json!({ "q": q, "increasing": vals.windows(2).all(|w| w[1] > w[0]) }),
        violated: false,
    })
}
