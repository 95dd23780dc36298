use crate::config::{DomainSpec, RunConfig, Validated};
use crate::error::{CliError, ExitStatus};
use crate::output::{ensure_dir, read_field_csv, write_field_csv, write_json, SCHEMA};
use alphaconvex::analysis::ORDER_TOL;
use alphaconvex::{
    c1_diagnostic, check_alpha_convex, compare_fields, convex_envelope_oracle, lipschitz_estimate,
    quasiconvex_envelope_oracle, residual, support_hyperplane, Alpha, BoundarySampling,
    EnvelopeProblem, EnvelopeResult, Field, GradientJump, Mode, Point, TouchCertificate,
    ViolationReport,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::Path;

/// Tolerance of the chord inequality in `check`.
pub const CHECK_TOL: f64 = 1e-9;
/// Number of nodes at which `check` builds supporting alpha-hyperplanes.
pub const HYPERPLANE_SAMPLES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub schema: &'static str,
    pub command: &'static str,
    pub domain: DomainSpec,
    pub datum: String,
    pub alpha: f64,
    pub h: f64,
    pub width: u32,
    pub tol: f64,
    pub max_iter: usize,
    pub mode: Mode,
    pub converged: bool,
    pub iterations: usize,
    pub line_passes: usize,
    pub last_sweep_delta: f64,
    pub residual_max: f64,
    pub lipschitz_estimate: f64,
    pub min_value: f64,
    pub max_value: f64,
    pub nodes: usize,
    pub warnings: Vec<String>,
}

fn summarize(cfg: &Validated, r: &EnvelopeResult) -> SolveSummary {
    SolveSummary {
        schema: SCHEMA,
        command: "solve",
        domain: cfg.raw.domain.clone(),
        datum: cfg.raw.datum.clone(),
        alpha: r.alpha.value(),
        h: r.h,
        width: r.width,
        tol: r.tol,
        max_iter: cfg.settings.max_iter,
        mode: cfg.settings.mode,
        converged: r.converged,
        iterations: r.iterations,
        line_passes: r.line_passes,
        last_sweep_delta: r.last_sweep_delta,
        residual_max: r.residual_max,
        lipschitz_estimate: lipschitz_estimate(&r.field),
        min_value: r.field.min(),
        max_value: r.field.max(),
        nodes: r.field.values().len(),
        warnings: r.warnings.clone(),
    }
}

fn single_alpha(cfg: &Validated, command: &str) -> Result<Alpha, CliError> {
    match cfg.alphas.as_slice() {
        [a] => Ok(*a),
        list => Err(CliError::Config(format!(
            "`{command}` needs exactly one alpha, got {}",
            list.len()
        ))),
    }
}

fn problem(cfg: &Validated) -> Result<EnvelopeProblem, CliError> {
    Ok(EnvelopeProblem::new(
        &cfg.domain,
        &cfg.datum,
        cfg.raw.h,
        cfg.settings.width,
    )?)
}

fn write_run(dir: &Path, cfg: &Validated, r: &EnvelopeResult) -> Result<SolveSummary, CliError> {
    ensure_dir(dir)?;
    write_field_csv(&dir.join("field.csv"), &r.field)?;
    let summary = summarize(cfg, r);
    write_json(&dir.join("summary.json"), &summary)?;
    Ok(summary)
}

/// Solves for the single configured alpha; writes `field.csv` and `summary.json`.
pub fn cmd_solve(config: &RunConfig, out: &Path) -> Result<ExitStatus, CliError> {
    let cfg = config.validate()?;
    let alpha = single_alpha(&cfg, "solve")?;
    let r = problem(&cfg)?.solve(alpha, &cfg.settings, None)?;
    write_run(out, &cfg, &r)?;
    Ok(if r.converged {
        ExitStatus::Ok
    } else {
        ExitStatus::NotConverged
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BridgeStep {
    pub alpha_low: f64,
    pub alpha_high: f64,
    pub sup_diff: f64,
    pub non_increasing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichEntry {
    pub alpha: f64,
    pub above_convex: bool,
    pub below_quasiconvex: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BridgeReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub alphas: Vec<f64>,
    pub runs: Vec<String>,
    pub steps: Vec<BridgeStep>,
    pub monotone: bool,
    pub sandwich: Vec<SandwichEntry>,
    pub sandwich_holds: bool,
    pub all_converged: bool,
    pub order_tol: f64,
}

/// Solves every configured alpha, warm-starting along the ascending list,
/// and reports monotonicity and the endpoint sandwich.
pub fn cmd_sweep(config: &RunConfig, out: &Path) -> Result<ExitStatus, CliError> {
    let cfg = config.validate()?;
    if cfg.alphas.len() < 2 {
        return Err(CliError::Config("`sweep` needs at least two alphas".into()));
    }
    if cfg.alphas.windows(2).any(|w| w[0].value() >= w[1].value()) {
        return Err(CliError::Config(
            "`alphas` must be strictly ascending".into(),
        ));
    }
    let problem = problem(&cfg)?;
    let mut runs: Vec<EnvelopeResult> = Vec::with_capacity(cfg.alphas.len());
    for &alpha in &cfg.alphas {
        let warm = runs.last().map(|r| &r.field);
        runs.push(problem.solve(alpha, &cfg.settings, warm)?);
    }
    ensure_dir(out)?;
    let mut names = Vec::new();
    for (i, r) in runs.iter().enumerate() {
        let name = format!("alpha_{i:02}");
        write_run(&out.join(&name), &cfg, r)?;
        names.push(name);
    }
    let mut steps = Vec::new();
    for w in runs.windows(2) {
        let c = compare_fields(&w[0].field, &w[1].field)?;
        steps.push(BridgeStep {
            alpha_low: w[0].alpha.value(),
            alpha_high: w[1].alpha.value(),
            sup_diff: c.sup_diff,
            non_increasing: c.f2_le_f1,
        });
    }
    let endpoint = |alpha: Alpha| -> Result<Field, CliError> {
        match runs.iter().find(|r| r.alpha == alpha) {
            Some(r) => Ok(r.field.clone()),
            None => Ok(problem.solve(alpha, &cfg.settings, None)?.field),
        }
    };
    let upper = endpoint(Alpha::QUASICONVEX)?;
    let lower = endpoint(Alpha::CONVEX)?;
    let mut sandwich = Vec::new();
    for r in &runs {
        sandwich.push(SandwichEntry {
            alpha: r.alpha.value(),
            above_convex: compare_fields(&lower, &r.field)?.f1_le_f2,
            below_quasiconvex: compare_fields(&r.field, &upper)?.f1_le_f2,
        });
    }
    let monotone = steps.iter().all(|s| s.non_increasing);
    let sandwich_holds = sandwich
        .iter()
        .all(|s| s.above_convex && s.below_quasiconvex);
    let all_converged = runs.iter().all(|r| r.converged);
    let report = BridgeReport {
        schema: SCHEMA,
        command: "sweep",
        alphas: runs.iter().map(|r| r.alpha.value()).collect(),
        runs: names,
        steps,
        monotone,
        sandwich,
        sandwich_holds,
        all_converged,
        order_tol: ORDER_TOL,
    };
    write_json(&out.join("bridge.json"), &report)?;
    Ok(if !all_converged {
        ExitStatus::NotConverged
    } else if !(monotone && sandwich_holds) {
        ExitStatus::VerificationFailed
    } else {
        ExitStatus::Ok
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneEntry {
    pub node: usize,
    pub point: Point,
    pub certificate: TouchCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub alpha: f64,
    pub h: f64,
    pub width: u32,
    pub nodes: usize,
    pub alpha_convex: bool,
    pub report: ViolationReport,
    pub residual_min: f64,
    pub residual_max: f64,
    pub lipschitz_estimate: f64,
    pub c1_diagnostic: Vec<GradientJump>,
    pub seed: u64,
    pub hyperplanes: Vec<HyperplaneEntry>,
}

/// Certifies a field read from CSV against the configured grid and alpha.
pub fn cmd_check(
    config: &RunConfig,
    out: &Path,
    field_path: &Path,
) -> Result<ExitStatus, CliError> {
    let cfg = config.validate()?;
    let alpha = single_alpha(&cfg, "check")?;
    let problem = problem(&cfg)?;
    let field = read_field_csv(field_path, problem.grid())?;
    let arms = problem.arms();
    let report = check_alpha_convex(&field, alpha, arms, CHECK_TOL);
    let (res, residual_max) = residual(&field, alpha, arms);
    let residual_min = res.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hyperplanes = Vec::new();
    if !alpha.is_quasiconvex() {
        let grid = problem.grid();
        let h = grid.h();
        let mut inner: Vec<usize> = (0..grid.len())
            .filter(|&n| grid.domain().ball_inside(grid.point(n), 4.0 * h))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.raw.seed);
        inner.shuffle(&mut rng);
        inner.truncate(HYPERPLANE_SAMPLES);
        inner.sort_unstable();
        for n in inner {
            hyperplanes.push(HyperplaneEntry {
                node: n,
                point: grid.point(n),
                certificate: support_hyperplane(&field, alpha, n, h)?,
            });
        }
    }
    let alpha_convex = report.is_empty();
    let out_report = CheckReport {
        schema: SCHEMA,
        command: "check",
        alpha: alpha.value(),
        h: cfg.raw.h,
        width: cfg.settings.width,
        nodes: field.values().len(),
        alpha_convex,
        report,
        residual_min,
        residual_max,
        lipschitz_estimate: lipschitz_estimate(&field),
        c1_diagnostic: c1_diagnostic(&field),
        seed: cfg.raw.seed,
        hyperplanes,
    };
    ensure_dir(out)?;
    write_json(&out.join("check.json"), &out_report)?;
    Ok(if alpha_convex {
        ExitStatus::Ok
    } else {
        ExitStatus::VerificationFailed
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub alpha: f64,
    pub oracle: &'static str,
    pub samples: usize,
    pub h: f64,
    pub width: u32,
    pub nodes: usize,
    pub converged: bool,
    pub sup_abs_diff: f64,
    pub mean_abs_diff: f64,
    pub worst_point: Point,
    pub worst_solver: f64,
    pub worst_oracle: f64,
}

/// Compares the solver with the sampled endpoint envelope at every node.
pub fn cmd_oracle_compare(config: &RunConfig, out: &Path) -> Result<ExitStatus, CliError> {
    let cfg = config.validate()?;
    let alpha = single_alpha(&cfg, "oracle-compare")?;
    let (oracle, name): (fn(&BoundarySampling, Point) -> alphaconvex::Result<f64>, _) =
        if alpha.is_convex() {
            (convex_envelope_oracle, "convex")
        } else if alpha.is_quasiconvex() {
            (quasiconvex_envelope_oracle, "quasiconvex")
        } else {
            return Err(CliError::Config(format!(
                "no oracle exists for alpha = {}; use 0 or 1",
                alpha.value()
            )));
        };
    let r = problem(&cfg)?.solve(alpha, &cfg.settings, None)?;
    let samples = BoundarySampling::new(&cfg.domain, &cfg.datum, cfg.raw.oracle_samples)?;
    let grid = r.field.grid().clone();
    let mut sup = 0.0_f64;
    let mut sum = 0.0;
    let mut worst = (grid.point(0), r.field.values()[0], r.field.values()[0]);
    for (n, &v) in r.field.values().iter().enumerate() {
        let z = grid.point(n);
        let o = oracle(&samples, z)?;
        let d = (v - o).abs();
        sum += d;
        if d > sup {
            sup = d;
            worst = (z, v, o);
        }
    }
    let report = OracleReport {
        schema: SCHEMA,
        command: "oracle-compare",
        alpha: alpha.value(),
        oracle: name,
        samples: samples.len(),
        h: cfg.raw.h,
        width: cfg.settings.width,
        nodes: grid.len(),
        converged: r.converged,
        sup_abs_diff: sup,
        mean_abs_diff: sum / grid.len() as f64,
        worst_point: worst.0,
        worst_solver: worst.1,
        worst_oracle: worst.2,
    };
    ensure_dir(out)?;
    write_json(&out.join("oracle_compare.json"), &report)?;
    Ok(if r.converged {
        ExitStatus::Ok
    } else {
        ExitStatus::NotConverged
    })
}
