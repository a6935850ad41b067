use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex64;
use pickzeta::arith::{CoefficientSeries, TailBound, ZetaConfig};
use pickzeta::disc::{
    search_dirichlet_solution, solve_halfplane, DirichletFitConfig, HalfPlaneSolution, SchurParameter, SolveOutcome,
};
use pickzeta::kernels::KernelSpec;
use pickzeta::pick::{
    lemma22_transfer, pick_matrix, theorem12_certificate, theorem21_check, InterpolationProblem, PickCertificate,
};
use pickzeta::realization::{
    build_lurking_isometry, evaluate_at, verify_direction_ii_to_i, RealizationModel, TestMultiplier, DEFAULT_ALPHA,
};
use pickzeta::HalfPlanePoint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{CliError, EXIT_FAILED};
use crate::io::{parse_complex_list, parse_powers, read_json, read_text, write_atomic};
use crate::report::{to_value, Report, Table};

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Evaluation points with Re(s) > 1, e.g. `2`, `3+1i`; comma-separated or repeated.
    #[arg(long = "s", required = true, allow_hyphen_values = true)]
    pub s: Vec<String>,
    /// Absolute error target (defaults to the configured zeta_tol).
    #[arg(long)]
    pub precision: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PickCheckArgs {
    /// Interpolation problem (JSON).
    pub problem: PathBuf,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    /// Kernel powers: `3`, `1..5` or `1,2,4`.
    #[arg(long, default_value = "1")]
    pub m: String,
    /// Second target value(s); comma-separated or repeated.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub w2: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Interpolation problem (JSON).
    #[arg(required_unless_present = "evaluate", conflicts_with = "evaluate")]
    pub problem: Option<PathBuf>,
    /// Write the solution to this file.
    #[arg(long)]
    pub solution: Option<PathBuf>,
    /// Evaluate a saved solution (or a solve report) instead of solving.
    #[arg(long)]
    pub evaluate: Option<PathBuf>,
    /// Evaluation points for `--evaluate`.
    #[arg(long, requires = "evaluate", allow_hyphen_values = true)]
    pub at: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Multiplier specification: `{"coeffs": [[re, im], ...]}` for `Σ c_n n^{-s}`.
    #[arg(required_unless_present = "verify", conflicts_with = "verify")]
    pub phi: Option<PathBuf>,
    /// Sample points with Re > 1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// Held-out points for the reconstruction table.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Vec<String>,
    /// Write the model to this file.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Parameter of the T_lambda operators (|alpha| > 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Verify a saved model instead of building one.
    #[arg(long)]
    pub verify: Option<PathBuf>,
    /// Verification grid: `default` or a list of points.
    #[arg(long, default_value = "default", allow_hyphen_values = true)]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct SearchDirichletArgs {
    /// Interpolation problem (JSON) with nodes in Re > 1/2.
    pub problem: PathBuf,
    /// Length of the fitted Dirichlet polynomials.
    #[arg(long, default_value_t = 8)]
    pub length: usize,
    /// Constant Schur parameters h with |h| <= 1.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub h: Vec<String>,
    #[arg(long)]
    pub sigma0: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
}

/// Read a problem; tolerances missing from the file come from the config,
/// and an explicit `--tol` always wins.
pub fn load_problem(path: &Path, cfg: &RunConfig, tol_given: bool) -> Result<InterpolationProblem, CliError> {
    let text = read_text(path)?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| CliError::parse(path, &e))?;
    let mut p: InterpolationProblem = serde_json::from_str(&text).map_err(|e| CliError::parse(path, &e))?;
    if tol_given || raw.get("psd_tol").is_none() {
        p.psd_tol = cfg.psd_tol;
    }
    if raw.get("rank_tol").is_none() {
        p.rank_tol = cfg.rank_tol;
    }
    p.validate()?;
    Ok(p)
}

fn certificate_row(table: &mut Table, name: &str, c: &PickCertificate) {
    table.push(vec![
        name.into(),
        c.psd.into(),
        c.min_eigenvalue.into(),
        c.relative_margin.into(),
        c.numerical_rank.into(),
        c.inconclusive.into(),
        c.psd_tol.into(),
    ]);
}

const CERTIFICATE_COLUMNS: [&str; 7] = [
    "certificate",
    "psd",
    "min_eigenvalue",
    "relative_margin",
    "rank",
    "inconclusive",
    "psd_tol",
];

fn inconclusive_warning(report: &mut Report, name: &str, c: &PickCertificate) {
    if c.inconclusive {
        report.warnings.push(format!(
            "{name}: verdict inconclusive, min eigenvalue {:e} within 10x tolerance",
            c.min_eigenvalue
        ));
    }
}

pub fn zeta(args: &ZetaArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let points = parse_complex_list(&args.s)?;
    let tol = args.precision.unwrap_or(cfg.zeta_tol);
    let mut report = Report::new("zeta", cfg);
    report.arg("s", &points);
    report.arg("precision", tol);
    let zc = ZetaConfig::default();
    let mut table = Table::new(&["s_re", "s_im", "value_re", "value_im", "error_bound", "cutoff"]);
    let mut values = Vec::new();
    for s in points {
        let ev = zc.evaluate(s, tol)?;
        table.push(vec![
            s.re.into(),
            s.im.into(),
            ev.value.re.into(),
            ev.value.im.into(),
            ev.error_bound.into(),
            ev.cutoff.into(),
        ]);
        values.push(json!({
            "s": to_value(&s),
            "value": to_value(&ev.value),
            "error_bound": ev.error_bound,
            "cutoff": ev.cutoff,
        }));
    }
    report.result = Value::Array(values);
    report.table = table;
    Ok(report)
}

pub fn pick_check(args: &PickCheckArgs, cfg: &RunConfig, tol_given: bool) -> Result<Report, CliError> {
    let p = load_problem(&args.problem, cfg, tol_given)?;
    let mut report = Report::new("pick-check", cfg);
    report.arg("problem", args.problem.display().to_string());
    report.input = Some(to_value(&p));

    let own = p.certify()?;
    report.matrices.push((format!("pick matrix ({})", p.kernel.kind_name()), pick_matrix(&p)?));
    let mut table = Table::new(&CERTIFICATE_COLUMNS);
    certificate_row(&mut table, "kernel", &own);
    inconclusive_warning(&mut report, "kernel", &own);

    let applicable = !matches!(p.kernel, KernelSpec::SzegoDisc)
        && p.nodes.iter().all(|z| z.re > 0.5)
        && p.targets.iter().all(|w| w.norm() < 1.0);
    let necessary = if applicable {
        let r = theorem21_check(&p)?;
        report.matrices.push(("zeta condition".into(), r.cond_i.matrix.clone()));
        report.matrices.push(("szego condition".into(), r.cond_ii.matrix.clone()));
        certificate_row(&mut table, "zeta_condition", &r.cond_i);
        certificate_row(&mut table, "szego_condition", &r.cond_ii);
        inconclusive_warning(&mut report, "zeta_condition", &r.cond_i);
        inconclusive_warning(&mut report, "szego_condition", &r.cond_ii);
        Some(r)
    } else {
        report.warnings.push(
            "necessary conditions skipped: they need nodes in Re > 1/2 and targets in the open disc".into(),
        );
        None
    };

    let transfer = if matches!(p.kernel, KernelSpec::SzegoHalfPlane) {
        let t = lemma22_transfer(&p)?;
        certificate_row(&mut table, "disc_transfer", &t.q_certificate);
        if !t.psd_agree || !t.rank_agree {
            report
                .warnings
                .push("half-plane and disc verdicts disagree after the Cayley transfer".into());
        }
        if t.borderline {
            report.warnings.push("transfer verdicts are borderline".into());
        }
        Some(t)
    } else {
        None
    };

    report.result = json!({
        "kernel_certificate": to_value(&own),
        "necessary_conditions": to_value(&necessary),
        "transfer": to_value(&transfer),
    });
    report.table = table;
    Ok(report)
}

pub fn counterexample(args: &CounterexampleArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let powers = parse_powers(&args.m)?;
    if powers.contains(&0) {
        return Err(CliError::input("kernel powers start at 1"));
    }
    let targets = parse_complex_list(&args.w2)?;
    let mut report = Report::new("counterexample", cfg);
    report.arg("m", &powers);
    report.arg("w2", &targets);
    let mut table = Table::new(&[
        "m",
        "w2_re",
        "w2_im",
        "zeta_determinant",
        "szego_determinant",
        "zeta_min_eigenvalue",
        "szego_min_eigenvalue",
        "zeta_relative_margin",
        "holds",
        "inconclusive",
    ]);
    let mut certificates = Vec::new();
    for &m in &powers {
        for &w2 in &targets {
            let r = theorem12_certificate(m, w2)?;
            table.push(vec![
                m.into(),
                w2.re.into(),
                w2.im.into(),
                r.zeta_determinant.into(),
                r.szego_determinant.into(),
                r.zeta_certificate.min_eigenvalue.into(),
                r.szego_certificate.min_eigenvalue.into(),
                r.zeta_certificate.relative_margin.into(),
                r.holds.into(),
                r.inconclusive.into(),
            ]);
            if r.inconclusive {
                report.warnings.push(format!("m = {m}, w2 = {w2}: verdict within 10x tolerance"));
            }
            if !r.holds {
                report.status = "failed".into();
                report.exit_code = EXIT_FAILED;
            }
            certificates.push(r);
        }
    }
    report.result = to_value(&certificates);
    report.table = table;
    Ok(report)
}

pub fn solve(args: &SolveArgs, cfg: &RunConfig, tol_given: bool) -> Result<Report, CliError> {
    if let Some(path) = &args.evaluate {
        return evaluate_solution(path, &args.at, cfg);
    }
    let path = args.problem.as_ref().ok_or_else(|| CliError::usage("a problem file is required"))?;
    let p = load_problem(path, cfg, tol_given)?;
    let mut report = Report::new("solve", cfg);
    report.arg("problem", path.display().to_string());
    report.input = Some(to_value(&p));
    let outcome = solve_halfplane(&p)?;
    match &outcome {
        SolveOutcome::Solved(sol) => {
            let mut table = Table::new(&[
                "node_re", "node_im", "target_re", "target_im", "value_re", "value_im", "residual",
            ]);
            for (s, w) in sol.nodes.iter().zip(&sol.targets) {
                let v = sol.eval(*s)?;
                table.push(vec![
                    s.re.into(),
                    s.im.into(),
                    w.re.into(),
                    w.im.into(),
                    v.re.into(),
                    v.im.into(),
                    (v - w).norm().into(),
                ]);
            }
            report.table = table;
            report.warnings.extend(sol.disc.warnings.iter().cloned());
            if sol.disc.ill_conditioned {
                report.warnings.push("targets lie close to the unit circle; the solution is ill-conditioned".into());
            }
            if !sol.disc.schur_class.passes {
                report.warnings.push("boundary sampling did not certify |f| <= 1".into());
            }
            if let Some(out) = &args.solution {
                write_atomic(out, &json_text(sol))?;
                report.arg("solution", out.display().to_string());
            }
        }
        SolveOutcome::Infeasible { certificate } => {
            report.status = "infeasible".into();
            report.exit_code = EXIT_FAILED;
            report.matrices.push(("pick matrix".into(), certificate.matrix.clone()));
            let mut table = Table::new(&["index", "witness_re", "witness_im"]);
            for (i, x) in certificate.witness.iter().enumerate() {
                table.push(vec![i.into(), x.re.into(), x.im.into()]);
            }
            report.table = table;
            report.warnings.push(format!(
                "Pick matrix is not PSD: min eigenvalue {:e} (relative margin {:e})",
                certificate.min_eigenvalue, certificate.relative_margin
            ));
        }
    }
    report.result = to_value(&outcome);
    Ok(report)
}

fn json_text(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn evaluate_solution(path: &Path, at: &[String], cfg: &RunConfig) -> Result<Report, CliError> {
    let raw: Value = read_json(path)?;
    let body = match raw.get("result") {
        Some(r) if raw.get("schema").is_some() => r.clone(),
        _ => raw,
    };
    let sol: HalfPlaneSolution = serde_json::from_value(body).map_err(|e| CliError::parse(path, &e))?;
    let points = parse_complex_list(at)?;
    if points.is_empty() {
        return Err(CliError::usage("--evaluate needs at least one --at point"));
    }
    let mut report = Report::new("solve", cfg);
    report.arg("evaluate", path.display().to_string());
    report.arg("at", &points);
    let mut table = Table::new(&["s_re", "s_im", "value_re", "value_im"]);
    let mut values = Vec::new();
    for s in points {
        let v = sol.eval(s)?;
        table.push(vec![s.re.into(), s.im.into(), v.re.into(), v.im.into()]);
        values.push(json!({ "s": to_value(&s), "value": to_value(&v) }));
    }
    report.result = Value::Array(values);
    report.table = table;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiSpec {
    /// `c_1, c_2, …` of `Σ c_n n^{-s}`.
    pub coeffs: Vec<Complex64>,
    #[serde(default)]
    pub label: Option<String>,
}

/// `s_k = (1 + 0.3k) + (k - 3)i` for `k = 0..7`.
pub fn default_grid() -> Vec<Complex64> {
    (0..8).map(|k| Complex64::new(1.0 + 0.3 * k as f64, k as f64 - 3.0)).collect()
}

fn default_sample_points() -> Vec<Complex64> {
    vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(1.5, 1.0),
        Complex64::new(2.0, -0.5),
        Complex64::new(3.0, 2.0),
    ]
}

fn dirichlet_points(points: &[Complex64]) -> Result<Vec<HalfPlanePoint>, CliError> {
    points
        .iter()
        .map(|&z| HalfPlanePoint::dirichlet(z).map_err(CliError::from))
        .collect()
}

pub fn realize(args: &RealizeArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let alpha = Complex64::new(args.alpha.unwrap_or(DEFAULT_ALPHA), 0.0);
    if let Some(path) = &args.verify {
        return verify_model(path, &args.grid, alpha, cfg);
    }
    let path = args.phi.as_ref().ok_or_else(|| CliError::usage("a multiplier file is required"))?;
    let spec: PhiSpec = read_json(path)?;
    let label = spec.label.clone().unwrap_or_else(|| "phi".into());
    let series = CoefficientSeries::new(label, spec.coeffs.clone(), TailBound::Finite)?;
    let phi = TestMultiplier::new(series)?;

    let sample = if args.points.is_empty() {
        default_sample_points()
    } else {
        parse_complex_list(&args.points)?
    };
    let held_out = parse_complex_list(&args.at)?;
    let sample_pts = dirichlet_points(&sample)?;
    let held_pts = dirichlet_points(&held_out)?;

    let mut report = Report::new("realize", cfg);
    report.arg("phi", path.display().to_string());
    report.arg("points", &sample);
    report.arg("at", &held_out);
    report.arg("alpha", alpha.re);
    report.input = Some(to_value(&spec));

    let model = build_lurking_isometry(&phi, &sample_pts, cfg.trunc, cfg.gram_tol)?;
    let mut table = Table::new(&[
        "kind", "s_re", "s_im", "phi_re", "phi_im", "model_re", "model_im", "error", "neumann_bound",
    ]);
    let mut rows = Vec::new();
    for (kind, pts) in [("sample", &sample_pts), ("held_out", &held_pts)] {
        for p in pts.iter() {
            let exact = phi.eval(p.value())?;
            let got = evaluate_at(&model, p, alpha)?;
            let err = (got.value - exact).norm();
            table.push(vec![
                kind.into(),
                p.re().into(),
                p.value().im.into(),
                exact.re.into(),
                exact.im.into(),
                got.value.re.into(),
                got.value.im.into(),
                err.into(),
                got.neumann_bound.into(),
            ]);
            rows.push(json!({
                "kind": kind,
                "s": to_value(&p.value()),
                "phi": to_value(&exact),
                "model": to_value(&got.value),
                "error": err,
                "neumann_bound": got.neumann_bound,
            }));
        }
    }
    if !model.certificates.contraction_ok() {
        report.status = "failed".into();
        report.exit_code = EXIT_FAILED;
        report
            .warnings
            .push(format!("block matrix is not a contraction: sigma_max = {}", model.certificates.sigma_max));
    }
    match &args.model {
        Some(out) => {
            write_atomic(out, &json_text(&model))?;
            report.arg("model", out.display().to_string());
        }
        None => report.warnings.push("model not saved; pass --model PATH to keep it".into()),
    }
    report.result = json!({
        "n": model.n,
        "r": model.r,
        "declared_norm": phi.declared_norm,
        "certificates": to_value(&model.certificates),
        "reconstruction": rows,
    });
    report.table = table;
    Ok(report)
}

fn verify_model(path: &Path, grid: &str, alpha: Complex64, cfg: &RunConfig) -> Result<Report, CliError> {
    let model: RealizationModel = read_json(path)?;
    let points = if grid.trim() == "default" {
        default_grid()
    } else {
        parse_complex_list(&[grid.to_string()])?
    };
    let grid_pts = dirichlet_points(&points)?;
    let mut report = Report::new("realize", cfg);
    report.arg("verify", path.display().to_string());
    report.arg("grid", &points);
    report.arg("alpha", alpha.re);
    let v = verify_direction_ii_to_i(&model, &grid_pts, alpha, cfg.psd_tol)?;
    let mut table = Table::new(&["s_re", "s_im", "value_re", "value_im", "modulus"]);
    for (p, val) in v.grid.iter().zip(&v.values) {
        table.push(vec![p.re().into(), p.value().im.into(), val.re.into(), val.im.into(), val.norm().into()]);
    }
    if let Some(c) = &v.certificate {
        report.matrices.push(("(1 - phi conj(phi)) zeta".into(), c.matrix.clone()));
        inconclusive_warning(&mut report, "verification", c);
    }
    if !v.passes {
        report.status = "failed".into();
        report.exit_code = EXIT_FAILED;
        if let Some(f) = &v.failure {
            report.warnings.push(f.clone());
        }
    }
    report.result = to_value(&v);
    report.table = table;
    Ok(report)
}

pub fn search_dirichlet(args: &SearchDirichletArgs, cfg: &RunConfig, tol_given: bool) -> Result<Report, CliError> {
    let p = load_problem(&args.problem, cfg, tol_given)?;
    let hs = parse_complex_list(&args.h)?;
    if let Some(h) = hs.iter().find(|h| h.norm() > 1.0) {
        return Err(CliError::input(format!("Schur parameter {h} has modulus greater than 1")));
    }
    let defaults = DirichletFitConfig::default();
    let fit_cfg = DirichletFitConfig {
        sigma0: args.sigma0.unwrap_or(defaults.sigma0),
        height: args.height.unwrap_or(defaults.height),
        samples: args.samples.unwrap_or(defaults.samples),
    };
    let mut report = Report::new("search-dirichlet", cfg);
    report.arg("problem", args.problem.display().to_string());
    report.arg("length", args.length);
    report.arg("h", &hs);
    report.arg("fit", fit_cfg);
    report.input = Some(to_value(&p));

    let conditions = theorem21_check(&p)?;
    let mut table = Table::new(&["rank", "index", "label", "residual_rms", "relative_residual"]);
    let fits = if conditions.necessary_conditions_hold {
        let family: Vec<SchurParameter> = hs.iter().map(|&h| SchurParameter::constant(h)).collect();
        let fits = search_dirichlet_solution(&p, &family, args.length, &fit_cfg)?;
        for (rank, f) in fits.iter().enumerate() {
            table.push(vec![
                (rank + 1).into(),
                f.index.into(),
                f.label.clone().into(),
                f.residual_rms.into(),
                f.relative_residual.into(),
            ]);
        }
        report
            .warnings
            .push("least-squares residuals are exploratory and do not certify a Dirichlet-series solution".into());
        fits
    } else {
        report.status = "not_applicable".into();
        report.exit_code = EXIT_FAILED;
        report.warnings.push("necessary conditions (with full rank) do not hold; search skipped".into());
        Vec::new()
    };
    report.result = json!({
        "necessary_conditions": to_value(&conditions),
        "fits": to_value(&fits),
    });
    report.table = table;
    Ok(report)
}
