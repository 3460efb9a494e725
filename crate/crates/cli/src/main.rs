//! `fgr` — verification front end.
//!
//! Exit status: 0 when every executed verification passes (exact symbolic
//! matches and numeric residuals inside tolerance), 1 when any claim fails
//! (with a machine-readable failure list on stdout), 2 on usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use fgr_core::basisreduce::reduce_full;
use fgr_core::pipeline::{Pipeline, VerificationReport};
use fgr_core::parse::parse_basis_expr;
use fgr_core::quadrature::QuadConfig;

#[derive(Debug, Parser)]
#[command(name = "fgr")]
#[command(about = "Exact and numerical verification of the Fermi Golden Rule constant for the cubic NLS")]
struct Cli {
    /// Absolute tolerance per integral for the quadrature oracle.
    #[arg(long, global = true, default_value_t = 1e-10, env = "FGR_TOL")]
    tol: f64,

    /// Half-width of the truncated integration window [-X, X].
    #[arg(long, global = true, default_value_t = 40.0, env = "FGR_TRUNCATION")]
    truncation: f64,

    /// Also write the JSON report to this path.
    #[arg(long, global = true, env = "FGR_JSON")]
    json: Option<PathBuf>,

    /// Verify claims concurrently (the report is identical either way,
    /// timing fields aside).
    #[arg(long, global = true, env = "FGR_PARALLEL")]
    parallel: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify the whole claim table, or a single claim by id.
    Verify {
        /// Claim id, e.g. gamma_151, prop_1st, redsr_r7. Omit (or pass
        /// "all") for the whole table.
        claim: Option<String>,
    },

    /// Rewrite a basis-integral combination to the core basis {p1,q1,a1,r1,s1}.
    Reduce {
        /// Expression such as "r3" or "2*sqrt2*b3 - b5".
        expr: String,
    },

    /// Numerically integrate a basis-integral combination.
    Eval {
        /// Expression such as "p1" or "(-13*log2 - 71)*sqrt2*p3".
        expr: String,
    },

    /// Print the headline constants.
    Constants,

    /// Verify everything and write the JSON report to PATH.
    Report { path: PathBuf },
}

/// JSON report schema. Exact coefficients are rendered as strings with
/// symbolic sqrt2/log2; fractions stay exact.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct ReportJson {
    claims: Vec<ClaimJson>,
    gamma: GammaJson,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct ClaimJson {
    id: String,
    stage: String,
    exact_match: bool,
    symbolic_residual: String,
    computed: String,
    expected: String,
    numeric_residual: f64,
    error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    direct_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    direct_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    adjudication: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    anomalies: Vec<String>,
    passed: bool,
    elapsed_ms: f64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct GammaJson {
    symbolic: String,
    numeric: f64,
    closed_form: f64,
    abs_diff: f64,
    direct_sum: f64,
    p1: f64,
    c0: f64,
}

fn claim_json(r: &VerificationReport, tol: f64) -> ClaimJson {
    ClaimJson {
        id: r.id.clone(),
        stage: r.stage.as_str().to_string(),
        exact_match: r.exact_match,
        symbolic_residual: r.symbolic_residual.to_string(),
        computed: r.computed.to_string(),
        expected: r.expected.to_string(),
        numeric_residual: r.numeric_residual,
        error_estimate: r.quadrature_error_estimate,
        direct_value: r.direct_value,
        direct_residual: r.direct_residual,
        adjudication: r.adjudication.map(|a| a.as_str().to_string()),
        anomalies: r.anomalies.clone(),
        passed: r.passes(tol),
        elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
    }
}

fn build_report(pipeline: &Pipeline, reports: &[VerificationReport]) -> Result<ReportJson> {
    let gamma_sym = pipeline
        .gamma_symbolic()
        .map(|c| c.to_string())
        .unwrap_or_else(|e| format!("FAILED: {e}"));
    let gn = pipeline.gamma_numeric()?;
    let c0 = pipeline.c0_numeric()?;
    Ok(ReportJson {
        claims: reports
            .iter()
            .map(|r| claim_json(r, pipeline.numeric_tol()))
            .collect(),
        gamma: GammaJson {
            symbolic: gamma_sym,
            numeric: gn.via_p1,
            closed_form: gn.closed_form,
            abs_diff: gn.abs_diff,
            direct_sum: gn.direct_sum,
            p1: gn.p1,
            c0: c0.value,
        },
    })
}

fn write_report(path: &Path, report: &ReportJson) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    std::fs::write(path, text).with_context(|| format!("writing report to {}", path.display()))?;
    Ok(())
}

fn run_verification(
    pipeline: &Pipeline,
    claim: Option<&str>,
    parallel: bool,
    json: Option<&Path>,
) -> Result<ExitCode> {
    let reports = match claim {
        Some(id) => vec![pipeline.verify_claim(id)?],
        None => pipeline.verify_all(parallel)?,
    };
    let tol = pipeline.numeric_tol();
    let mut failures = Vec::new();
    for r in &reports {
        let ok = r.passes(tol);
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<16} stage={:<19} exact={} numeric_residual={:.3e}{}",
            r.id,
            r.stage.as_str(),
            r.exact_match,
            r.numeric_residual,
            match r.direct_residual {
                Some(d) => format!(" direct_residual={d:.3e}"),
                None => String::new(),
            }
        );
        if !ok {
            failures.push(r);
        }
    }
    println!(
        "{} of {} claims passed (numeric tolerance {:.1e})",
        reports.len() - failures.len(),
        reports.len(),
        tol
    );

    if claim.is_none() {
        let gn = pipeline.gamma_numeric()?;
        match pipeline.gamma_symbolic() {
            Ok(g) => println!("Gamma = {g} exactly; numerically {:.12} vs closed form {:.12}", gn.via_p1, gn.closed_form),
            Err(e) => {
                println!("Gamma cancellation FAILED: {e}");
                return Ok(ExitCode::from(1));
            }
        }
    }

    if let Some(path) = json {
        write_report(path, &build_report(pipeline, &reports)?)?;
        println!("report written to {}", path.display());
    }

    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        // Machine-readable failure list.
        let list: Vec<_> = failures.iter().map(|r| claim_json(r, tol)).collect();
        println!("{}", serde_json::to_string_pretty(&list)?);
        Ok(ExitCode::from(1))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = QuadConfig {
        abs_tol: cli.tol,
        truncation_radius: cli.truncation,
        ..QuadConfig::default()
    };
    cfg.validate().map_err(|e| anyhow!(e))?;
    let pipeline = Pipeline::new(cfg)?;

    match &cli.command {
        Command::Verify { claim } => {
            let claim = claim.as_deref().filter(|c| *c != "all");
            run_verification(&pipeline, claim, cli.parallel, cli.json.as_deref())
        }
        Command::Report { path } => {
            run_verification(&pipeline, None, cli.parallel, Some(path.as_path()))
        }
        Command::Reduce { expr } => {
            let combo = parse_basis_expr(expr)?;
            println!("{}", reduce_full(&combo));
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { expr } => {
            let combo = parse_basis_expr(expr)?;
            let r = pipeline.oracle().eval_combo(&combo)?;
            println!(
                "{:.15}  (error estimate {:.3e}, {} integrand evaluations)",
                r.value, r.error_estimate, r.evaluations
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Constants => {
            let gamma = pipeline.gamma_symbolic()?;
            let gn = pipeline.gamma_numeric()?;
            let c0 = pipeline.c0_numeric()?;
            println!("Gamma (exact)      = {gamma}");
            println!(
                "Gamma (via p1)     = {:.15}   |diff to closed form| = {:.3e}",
                gn.via_p1, gn.abs_diff
            );
            println!(
                "Gamma (direct sum) = {:.15}   |diff to closed form| = {:.3e}",
                gn.direct_sum, gn.direct_abs_diff
            );
            println!("pi/(sqrt2*cosh(pi/2)) = {:.15}", gn.closed_form);
            println!("p1                 = {:.15}   (closed form pi*sech(pi/2))", gn.p1);
            println!(
                "c0                 = {:.15}   (T-path difference {:.3e})",
                c0.value, c0.path_difference
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
