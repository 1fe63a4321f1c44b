//! `ldc`: doubling constants of measures on graphs from the command line.

mod report;
mod spec;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use doubling_core::path::{self, PathSolverConfig};
use doubling_core::window::WINDOW_BOUND;
use doubling_core::{
    c0_path_closed_form, distance_table, doubling_report, least_doubling, least_doubling_path,
    n_window_report, optimizer, poly_residual, power_iteration, solve_system, spectral,
    z_window_report, Error, Family, Graph, Measure, MeasureKind, PathMinimizerResult,
    QuotientWitness,
};

use report::{Format, Report};
use spec::{parse_range, GraphSpec, MeasureSpec};

/// Exit status and message of a failed run.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn computation(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse { .. } => Failure::usage(e.to_string()),
            _ => Failure::computation(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "ldc", version, about = "Doubling constants of measures on finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Tolerance. Bisection defaults to 1e-10; spectral and path root finding to 1e-12.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// C_mu and C0_mu of a measure on a graph.
    Doubling {
        /// path:N | cycle:N | star:N | complete:N | @FILE
        #[arg(long)]
        graph: String,
        /// counting | sine | lambda_alpha:A | @FILE
        #[arg(long, default_value = "counting")]
        measure: String,
        /// Emit every quotient.
        #[arg(long)]
        table: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Least doubling constant C_G by bisection.
    Least {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        common: Common,
    },
    /// Least doubling constant of the path L_n with a symmetric minimizer.
    Path {
        #[arg(long)]
        n: usize,
        /// Solve the minimizer system at this radius only.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// C0_G = 1 + lambda_1(A) and the Perron vector.
    Spectral {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        common: Common,
    },
    /// Quotients of a measure on a finite window of Z or N.
    Window {
        /// z (window [-W, W]) or n (window [1, W]).
        #[arg(long)]
        graph: String,
        #[arg(long)]
        width: usize,
        /// counting | sine | lambda_alpha:A | @FILE
        #[arg(long, conflicts_with = "alpha")]
        measure: Option<String>,
        /// Shorthand for `--measure lambda_alpha:A`.
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// CSV of n, C_{L_n}, C0_{L_n}, k* over an inclusive range.
    Sweep {
        /// A..B
        #[arg(long)]
        range: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("ldc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Doubling { graph, measure, table, common } => {
            doubling(&graph, &measure, table).map(|r| r.render(common.format))
        }
        Command::Least { graph, common } => least(&graph, common).map(|r| r.render(common.format)),
        Command::Path { n, k, common } => path_cmd(n, k, common).map(|r| r.render(common.format)),
        Command::Spectral { graph, common } => {
            spectral_cmd(&graph, common).map(|r| r.render(common.format))
        }
        Command::Window { graph, width, measure, alpha, common } => {
            let measure = match (measure, alpha) {
                (_, Some(a)) => MeasureSpec::Kind(MeasureKind::LambdaAlpha(a)),
                (Some(m), None) => MeasureSpec::parse(&m)?,
                (None, None) => MeasureSpec::Kind(MeasureKind::Counting),
            };
            window(&graph, width, &measure).map(|r| r.render(common.format))
        }
        Command::Sweep { range, common } => sweep(&range, common),
    }
}

fn check_tol(tol: Option<f64>) -> Result<(), Failure> {
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(Failure::usage(format!("tolerance {t} must be positive"))),
        _ => Ok(()),
    }
}

fn map(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

fn graph_input(spec: &str, g: &Graph) -> Map<String, Value> {
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect();
    map(json!({ "graph": spec, "n": g.order(), "edges": edges }))
}

/// Witness with a 1-based center.
fn witness_json(w: &QuotientWitness) -> Value {
    json!({
        "center": w.center + 1,
        "k": w.k,
        "numerator": w.numerator,
        "denominator": w.denominator,
        "ratio": w.ratio,
    })
}

fn doubling(graph: &str, measure: &str, table: bool) -> Result<Report, Failure> {
    let g = GraphSpec::parse(graph)?.build()?;
    let mu = MeasureSpec::parse(measure)?.build(g.order())?;
    let idx = distance_table(&g);
    let r = doubling_report(&idx, &mu, table)?;

    let mut input = graph_input(graph, &g);
    input.insert("measure".into(), json!(measure));
    input.insert("weights".into(), json!(mu.weights()));
    let mut witnesses = map(json!({
        "witness": r.witness.as_ref().map(witness_json),
        "witness0": r.witness0 + 1,
    }));
    if let Some(t) = &r.table {
        witnesses.insert("table".into(), Value::Array(t.iter().map(witness_json).collect()));
    }
    Ok(Report {
        input,
        result: map(json!({ "c_mu": r.c_mu, "c_mu0": r.c_mu0 })),
        witnesses,
        residuals: map(json!({ "c_mu_minus_c_mu0": r.c_mu - r.c_mu0 })),
    })
}

fn least(graph: &str, common: Common) -> Result<Report, Failure> {
    check_tol(common.tol)?;
    let tol = common.tol.unwrap_or(optimizer::DEFAULT_TOL);
    let g = GraphSpec::parse(graph)?.build()?;
    let r = least_doubling(&distance_table(&g), tol)?;

    let mut input = graph_input(graph, &g);
    input.insert("tol".into(), json!(tol));
    Ok(Report {
        input,
        result: map(json!({
            "c_estimate": r.c_estimate,
            "bracket": [r.bracket.0, r.bracket.1],
            "iterations": r.iterations,
            "constraint_count": r.constraint_count,
            "unverified_levels": r.unverified_levels,
        })),
        witnesses: map(json!({
            "minimizer": r.minimizer.weights(),
            "minimizer_c": r.minimizer_c,
        })),
        residuals: map(json!({
            "bracket_width": r.bracket.1 - r.bracket.0,
            "minimizer_excess": r.minimizer_c - r.c_estimate,
        })),
    })
}

fn path_result(r: &PathMinimizerResult) -> Result<Report, Failure> {
    let mut residuals = map(json!({
        "boundary_residual": r.boundary_residual,
        "m1_residual": r.m1_residual,
        "full_c_difference": r.full_c - r.c,
    }));
    if path::certificate_polynomial(r.n).is_some() {
        residuals.insert("poly_residual".into(), json!(poly_residual(r.n, r.c)?));
    }
    if let Some(cc) = &r.cross_check {
        residuals.insert("cross_check_difference".into(), json!(cc.difference));
    }
    Ok(Report {
        input: Map::new(),
        result: map(json!({
            "n": r.n,
            "k_star": r.k_star,
            "c": r.c,
            "full_c": r.full_c,
            "validated": r.validated,
            "weights": r.weights.weights(),
        })),
        witnesses: map(json!({
            "scan_log": r.scan_log,
            "cross_check": r.cross_check,
        })),
        residuals,
    })
}

fn path_config(common: Common) -> PathSolverConfig {
    PathSolverConfig {
        tol: common.tol.unwrap_or(path::DEFAULT_TOL),
        cross_check_tol: common.tol.unwrap_or(optimizer::DEFAULT_TOL),
        ..PathSolverConfig::default()
    }
}

fn path_cmd(n: usize, k: Option<usize>, common: Common) -> Result<Report, Failure> {
    check_tol(common.tol)?;
    let config = path_config(common);
    let r = match k {
        None => least_doubling_path(n, &config)?,
        Some(k) => solve_system(n, k, config.tol)?.ok_or_else(|| {
            Failure::computation(format!("no admissible root of the system for n = {n}, k = {k}"))
        })?,
    };
    let mut report = path_result(&r)?;
    report.input = map(json!({ "n": n, "k": k, "tol": config.tol }));
    Ok(report)
}

fn spectral_cmd(graph: &str, common: Common) -> Result<Report, Failure> {
    check_tol(common.tol)?;
    let tol = common.tol.unwrap_or(spectral::DEFAULT_TOL);
    let spec = GraphSpec::parse(graph)?;
    let g = spec.build()?;
    let r = power_iteration(&g, tol, spectral::DEFAULT_MAX_ITER)?;
    let c0 = 1.0 + r.lambda1;

    let mut input = graph_input(graph, &g);
    input.insert("tol".into(), json!(tol));
    let mut residuals = map(json!({ "residual": r.residual }));
    if let GraphSpec::Named(Family::Path, n) = spec {
        if n >= 2 {
            residuals.insert("closed_form_difference".into(), json!(c0 - c0_path_closed_form(n)?));
        }
    }
    Ok(Report {
        input,
        result: map(json!({ "lambda1": r.lambda1, "c0": c0, "iterations": r.iterations })),
        witnesses: map(json!({ "perron": r.perron.weights() })),
        residuals,
    })
}

fn window(graph: &str, width: usize, measure: &MeasureSpec) -> Result<Report, Failure> {
    let (r, mu): (_, Measure) = match graph {
        "z" => {
            let mu = measure.build(2 * width + 1)?;
            (z_window_report(width, &mu)?, mu)
        }
        "n" => {
            let mu = measure.build(width)?;
            (n_window_report(width, &mu)?, mu)
        }
        other => return Err(Failure::usage(format!("window graph `{other}` is not z or n"))),
    };
    let mut witness = witness_json(&r.witness);
    witness["center"] = json!(r.witness_label);
    Ok(Report {
        input: map(json!({ "graph": graph, "width": width, "weights": mu.weights() })),
        result: map(json!({
            "lattice": r.lattice,
            "window": [r.window.0, r.window.1],
            "max_quotient": r.max_quotient,
            "c0": r.c0,
            "all_quotients_bounded": r.all_quotients_bounded,
            "quotient_count": r.quotient_count,
        })),
        witnesses: map(json!({ "witness": witness })),
        residuals: map(json!({ "excess_over_bound": r.max_quotient - WINDOW_BOUND })),
    })
}

fn sweep(range: &str, common: Common) -> Result<String, Failure> {
    check_tol(common.tol)?;
    let (a, b) = parse_range(range)?;
    if a < 2 {
        return Err(Failure::usage("sweep starts at n = 2"));
    }
    let config = path_config(common);
    let mut rows = Vec::new();
    for n in a..=b {
        let r = least_doubling_path(n, &config)?;
        rows.push((n, r.c, c0_path_closed_form(n)?, r.k_star));
    }
    Ok(match common.format {
        Format::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|&(n, c, c0, k)| json!({ "n": n, "c": c, "c0": c0, "k_star": k }))
                .collect();
            Report {
                input: map(json!({ "range": [a, b], "tol": config.tol })),
                result: map(json!({ "rows": table })),
                ..Report::default()
            }
            .render(Format::Json)
        }
        Format::Csv | Format::Text => {
            let mut out = String::from("n,c,c0,k_star\n");
            for (n, c, c0, k) in rows {
                out.push_str(&format!("{n},{c:?},{c0:?},{k}\n"));
            }
            out
        }
    })
}
