//! `torusdet`: determinants, zeta values, validation and parameter scans
//! for the massive Laplace-type operator on a flat 2-torus.
//!
//! Exit codes: 0 success; 1 failed adjudicated validation check; 2 invalid
//! flags or unwritable output path; 3 domain error; 4 convergence-budget
//! failure (partial results are still emitted where available).
//!
//! Every flag is mirrored by a `TORUSDET_*` environment variable. Output is
//! deterministic for fixed inputs: fixed field order and floating-point
//! formatting at 17 significant digits.

// `!(x > 0.0)` rejects NaN tolerances as well as non-positive ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use torusdet_core::validate::{run_suite, CheckStatus};
use torusdet_core::zeta::{
    compare_routes, psi_value, zeta_direct, zeta_mellin, zeta_subtraction, DetReport, DetRoute,
    EvalOptions, ZetaResult,
};
use torusdet_core::{make_operator, Error, OperatorSpec};

const VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_BUDGET: u8 = 4;

/// 17 significant digits: lossless f64 round-trip, byte-stable output.
fn fx(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn fx_opt(x: Option<f64>) -> String {
    x.map(fx).unwrap_or_else(|| "null".to_string())
}

fn fx_csv(x: Option<f64>) -> String {
    x.map(fx).unwrap_or_default()
}

fn error_exit_code(e: &Error) -> u8 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_DOMAIN
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetRouteArg {
    Paper,
    Corrected,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZetaRouteArg {
    Direct,
    Mellin,
    Subtraction,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Real part τ₁ of the modulus.
    #[arg(long, env = "TORUSDET_TAU1", allow_hyphen_values = true)]
    tau1: f64,
    /// Imaginary part τ₂ of the modulus (must be > 0).
    #[arg(long, env = "TORUSDET_TAU2", allow_hyphen_values = true)]
    tau2: f64,
    /// Potential offset V₀ (must be > 0).
    #[arg(long, env = "TORUSDET_V0", allow_hyphen_values = true)]
    v0: f64,
}

impl SpecArgs {
    fn build(&self) -> Result<OperatorSpec, Error> {
        make_operator(self.tau1, self.tau2, self.v0)
    }
}

#[derive(Debug, Parser)]
#[command(name = "torusdet", version, about = "Zeta-regularized torus determinants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the determinant at one parameter point.
    Det {
        #[command(flatten)]
        spec: SpecArgs,
        /// Which ζ′(0) route backs the determinant.
        #[arg(long, value_enum, default_value = "all", env = "TORUSDET_ROUTE")]
        route: DetRouteArg,
        /// Target absolute tolerance.
        #[arg(long, default_value_t = 1e-8, env = "TORUSDET_TOL")]
        tol: f64,
        #[arg(long, value_enum, default_value = "text", env = "TORUSDET_FORMAT")]
        format: OutputFormat,
    },
    /// Evaluate ζ(s) at one argument.
    Zeta {
        #[command(flatten)]
        spec: SpecArgs,
        /// Re(s).
        #[arg(long = "s-re", env = "TORUSDET_S_RE", allow_hyphen_values = true)]
        s_re: f64,
        /// Im(s).
        #[arg(
            long = "s-im",
            default_value_t = 0.0,
            env = "TORUSDET_S_IM",
            allow_hyphen_values = true
        )]
        s_im: f64,
        /// Summation route; `subtraction` is valid for every s ≠ 1.
        #[arg(long, value_enum, default_value = "subtraction", env = "TORUSDET_ZETA_ROUTE")]
        route: ZetaRouteArg,
        #[arg(long, default_value_t = 1e-8, env = "TORUSDET_TOL")]
        tol: f64,
        #[arg(long, value_enum, default_value = "text", env = "TORUSDET_FORMAT")]
        format: OutputFormat,
    },
    /// Run the named identity/property suite.
    Validate {
        /// Tolerance override for route evaluations (tightening beyond the
        /// budgets surfaces as exit 4 with a partial table).
        #[arg(long, env = "TORUSDET_TOL")]
        tol: Option<f64>,
        /// Seed for the randomized specs.
        #[arg(long, default_value_t = 42, env = "TORUSDET_SEED")]
        seed: u64,
        #[arg(long, value_enum, default_value = "text", env = "TORUSDET_FORMAT")]
        format: OutputFormat,
    },
    /// Evaluate a parameter grid and write one record per point.
    Scan {
        /// τ₁ range as start:stop:steps.
        #[arg(long, env = "TORUSDET_TAU1_RANGE", allow_hyphen_values = true)]
        tau1: RangeArg,
        /// τ₂ range as start:stop:steps (entirely > 0).
        #[arg(long, env = "TORUSDET_TAU2_RANGE", allow_hyphen_values = true)]
        tau2: RangeArg,
        /// V₀ range as start:stop:steps (entirely > 0).
        #[arg(long, env = "TORUSDET_V0_RANGE", allow_hyphen_values = true)]
        v0: RangeArg,
        #[arg(long, value_enum, default_value = "all", env = "TORUSDET_ROUTE")]
        route: DetRouteArg,
        #[arg(long, default_value_t = 1e-8, env = "TORUSDET_TOL")]
        tol: f64,
        /// Output file path.
        #[arg(long, env = "TORUSDET_OUT")]
        out: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "csv", env = "TORUSDET_FORMAT")]
        format: OutputFormat,
    },
}

/// start:stop:steps with steps ≥ 1; steps = 1 collapses to `start`.
#[derive(Debug, Clone)]
struct RangeArg {
    start: f64,
    stop: f64,
    steps: usize,
}

impl FromStr for RangeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:steps, got '{s}'"));
        }
        let start: f64 = parts[0].parse().map_err(|e| format!("bad start: {e}"))?;
        let stop: f64 = parts[1].parse().map_err(|e| format!("bad stop: {e}"))?;
        let steps: usize = parts[2].parse().map_err(|e| format!("bad steps: {e}"))?;
        if steps < 1 {
            return Err("steps must be >= 1".to_string());
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err("range endpoints must be finite".to_string());
        }
        Ok(RangeArg { start, stop, steps })
    }
}

impl RangeArg {
    /// Grid values, sorted ascending so emission order is lexicographic.
    fn values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = if self.steps == 1 {
            vec![self.start]
        } else {
            (0..self.steps)
                .map(|i| {
                    self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64
                })
                .collect()
        };
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Det {
            spec,
            route,
            tol,
            format,
        } => cmd_det(&spec, route, tol, format),
        Command::Zeta {
            spec,
            s_re,
            s_im,
            route,
            tol,
            format,
        } => cmd_zeta(&spec, s_re, s_im, route, tol, format),
        Command::Validate { tol, seed, format } => cmd_validate(tol, seed, format),
        Command::Scan {
            tau1,
            tau2,
            v0,
            route,
            tol,
            out,
            format,
        } => cmd_scan(&tau1, &tau2, &v0, route, tol, &out, format),
    };
    ExitCode::from(code)
}

// ---------------------------------------------------------------------------
// det
// ---------------------------------------------------------------------------

fn empty_report(spec: OperatorSpec, opts: EvalOptions) -> DetReport {
    DetReport {
        spec,
        psi_paper: None,
        psi_closed: None,
        psi_corrected: None,
        psi_oracle: None,
        det_paper: None,
        det_corrected: None,
        det_oracle: None,
        residual_paper_vs_oracle: None,
        residual_corrected_vs_oracle: None,
        err_psi_paper: None,
        err_psi_closed: None,
        err_psi_corrected: None,
        err_psi_oracle: None,
        route_errors: Vec::new(),
        options: opts,
    }
}

fn det_report_for(spec: &OperatorSpec, route: DetRouteArg, opts: &EvalOptions) -> DetReport {
    match route {
        DetRouteArg::All => compare_routes(spec, opts),
        single => {
            let r = match single {
                DetRouteArg::Paper => DetRoute::Paper,
                DetRouteArg::Corrected => DetRoute::Corrected,
                DetRouteArg::Oracle => DetRoute::Oracle,
                DetRouteArg::All => unreachable!(),
            };
            let mut report = empty_report(*spec, *opts);
            match psi_value(spec, r, opts) {
                Ok((psi, err)) => {
                    let det = (-psi).exp();
                    match r {
                        DetRoute::Paper => {
                            report.psi_paper = Some(psi);
                            report.err_psi_paper = Some(err);
                            report.det_paper = Some(det);
                        }
                        DetRoute::Corrected => {
                            report.psi_corrected = Some(psi);
                            report.err_psi_corrected = Some(err);
                            report.det_corrected = Some(det);
                        }
                        DetRoute::Oracle => {
                            report.psi_oracle = Some(psi);
                            report.err_psi_oracle = Some(err);
                            report.det_oracle = Some(det);
                        }
                    }
                }
                Err(e) => report.route_errors.push(format!("{r}: {e}")),
            }
            report
        }
    }
}

const DET_COLUMNS: [&str; 18] = [
    "schema",
    "version",
    "tau1",
    "tau2",
    "v0",
    "tol",
    "psi_paper",
    "psi_closed",
    "psi_corrected",
    "psi_oracle",
    "det_paper",
    "det_corrected",
    "det_oracle",
    "residual_paper_vs_oracle",
    "residual_corrected_vs_oracle",
    "err_psi_paper",
    "err_psi_corrected",
    "err_psi_oracle",
];

fn det_csv_row(r: &DetReport) -> String {
    [
        "torusdet.det.v1".to_string(),
        VERSION.to_string(),
        fx(r.spec.tau1),
        fx(r.spec.tau2),
        fx(r.spec.v0),
        fx(r.options.tol),
        fx_csv(r.psi_paper),
        fx_csv(r.psi_closed),
        fx_csv(r.psi_corrected),
        fx_csv(r.psi_oracle),
        fx_csv(r.det_paper),
        fx_csv(r.det_corrected),
        fx_csv(r.det_oracle),
        fx_csv(r.residual_paper_vs_oracle),
        fx_csv(r.residual_corrected_vs_oracle),
        fx_csv(r.err_psi_paper),
        fx_csv(r.err_psi_corrected),
        fx_csv(r.err_psi_oracle),
    ]
    .join(",")
}

fn det_json(r: &DetReport) -> String {
    let mut s = String::from("{\n");
    s.push_str("  \"schema\": \"torusdet.det.v1\",\n");
    s.push_str(&format!("  \"version\": \"{VERSION}\",\n"));
    s.push_str(&format!("  \"tau1\": {},\n", fx(r.spec.tau1)));
    s.push_str(&format!("  \"tau2\": {},\n", fx(r.spec.tau2)));
    s.push_str(&format!("  \"v0\": {},\n", fx(r.spec.v0)));
    s.push_str(&format!("  \"tol\": {},\n", fx(r.options.tol)));
    s.push_str(&format!("  \"psi_paper\": {},\n", fx_opt(r.psi_paper)));
    s.push_str(&format!("  \"psi_closed\": {},\n", fx_opt(r.psi_closed)));
    s.push_str(&format!(
        "  \"psi_corrected\": {},\n",
        fx_opt(r.psi_corrected)
    ));
    s.push_str(&format!("  \"psi_oracle\": {},\n", fx_opt(r.psi_oracle)));
    s.push_str(&format!("  \"det_paper\": {},\n", fx_opt(r.det_paper)));
    s.push_str(&format!(
        "  \"det_corrected\": {},\n",
        fx_opt(r.det_corrected)
    ));
    s.push_str(&format!("  \"det_oracle\": {},\n", fx_opt(r.det_oracle)));
    s.push_str(&format!(
        "  \"residual_paper_vs_oracle\": {},\n",
        fx_opt(r.residual_paper_vs_oracle)
    ));
    s.push_str(&format!(
        "  \"residual_corrected_vs_oracle\": {},\n",
        fx_opt(r.residual_corrected_vs_oracle)
    ));
    s.push_str(&format!(
        "  \"err_psi_paper\": {},\n",
        fx_opt(r.err_psi_paper)
    ));
    s.push_str(&format!(
        "  \"err_psi_corrected\": {},\n",
        fx_opt(r.err_psi_corrected)
    ));
    s.push_str(&format!(
        "  \"err_psi_oracle\": {},\n",
        fx_opt(r.err_psi_oracle)
    ));
    s.push_str(&format!(
        "  \"route_errors\": [{}]\n",
        r.route_errors
            .iter()
            .map(|e| format!("\"{}\"", e.replace('"', "'")))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    s.push('}');
    s
}

fn det_text(r: &DetReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "operator: tau = {} + {}i, v0 = {}\n",
        r.spec.tau1, r.spec.tau2, r.spec.v0
    ));
    let row = |label: &str, psi: Option<f64>, det: Option<f64>, err: Option<f64>| {
        format!(
            "  {label:<10} psi = {:<24} det = {:<24} err <= {}\n",
            fx_opt(psi),
            fx_opt(det),
            fx_opt(err)
        )
    };
    s.push_str(&row("paper", r.psi_paper, r.det_paper, r.err_psi_paper));
    s.push_str(&row("closed", r.psi_closed, None, r.err_psi_closed));
    s.push_str(&row(
        "corrected",
        r.psi_corrected,
        r.det_corrected,
        r.err_psi_corrected,
    ));
    s.push_str(&row("oracle", r.psi_oracle, r.det_oracle, r.err_psi_oracle));
    if let Some(x) = r.residual_paper_vs_oracle {
        s.push_str(&format!("  |psi_paper - psi_oracle|     = {}\n", fx(x)));
    }
    if let Some(x) = r.residual_corrected_vs_oracle {
        s.push_str(&format!("  |psi_corrected - psi_oracle| = {}\n", fx(x)));
    }
    for e in &r.route_errors {
        s.push_str(&format!("  route error: {e}\n"));
    }
    s
}

fn cmd_det(spec_args: &SpecArgs, route: DetRouteArg, tol: f64, format: OutputFormat) -> u8 {
    let spec = match spec_args.build() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("torusdet det: {e}");
            return EXIT_DOMAIN;
        }
    };
    if !(tol > 0.0) {
        eprintln!("torusdet det: tolerance must be positive");
        return EXIT_DOMAIN;
    }
    let opts = EvalOptions::with_tol(tol);
    let report = det_report_for(&spec, route, &opts);
    match format {
        OutputFormat::Text => print!("{}", det_text(&report)),
        OutputFormat::Json => println!("{}", det_json(&report)),
        OutputFormat::Csv => {
            println!("{}", DET_COLUMNS.join(","));
            println!("{}", det_csv_row(&report));
        }
    }
    if report.route_errors.is_empty() {
        0
    } else {
        EXIT_BUDGET
    }
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

fn cmd_zeta(
    spec_args: &SpecArgs,
    s_re: f64,
    s_im: f64,
    route: ZetaRouteArg,
    tol: f64,
    format: OutputFormat,
) -> u8 {
    let spec = match spec_args.build() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("torusdet zeta: {e}");
            return EXIT_DOMAIN;
        }
    };
    if !(tol > 0.0) {
        eprintln!("torusdet zeta: tolerance must be positive");
        return EXIT_DOMAIN;
    }
    let s = Complex64::new(s_re, s_im);
    let result: Result<ZetaResult, Error> = match route {
        ZetaRouteArg::Direct => zeta_direct(&spec, s, tol),
        ZetaRouteArg::Mellin => zeta_mellin(&spec, s, tol),
        ZetaRouteArg::Subtraction => zeta_subtraction(&spec, s, tol),
    };
    let z = match result {
        Ok(z) => z,
        Err(e) => {
            eprintln!("torusdet zeta: {e}");
            return error_exit_code(&e);
        }
    };
    match format {
        OutputFormat::Text => {
            println!(
                "zeta({} + {}i) = {} + {}i  (abs_error <= {}, route = {})",
                fx(z.s.re),
                fx(z.s.im),
                fx(z.value.re),
                fx(z.value.im),
                fx(z.abs_error),
                z.route
            );
        }
        OutputFormat::Json => {
            println!(
                "{{\n  \"schema\": \"torusdet.zeta.v1\",\n  \"version\": \"{VERSION}\",\n  \"tau1\": {},\n  \"tau2\": {},\n  \"v0\": {},\n  \"s_re\": {},\n  \"s_im\": {},\n  \"value_re\": {},\n  \"value_im\": {},\n  \"abs_error\": {},\n  \"route\": \"{}\"\n}}",
                fx(spec.tau1),
                fx(spec.tau2),
                fx(spec.v0),
                fx(z.s.re),
                fx(z.s.im),
                fx(z.value.re),
                fx(z.value.im),
                fx(z.abs_error),
                z.route
            );
        }
        OutputFormat::Csv => {
            println!("schema,version,tau1,tau2,v0,s_re,s_im,value_re,value_im,abs_error,route");
            println!(
                "torusdet.zeta.v1,{VERSION},{},{},{},{},{},{},{},{},{}",
                fx(spec.tau1),
                fx(spec.tau2),
                fx(spec.v0),
                fx(z.s.re),
                fx(z.s.im),
                fx(z.value.re),
                fx(z.value.im),
                fx(z.abs_error),
                z.route
            );
        }
    }
    0
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

fn cmd_validate(tol: Option<f64>, seed: u64, format: OutputFormat) -> u8 {
    if let Some(t) = tol {
        if !(t > 0.0) {
            eprintln!("torusdet validate: tolerance must be positive");
            return EXIT_DOMAIN;
        }
    }
    let outcome = run_suite(seed, tol);
    let status_str = |s: CheckStatus| match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Report => "report",
    };
    match format {
        OutputFormat::Text => {
            println!(
                "{:<44} {:>24} {:>24} {:>8}",
                "check", "residual", "tolerance", "status"
            );
            for c in &outcome.checks {
                println!(
                    "{:<44} {:>24} {:>24} {:>8}",
                    c.name,
                    fx(c.residual),
                    c.tolerance.map(fx).unwrap_or_else(|| "-".to_string()),
                    status_str(c.status)
                );
            }
            for b in &outcome.budget_failures {
                println!("budget failure: {b}");
            }
        }
        OutputFormat::Json => {
            let mut s = String::from("{\n");
            s.push_str("  \"schema\": \"torusdet.validate.v1\",\n");
            s.push_str(&format!("  \"version\": \"{VERSION}\",\n"));
            s.push_str(&format!("  \"seed\": {seed},\n"));
            s.push_str("  \"checks\": [\n");
            for (i, c) in outcome.checks.iter().enumerate() {
                s.push_str(&format!(
                    "    {{\"name\": \"{}\", \"residual\": {}, \"tolerance\": {}, \"status\": \"{}\"}}{}\n",
                    c.name,
                    fx(c.residual),
                    c.tolerance.map(fx).unwrap_or_else(|| "null".to_string()),
                    status_str(c.status),
                    if i + 1 < outcome.checks.len() { "," } else { "" }
                ));
            }
            s.push_str("  ],\n");
            s.push_str(&format!(
                "  \"budget_failures\": [{}]\n",
                outcome
                    .budget_failures
                    .iter()
                    .map(|e| format!("\"{}\"", e.replace('"', "'")))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            s.push('}');
            println!("{s}");
        }
        OutputFormat::Csv => {
            println!("schema,name,residual,tolerance,status");
            for c in &outcome.checks {
                println!(
                    "torusdet.validate.v1,{},{},{},{}",
                    c.name,
                    fx(c.residual),
                    c.tolerance.map(fx).unwrap_or_default(),
                    status_str(c.status)
                );
            }
        }
    }
    if !outcome.budget_failures.is_empty() {
        EXIT_BUDGET
    } else if outcome.all_adjudicated_pass() {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct RunRecord {
    report: DetReport,
    status: String,
    error: String,
    wall_ms: u64,
}

const SCAN_COLUMNS: [&str; 21] = [
    "schema",
    "version",
    "tau1",
    "tau2",
    "v0",
    "route",
    "tol",
    "psi_paper",
    "psi_closed",
    "psi_corrected",
    "psi_oracle",
    "det_paper",
    "det_corrected",
    "det_oracle",
    "residual_paper_vs_oracle",
    "residual_corrected_vs_oracle",
    "err_psi_paper",
    "err_psi_corrected",
    "err_psi_oracle",
    "status",
    "wall_ms",
];

fn cmd_scan(
    tau1: &RangeArg,
    tau2: &RangeArg,
    v0: &RangeArg,
    route: DetRouteArg,
    tol: f64,
    out: &std::path::Path,
    format: OutputFormat,
) -> u8 {
    for (label, r) in [("tau2", tau2), ("v0", v0)] {
        if r.start <= 0.0 || r.stop <= 0.0 {
            eprintln!("torusdet scan: {label} range must be entirely positive");
            return EXIT_DOMAIN;
        }
    }
    if !(tol > 0.0) {
        eprintln!("torusdet scan: tolerance must be positive");
        return EXIT_DOMAIN;
    }
    let opts = EvalOptions::with_tol(tol);
    let mut points = Vec::new();
    for a in tau1.values() {
        for b in tau2.values() {
            for c in v0.values() {
                points.push((a, b, c));
            }
        }
    }
    let route_label = match route {
        DetRouteArg::Paper => "paper",
        DetRouteArg::Corrected => "corrected",
        DetRouteArg::Oracle => "oracle",
        DetRouteArg::All => "all",
    };

    // Grid points are independent; evaluate in parallel, emit in grid order.
    let records: Vec<RunRecord> = torusdet_core::parallel::map_ordered(&points, |&(a, b, c)| {
        let started = std::time::Instant::now();
        let (report, status, error) = match make_operator(a, b, c) {
            Ok(spec) => {
                let rep = det_report_for(&spec, route, &opts);
                if rep.route_errors.is_empty() {
                    (rep, "ok".to_string(), String::new())
                } else {
                    let msg = rep.route_errors.join("; ");
                    (rep, "budget_error".to_string(), msg)
                }
            }
            Err(e) => {
                let mut rep = empty_report(OperatorSpec { tau1: a, tau2: b, v0: c }, opts);
                rep.route_errors.push(format!("{e}"));
                (rep, "domain_error".to_string(), format!("{e}"))
            }
        };
        RunRecord {
            report,
            status,
            error,
            wall_ms: started.elapsed().as_millis() as u64,
        }
    });

    let body = match format {
        OutputFormat::Csv | OutputFormat::Text => {
            let mut s = String::new();
            s.push_str(&SCAN_COLUMNS.join(","));
            s.push('\n');
            for rec in &records {
                let r = &rec.report;
                let row = [
                    "torusdet.scan.v1".to_string(),
                    VERSION.to_string(),
                    fx(r.spec.tau1),
                    fx(r.spec.tau2),
                    fx(r.spec.v0),
                    route_label.to_string(),
                    fx(r.options.tol),
                    fx_csv(r.psi_paper),
                    fx_csv(r.psi_closed),
                    fx_csv(r.psi_corrected),
                    fx_csv(r.psi_oracle),
                    fx_csv(r.det_paper),
                    fx_csv(r.det_corrected),
                    fx_csv(r.det_oracle),
                    fx_csv(r.residual_paper_vs_oracle),
                    fx_csv(r.residual_corrected_vs_oracle),
                    fx_csv(r.err_psi_paper),
                    fx_csv(r.err_psi_corrected),
                    fx_csv(r.err_psi_oracle),
                    rec.status.clone(),
                    rec.wall_ms.to_string(),
                ];
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
        OutputFormat::Json => {
            let mut s = String::from("{\n");
            s.push_str("  \"schema\": \"torusdet.scan.v1\",\n");
            s.push_str(&format!("  \"version\": \"{VERSION}\",\n"));
            s.push_str(&format!("  \"route\": \"{route_label}\",\n"));
            s.push_str("  \"records\": [\n");
            for (i, rec) in records.iter().enumerate() {
                let j = det_json(&rec.report)
                    .replace("torusdet.det.v1", "torusdet.scan.v1")
                    .replace(
                        "\"route_errors\"",
                        &format!(
                            "\"status\": \"{}\", \"error\": \"{}\", \"wall_ms\": {}, \"route_errors\"",
                            rec.status,
                            rec.error.replace('"', "'"),
                            rec.wall_ms
                        ),
                    );
                let j = j
                    .lines()
                    .map(|l| format!("    {l}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                s.push_str(&j);
                s.push_str(if i + 1 < records.len() { ",\n" } else { "\n" });
            }
            s.push_str("  ]\n}");
            s
        }
    };

    let mut file = match std::fs::File::create(out) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("torusdet scan: cannot write {}: {e}", out.display());
            return EXIT_USAGE;
        }
    };
    if let Err(e) = file.write_all(body.as_bytes()) {
        eprintln!("torusdet scan: write failed: {e}");
        return EXIT_USAGE;
    }
    println!("wrote {} records to {}", records.len(), out.display());
    if records.iter().any(|r| r.status == "budget_error") {
        EXIT_BUDGET
    } else {
        0
    }
}
