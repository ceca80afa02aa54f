//! Command-line interface.
//!
//! Exit-code contract: `0` when every gating block passes, `1` on a numeric
//! failure or internal error (the failed block is named on stderr), `2` on
//! usage or parse errors. The canonical report JSON always goes to stdout;
//! wall time goes to stderr so reruns stay byte-identical; `--out DIR`
//! additionally writes `report.json` and any `series/*.csv`.

use std::path::PathBuf;
use std::time::Instant;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::suites::{cmd_invariants, cmd_suite, RunOutput, SuiteOpts, SUITE_NAMES};

const EPS_LIST_HELP: &str = "Shift-family eps values, comma separated: at least 5 positive \
values spanning a factor of 10 or more";

#[derive(Debug, Parser)]
#[command(
    name = "flowinv",
    version,
    about = "Invariants of volume-preserving model flows: helicity, Ruelle, entropy, \
local functionals, and certified perturbation suites",
    long_about = None,
    subcommand_required = true,
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Helicity (wedge + class consistency) and Ruelle (closed + numeric +
    /// convergence) on a toric-tube model file.
    #[command(after_help = "CSV written under --out:\n  \
series/ruelle_convergence.csv  columns: horizon,value,error,bound")]
    Invariants(InvariantsArgs),
    /// Run a named experiment suite on built-in model inputs.
    #[command(after_help = "CSV written under --out:\n  \
series/ruelle_shift_eps.csv  columns: eps,delta_ru,predicted        (ruelle-shift)\n  \
series/delta_h_scan.csv      columns: eps,dh_start_fixed,dh_end_fixed (ruelle-shift)\n  \
series/entropy_eps.csv       columns: eps,entropy_meanzero,entropy_const (entropy)")]
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Seed feeding every randomized draw in the run.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on worker threads for parallel kernels.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Directory for report.json and series/*.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    /// Model file; must hold a toric_tube record.
    #[arg(long)]
    pub model: PathBuf,
    /// Ruelle horizon T; the convergence study runs {T/8, T/4, T/2, T}, so
    /// T must be at least 80.
    #[arg(long, default_value_t = 200.0)]
    pub horizon: f64,
    /// Tolerance for the numeric-vs-closed Ruelle gate.
    #[arg(long, default_value_t = 0.01)]
    pub tol: f64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Suite to run.
    #[arg(value_parser = PossibleValuesParser::new(SUITE_NAMES))]
    pub name: String,
    /// Periodic-point order for entropy computations.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=12))]
    pub order: u32,
    #[arg(long, value_delimiter = ',', help = EPS_LIST_HELP)]
    pub eps_list: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Runs the CLI on the given argument vector and returns the process exit
/// code. `args` must include the program name in position zero.
pub fn run(args: impl IntoIterator<Item = String>) -> i32 {
    let argv: Vec<String> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command_line = render_command(&argv);

    if let Err(msg) = validate(&cli.command) {
        eprintln!("usage error: {msg}");
        return 2;
    }
    match &cli.command {
        Command::Invariants(a) => crate::parallel::configure_jobs(a.common.jobs),
        Command::Suite(a) => crate::parallel::configure_jobs(a.common.jobs),
    }

    let started = Instant::now();
    let result = match &cli.command {
        Command::Invariants(a) => {
            let opts = SuiteOpts { seed: a.common.seed, horizon: a.horizon, tol: a.tol, ..SuiteOpts::default() };
            cmd_invariants(&a.model, &command_line, &opts)
        }
        Command::Suite(a) => {
            let opts = SuiteOpts {
                seed: a.common.seed,
                order: a.order,
                eps_list: a.eps_list.clone(),
                ..SuiteOpts::default()
            };
            cmd_suite(&a.name, &command_line, &opts)
        }
    };
    let wall_ms = started.elapsed().as_millis() as u64;

    let mut output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::ModelFile { .. } | Error::Io(_) => 2,
                _ => 1,
            };
        }
    };
    output.report.wall_ms = Some(wall_ms);

    let json = output.report.to_json();
    print!("{json}");
    eprintln!("wall_ms: {wall_ms}");

    let out_dir = match &cli.command {
        Command::Invariants(a) => a.common.out.as_ref(),
        Command::Suite(a) => a.common.out.as_ref(),
    };
    if let Some(dir) = out_dir {
        if let Err(e) = write_outputs(dir, &json, &output) {
            eprintln!("error writing outputs under {}: {e}", dir.display());
            return 1;
        }
    }

    if output.report.all_pass() {
        0
    } else {
        // first_failure is Some whenever all_pass is false.
        eprintln!(
            "numeric failure in block: {}",
            output.report.first_failure().unwrap_or("unknown")
        );
        1
    }
}

fn validate(command: &Command) -> Result<(), String> {
    match command {
        Command::Invariants(a) => {
            if !(a.horizon >= 80.0 && a.horizon.is_finite()) {
                return Err(format!("--horizon {} must be a finite value >= 80", a.horizon));
            }
            if !(a.tol > 0.0 && a.tol.is_finite()) {
                return Err(format!("--tol {} must be a finite positive value", a.tol));
            }
        }
        Command::Suite(a) => {
            if let Some(eps) = &a.eps_list {
                let ok = eps.len() >= 5
                    && eps.iter().all(|&e| e.is_finite() && e > 0.0)
                    && eps.iter().cloned().fold(0.0f64, f64::max)
                        >= 10.0 * eps.iter().cloned().fold(f64::INFINITY, f64::min);
                if !ok {
                    return Err(format!("--eps-list {eps:?} invalid: {EPS_LIST_HELP}"));
                }
            }
        }
    }
    Ok(())
}

/// Normalizes position zero to the bare program name so reports do not
/// depend on the invocation path.
fn render_command(argv: &[String]) -> String {
    let mut parts: Vec<&str> = Vec::with_capacity(argv.len());
    let name = argv
        .first()
        .map(|p| {
            std::path::Path::new(p)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("flowinv")
        })
        .unwrap_or("flowinv");
    parts.push(name);
    parts.extend(argv.iter().skip(1).map(String::as_str));
    parts.join(" ")
}

fn write_outputs(dir: &std::path::Path, json: &str, output: &RunOutput) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), json)?;
    for (rel, contents) in &output.series {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, contents)?;
    }
    Ok(())
}
