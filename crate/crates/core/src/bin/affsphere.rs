//! `affsphere verify <suite>`: run a verification suite and write a report.
//!
//! Exit status is 0 when every check passes, 1 when any check fails and 2 on
//! usage or configuration errors. Every flag can also be set through an
//! `AFFSPHERE_*` environment variable; flags and variables override values
//! read from `--config`.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use affsphere::suite::{all_passed, emit_report, run_suite, ReportFormat, SuiteConfig, SuiteError};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "affsphere", version, about = "Seeded numerical checks for the hyperboloid affine sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite: all, cone, embedding, rep, bundle, harmonic, duality, wp, cocycle.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long, env = "AFFSPHERE_SAMPLES")]
    samples: Option<usize>,
    #[arg(long, env = "AFFSPHERE_SEED")]
    seed: Option<u64>,
    /// Tolerance for closed-form checks.
    #[arg(long, env = "AFFSPHERE_TOL")]
    tol: Option<f64>,
    /// Tolerance for finite-difference checks.
    #[arg(long, env = "AFFSPHERE_TOL_FD")]
    tol_fd: Option<f64>,
    #[arg(long, env = "AFFSPHERE_FD_STEP")]
    fd_step: Option<f64>,
    #[arg(long, env = "AFFSPHERE_MAX_DEGREE")]
    max_degree: Option<usize>,
    /// Report format: json or md.
    #[arg(long, env = "AFFSPHERE_OUTPUT", default_value = "json")]
    output: String,
    /// Write the report here instead of stdout.
    #[arg(long, env = "AFFSPHERE_OUT")]
    out: Option<PathBuf>,
    /// Flat `key = value` configuration file.
    #[arg(long, env = "AFFSPHERE_CONFIG")]
    config: Option<PathBuf>,
    /// Record wall-clock time per check (makes reports non-reproducible).
    #[arg(long, env = "AFFSPHERE_TIMINGS")]
    timings: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Io(_) | SuiteError::Json(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn build_config(args: &VerifyArgs) -> Result<SuiteConfig, Failure> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_file(&text)?;
    }
    if let Some(v) = args.samples {
        cfg.samples = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.tol {
        cfg.tol_analytic = v;
    }
    if let Some(v) = args.tol_fd {
        cfg.tol_fd = v;
    }
    if let Some(v) = args.fd_step {
        cfg.fd_step = v;
    }
    if let Some(v) = args.max_degree {
        cfg.max_degree = v;
    }
    cfg.timings |= args.timings;
    cfg.validate()?;
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let format: ReportFormat = args.output.parse()?;
    let cfg = build_config(args)?;
    let results = run_suite(&args.suite, &cfg)?;
    match &args.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", path.display())))?;
            emit_report(&results, &cfg, format, &mut file)?;
            let passed = results.iter().filter(|r| r.pass).count();
            eprintln!("{passed}/{} checks passed; report written to {}", results.len(), path.display());
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit_report(&results, &cfg, format, &mut lock)?;
            lock.flush().map_err(|e| Failure::Runtime(e.to_string()))?;
        }
    }
    for r in results.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {}: residual {:e} > tolerance {:e}", r.check_id, r.max_residual, r.tolerance);
    }
    Ok(all_passed(&results))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => match verify(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(Failure::Usage(msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Err(Failure::Runtime(msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        },
    }
}
