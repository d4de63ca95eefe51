//! Seeded verification suites and their reports.
//!
//! Each check draws from its own ChaCha8 stream, selected by hashing the
//! check id, so results do not depend on which other checks run or on how
//! rayon schedules them.

mod checks;
mod config;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use config::{SuiteConfig, MIN_DEGREE_CAP};
pub use report::{emit_report, render_report, ReportFormat, REPORT_VERSION};

use crate::error::GeomError;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected one of: all, cone, embedding, rep, bundle, harmonic, duality, wp, cocycle)")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no results to report")]
    EmptyResults,
    #[error("unknown report format '{0}' (expected json or md)")]
    UnknownFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Suite selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Cone,
    Embedding,
    Rep,
    Bundle,
    Harmonic,
    Duality,
    Wp,
    Cocycle,
}

impl Suite {
    pub const MODULES: [Suite; 8] = [
        Suite::Cone,
        Suite::Embedding,
        Suite::Rep,
        Suite::Bundle,
        Suite::Harmonic,
        Suite::Duality,
        Suite::Wp,
        Suite::Cocycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Cone => "cone",
            Suite::Embedding => "embedding",
            Suite::Rep => "rep",
            Suite::Bundle => "bundle",
            Suite::Harmonic => "harmonic",
            Suite::Duality => "duality",
            Suite::Wp => "wp",
            Suite::Cocycle => "cocycle",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        std::iter::once(Suite::All)
            .chain(Suite::MODULES)
            .find(|m| m.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub paper_anchor: String,
    pub points_tested: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_ms: u64,
}

impl CheckResult {
    /// The suite name, i.e. the part of `check_id` before the first dot.
    pub fn suite(&self) -> &str {
        self.check_id.split('.').next().unwrap_or("")
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Tol {
    Analytic,
    Fd,
    Fixed(f64),
}

impl Tol {
    fn value(self, cfg: &SuiteConfig) -> f64 {
        match self {
            Tol::Analytic => cfg.tol_analytic,
            Tol::Fd => cfg.tol_fd,
            Tol::Fixed(v) => v,
        }
    }
}

/// Points evaluated and the worst residual seen.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Outcome {
    pub points: usize,
    pub max_residual: f64,
}

impl Outcome {
    pub fn record(&mut self, r: f64) {
        self.points += 1;
        // NaN must not be swallowed by max.
        self.max_residual = if r.is_nan() || self.max_residual.is_nan() {
            f64::NAN
        } else {
            self.max_residual.max(r)
        };
    }
}

pub(crate) type CheckFn = fn(&SuiteConfig, &mut ChaCha8Rng) -> Result<Outcome, GeomError>;

pub(crate) struct Check {
    pub id: &'static str,
    pub suite: Suite,
    pub anchor: &'static str,
    pub tol: Tol,
    pub run: CheckFn,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn execute(check: &Check, cfg: &SuiteConfig) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(fnv1a(check.id));
    let start = Instant::now();
    let outcome = (check.run)(cfg, &mut rng);
    let elapsed = start.elapsed().as_millis() as u64;
    let tolerance = check.tol.value(cfg);
    let (points, max_residual) = match outcome {
        Ok(o) => (o.points, o.max_residual),
        // A domain error inside a check is a failure, reported with the
        // largest finite residual so the JSON stays numeric.
        Err(_) => (0, f64::MAX),
    };
    CheckResult {
        check_id: check.id.to_string(),
        paper_anchor: check.anchor.to_string(),
        points_tested: points,
        max_residual,
        tolerance,
        pass: points > 0 && max_residual <= tolerance,
        wall_time_ms: if cfg.timings { elapsed } else { 0 },
    }
}

/// Ids of the checks that `suite` runs, in report order.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    checks::all()
        .iter()
        .filter(|c| suite.includes(c.suite))
        .map(|c| c.id)
        .collect()
}

/// Runs the named suite. Results come back in a fixed order and are
/// bit-for-bit reproducible for a given `(name, cfg)`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let suite: Suite = name.parse()?;
    cfg.validate()?;
    let selected: Vec<&Check> = checks::all().iter().filter(|c| suite.includes(c.suite)).collect();
    Ok(selected.par_iter().map(|c| execute(c, cfg)).collect())
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    !results.is_empty() && results.iter().all(|r| r.pass)
}
