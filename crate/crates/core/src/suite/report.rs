use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::{CheckResult, SuiteConfig, SuiteError};

pub const REPORT_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(SuiteError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    version: &'a str,
    config: &'a SuiteConfig,
    results: &'a [CheckResult],
}

/// Report bytes. JSON floats use the shortest round-trip form.
pub fn render_report(
    results: &[CheckResult],
    cfg: &SuiteConfig,
    format: ReportFormat,
) -> Result<Vec<u8>, SuiteError> {
    if results.is_empty() {
        return Err(SuiteError::EmptyResults);
    }
    match format {
        ReportFormat::Json => {
            let report = Report {
                version: REPORT_VERSION,
                config: cfg,
                results,
            };
            let mut out = serde_json::to_vec_pretty(&report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Markdown => Ok(markdown(results, cfg).into_bytes()),
    }
}

pub fn emit_report(
    results: &[CheckResult],
    cfg: &SuiteConfig,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<(), SuiteError> {
    out.write_all(&render_report(results, cfg, format)?)?;
    out.flush()?;
    Ok(())
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn markdown(results: &[CheckResult], cfg: &SuiteConfig) -> String {
    let mut s = String::new();
    let passed = results.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "# Verification report\n");
    let _ = writeln!(
        s,
        "version {REPORT_VERSION}, seed {}, samples {}, {passed}/{} checks passed\n",
        cfg.seed,
        cfg.samples,
        results.len()
    );
    let mut suites: Vec<&str> = Vec::new();
    for r in results {
        if !suites.contains(&r.suite()) {
            suites.push(r.suite());
        }
    }
    for suite in suites {
        let _ = writeln!(s, "## {suite}\n");
        let _ = writeln!(s, "| check | anchor | points | max residual | tolerance | pass |");
        let _ = writeln!(s, "|---|---|---:|---:|---:|:---:|");
        for r in results.iter().filter(|r| r.suite() == suite) {
            let _ = writeln!(
                s,
                "| {} | `{}` | {} | {:e} | {:e} | {} |",
                r.check_id,
                cell(&r.paper_anchor),
                r.points_tested,
                r.max_residual,
                r.tolerance,
                if r.pass { "yes" } else { "NO" }
            );
        }
        s.push('\n');
    }
    s
}
