//! Expression parsing, manifest-driven runs and report rendering behind the
//! `locobs` binary.

pub mod manifest;
pub mod parse;

use std::fmt::Write as _;

use crate::filter::Selection;
use crate::oracles::OracleParams;
use crate::report::{Report, Residual, Status};

pub use manifest::{ConfigError, Format, Manifest, RunConfig};
pub use parse::{parse, ParseError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Every check id with its reference, in run order.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    let mut out = crate::algebra::suite::catalog();
    out.extend(crate::observables::catalog::catalog());
    out.extend(crate::polarization::catalog());
    out.extend(crate::oracles::catalog());
    out.extend(crate::geometry::suite::catalog());
    out
}

/// Runs every selected check, in catalog order.
pub fn run_checks(cfg: &RunConfig) -> Vec<Report> {
    let sel = &cfg.selection;
    let oracle = OracleParams { seed: cfg.seed, ladder: cfg.ladder.clone() };
    let mut out = crate::algebra::suite::check_all(sel);
    out.extend(crate::observables::catalog::check_all(sel));
    out.extend(crate::polarization::check_all(sel));
    out.extend(crate::oracles::check_all(sel, &oracle));
    out.extend(crate::geometry::suite::check_all(sel, &cfg.geometry));
    if !cfg.timings {
        for r in &mut out {
            r.ms = None;
        }
    }
    out
}

pub fn selected_ids(sel: &Selection) -> Vec<&'static str> {
    catalog().into_iter().map(|(id, _)| id).filter(|id| sel.matches(id)).collect()
}

pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(Report::passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn render_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_text(reports: &[Report]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let residual = match &r.residual {
            Residual::Exact(e) => e.clone(),
            Residual::Norm(x) => format!("{x:e}"),
        };
        let _ = write!(s, "{status:<5} {:<22} residual {residual}", r.id);
        if let Some(ms) = r.ms {
            let _ = write!(s, " ({ms} ms)");
        }
        s.push('\n');
        for n in &r.notes {
            let _ = writeln!(s, "      {n}");
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(s, "{} checks, {failed} not passing", reports.len());
    s
}

pub fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Text => render_text(reports),
        Format::Json => render_json(reports),
    }
}
