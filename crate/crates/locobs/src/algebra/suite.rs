//! The generator table itself as two catalog checks: every bracket as
//! computed by the product engine, and every Jacobi triple.

use std::time::Instant;

use super::{jacobi_residual, lie_bracket, Expression, Gen};
use crate::filter::Selection;
use crate::report::{Report, Residual, Status};

pub const ENTRIES: &[(&str, &str)] = &[
    ("algebra/brackets", "(PoincareAlg), (DAlg), (ConfAlg): all 105 generator pairs"),
    ("algebra/jacobi", "(PoincareAlg), (DAlg), (ConfAlg): all 455 Jacobi triples"),
];

fn report(id: &str, started: Instant, total: usize, failing: Vec<(String, Expression)>) -> Report {
    let anchor = ENTRIES.iter().find(|e| e.0 == id).map_or("", |e| e.1);
    let mut notes = vec![format!("{total} instances")];
    notes.extend(failing.iter().map(|(l, _)| format!("nonzero: {l}")));
    let (status, residual) = match failing.first() {
        None => (Status::Pass, "0".to_string()),
        Some((l, e)) => (Status::Fail, format!("{l}: {e}")),
    };
    Report {
        id: id.into(),
        paper_ref: anchor.into(),
        status,
        residual: Residual::Exact(residual),
        ms: Some(started.elapsed().as_millis() as u64),
        notes,
    }
}

/// `a b - b a` through the product engine against the table entry, for `a < b`.
pub fn bracket_residuals() -> Vec<(String, Expression)> {
    let gens: Vec<Gen> = Gen::all().collect();
    let mut out = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let (ea, eb) = (Expression::gen(a), Expression::gen(b));
            let engine = ea.times(&eb) - eb.times(&ea);
            out.push((format!("({a},{b})"), engine.div_ihbar() - lie_bracket(a, b)));
        }
    }
    out
}

pub fn jacobi_residuals() -> Vec<(String, Expression)> {
    let gens: Vec<Gen> = Gen::all().collect();
    let mut out = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate().skip(i + 1) {
            for &c in &gens[j + 1..] {
                let r = jacobi_residual(&Expression::gen(a), &Expression::gen(b), &Expression::gen(c));
                out.push((format!("{a} {b} {c}"), r));
            }
        }
    }
    out
}

fn run(id: &str, f: fn() -> Vec<(String, Expression)>) -> Report {
    let t = Instant::now();
    let items = f();
    let n = items.len();
    report(id, t, n, items.into_iter().filter(|(_, e)| !e.is_zero()).collect())
}

pub fn catalog() -> Vec<(&'static str, &'static str)> {
    ENTRIES.to_vec()
}

pub fn check_all(sel: &Selection) -> Vec<Report> {
    let all: [(&str, fn() -> Vec<(String, Expression)>); 2] =
        [("algebra/brackets", bracket_residuals), ("algebra/jacobi", jacobi_residuals)];
    all.iter().filter(|(id, _)| sel.matches(id)).map(|(id, f)| run(id, *f)).collect()
}
