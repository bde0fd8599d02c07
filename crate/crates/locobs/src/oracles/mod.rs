//! Independent concrete realisations that cross-check the symbolic layers.

pub mod exact;
pub mod ladder;
pub mod poisson;
pub mod so42;

use crate::filter::Selection;
use crate::report::Report;

/// Parameters shared by the oracle suites.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OracleParams {
    pub seed: u64,
    pub ladder: ladder::LadderParams,
}

pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        (so42::SO42_ID, so42::SO42_ANCHOR),
        (poisson::POISSON_ID, poisson::POISSON_ANCHOR),
        (ladder::LADDER_ID, ladder::LADDER_ANCHOR),
    ]
}

pub fn run(id: &str, p: &OracleParams) -> Option<Report> {
    match id {
        so42::SO42_ID => Some(so42::so42_check(p.seed)),
        poisson::POISSON_ID => Some(poisson::poisson_check()),
        ladder::LADDER_ID => Some(ladder::run_ladder(&p.ladder)),
        _ => None,
    }
}

pub fn check_all(sel: &Selection, p: &OracleParams) -> Vec<Report> {
    catalog().into_iter().filter(|(id, _)| sel.matches(id)).filter_map(|(id, _)| run(id, p)).collect()
}
