//! Reduction modulo the transverse relations.
//!
//! The axioms are the brackets among `Q̂` and `R` and the value of `Q̂^ρ Q̂_ρ`.
//! Each is split into its `s*`-shift sectors (words shifting `s*` by
//! different amounts are independent), traced when a scalar form is needed,
//! and brought to echelon form over [`ScalarFn`]. Rows pivot on their largest
//! transverse word, so reducing by pivots in decreasing order terminates in a
//! unique remainder.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::expr::{Atom, PolExpression, PolVector, Slot, Word};
use super::scalar::{named, ScalarFn};

#[derive(Clone, Debug)]
struct Row {
    expr: PolExpression,
    /// bit `i` set when axiom `i` contributed
    uses: u64,
}

/// Echelon form of the axioms.
#[derive(Debug)]
pub struct RuleSet {
    names: Vec<&'static str>,
    rows: BTreeMap<Word, Row>,
    /// Relations that reduced to a nonzero remainder free of transverse words.
    pub inconsistent: Vec<PolExpression>,
}

/// Result of a reduction.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub expr: PolExpression,
    pub axioms: Vec<&'static str>,
}

fn v(p: PolVector, s: Slot) -> PolExpression {
    PolExpression::vector(p, s)
}

/// The axioms, named, as expressions equal to zero.
pub fn axioms() -> Vec<(&'static str, PolExpression)> {
    use PolVector::{Qhat, R};
    use Slot::{Mu, Nu};
    let h = ScalarFn::hbar();
    let st = PolExpression::atom(Atom::Stensor);
    let k = PolExpression::atom(Atom::K);
    let g = PolExpression::g_tensor();
    let (beta, gamma) = (named::beta(), named::gamma());

    let qq = &v(Qhat, Mu).bracket(&v(Qhat, Nu)) - &st.scale(&beta);
    let rr = &v(R, Mu).bracket(&v(R, Nu)) - &st.scale(&gamma);
    let rq = |a: Slot, b: Slot| {
        let lhs = v(R, a).bracket(&v(Qhat, b));
        let rhs = &(&g.scale(&(&h * &gamma)) - &v(Qhat, a).sym(&v(Qhat, b)).scale(&h.inv())) + &k.scale(&beta.div(&h));
        &lhs - &rhs
    };
    let rq_mn = rq(Mu, Nu);
    let rq_nm = rq(Nu, Mu);
    let q2 = {
        let lhs = v(Qhat, Mu).mul(&v(Qhat, Nu)).contract();
        let rhs = &(&h * &h) * &gamma + &beta * &named::s2();
        &lhs - &PolExpression::scalar(rhs)
    };
    vec![
        ("(Qhat,Qhat)", qq.clone()),
        ("(R,R)", rr.clone()),
        ("(R_mu,Qhat_nu)", rq_mn.clone()),
        ("(R_nu,Qhat_mu)", rq_nm.clone()),
        ("Qhat^2", q2),
        ("trace (Qhat,Qhat)", qq.contract()),
        ("trace (R,R)", rr.contract()),
        ("trace (R,Qhat)", rq_mn.contract()),
    ]
}

impl RuleSet {
    pub fn standard() -> &'static RuleSet {
        static RULES: OnceLock<RuleSet> = OnceLock::new();
        RULES.get_or_init(|| RuleSet::from_axioms(axioms()))
    }

    pub fn from_axioms(ax: Vec<(&'static str, PolExpression)>) -> RuleSet {
        let mut rs = RuleSet { names: Vec::new(), rows: BTreeMap::new(), inconsistent: Vec::new() };
        for (i, (name, e)) in ax.into_iter().enumerate() {
            rs.names.push(name);
            for d in e.sectors() {
                rs.insert(Row { expr: e.sector(d), uses: 1 << i });
            }
        }
        rs
    }

    fn insert(&mut self, row: Row) {
        let row = self.reduce_row(row);
        let pivot = row.expr.terms().map(|(w, _)| *w).filter(Word::is_transverse).max();
        match pivot {
            Some(w) => {
                let lead = row.expr.coeff(&w).inv();
                self.rows.insert(w, Row { expr: row.expr.scale(&lead), uses: row.uses });
            }
            None if row.expr.is_zero() => {}
            None => self.inconsistent.push(row.expr),
        }
    }

    fn reduce_row(&self, mut row: Row) -> Row {
        loop {
            let next = row
                .expr
                .terms()
                .map(|(w, _)| *w)
                .filter(|w| self.rows.contains_key(w))
                .max();
            let Some(w) = next else { return row };
            let pivot = &self.rows[&w];
            let c = row.expr.coeff(&w);
            row.expr = &row.expr - &pivot.expr.scale(&c);
            row.uses |= pivot.uses;
        }
    }

    /// Number of independent relations kept.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `e` and the axioms consumed on the way.
    pub fn reduce(&self, e: &PolExpression) -> Reduced {
        let row = self.reduce_row(Row { expr: e.clone(), uses: 0 });
        let axioms = (0..self.names.len()).filter(|i| row.uses >> i & 1 == 1).map(|i| self.names[i]).collect();
        Reduced { expr: row.expr, axioms }
    }
}
