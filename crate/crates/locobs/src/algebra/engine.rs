//! PBW rewriting: products of normal monomials, reduced back to normal form.
//!
//! Two rules do all the work. Adjacent out-of-order generators are exchanged
//! with `xg = gx + iħ(x,g)`, and a mass tail `M^k` is moved right past a
//! generator with
//!
//! * `M^k P = P M^k`, `M^k J = J M^k`,
//! * `M^k D = D M^k - iħ k M^k`,
//! * `M^k C_μ = C_μ M^k - 2iħk X_μ M^k - ħ²k² P_μ M^{k-2}`,
//!
//! the last one being `(C_μ, M^k) = k(X_μ M^k + M^k X_μ)`. Finally the
//! commutative `P` block is reduced with `P0² = M² + P1² + P2² + P3²`.

use std::cell::{Cell, RefCell};
use std::rc::Rc;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use super::coeff::GaussRat;
use super::expr::Expression;
use super::generator::{Gen, GenKind};
use super::key::{self, Key};
use super::relations::bracket;
use crate::error::AlgebraError;

/// `(word, extra ħ power, coefficient)`.
type Term = (u128, i32, GaussRat);
/// `(word, mass, ħ power, coefficient)`.
type Tail = (u128, i32, i32, GaussRat);

const INSERT_CACHE_LIMIT: usize = 4_000_000;
const P0: u8 = 11;

/// Rewrite-step budget for a single budgeted normalization.
pub const STEP_BUDGET: u64 = 10_000_000;

thread_local! {
    static INSERT_CACHE: RefCell<FxHashMap<(u128, u8), Rc<[Term]>>> = RefCell::new(FxHashMap::default());
    static MASS_CACHE: RefCell<FxHashMap<(i32, u8), Rc<[Tail]>>> = RefCell::new(FxHashMap::default());
    static POSITION: RefCell<Option<Rc<[Expression; 4]>>> = const { RefCell::new(None) };
    static STEPS: Cell<u64> = const { Cell::new(0) };
    static LIMIT: Cell<u64> = const { Cell::new(u64::MAX) };
}

struct Tables {
    /// `(x, g)` for every ordered pair of generator ids.
    brackets: Vec<Vec<(u8, GaussRat)>>,
    /// Fields of the generators above `g` that fail to commute with it.
    blocking: [u128; Gen::COUNT],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let n = Gen::COUNT;
        let mut brackets = vec![Vec::new(); n * n];
        let mut blocking = [0u128; Gen::COUNT];
        for x in Gen::all() {
            for g in Gen::all() {
                let b: Vec<(u8, GaussRat)> =
                    bracket(x, g).into_iter().map(|(y, r)| (y.id(), GaussRat::from_int(r as i128).times_i())).collect();
                if x > g && !b.is_empty() {
                    blocking[g.id() as usize] |= key::field(x.id());
                }
                brackets[x.id() as usize * n + g.id() as usize] = b;
            }
        }
        Tables { brackets, blocking }
    })
}

fn tick() {
    STEPS.with(|s| s.set(s.get() + 1));
}

/// Append the normal form of `c · ħ^h · w · g` to `out`.
fn insert_into(w: u128, g: u8, h: i32, c: GaussRat, out: &mut Vec<Term>) {
    if w & tables().blocking[g as usize] == 0 {
        out.push((key::push(w, g), h, c));
        return;
    }
    for &(t, th, tc) in insert_cached(w, g).iter() {
        out.push((t, h + th, c * tc));
    }
}

fn insert_cached(w: u128, g: u8) -> Rc<[Term]> {
    if let Some(hit) = INSERT_CACHE.with(|c| c.borrow().get(&(w, g)).cloned()) {
        return hit;
    }
    tick();
    // w = head·x with x the top letter; head·x·g = (head·g)·x + iħ head·(x,g)
    let x = key::top(w).expect("blocked word is nonempty");
    let head = key::pop(w, x);
    let mut first = Vec::new();
    insert_into(head, g, 0, GaussRat::one(), &mut first);
    let mut terms = Vec::new();
    for (t, h, c) in first {
        insert_into(t, x, h, c, &mut terms);
    }
    for &(y, coef) in tables().brackets[x as usize * Gen::COUNT + g as usize].iter() {
        insert_into(head, y, 1, coef, &mut terms);
    }
    let mut acc: FxHashMap<(u128, i32), GaussRat> = FxHashMap::default();
    for (t, h, c) in terms {
        *acc.entry((t, h)).or_insert_with(GaussRat::zero) += c;
    }
    let out: Rc<[Term]> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((t, h), c)| (t, h, c)).collect();
    INSERT_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > INSERT_CACHE_LIMIT {
            c.clear();
        }
        c.insert((w, g), out.clone());
    });
    out
}

/// `X_μ = (P_μ/P²)·D + (P^ρ/P²)·J_ρμ` in normal form, built once per thread.
pub fn position() -> Rc<[Expression; 4]> {
    if let Some(x) = POSITION.with(|p| p.borrow().clone()) {
        return x;
    }
    let x = Rc::new(std::array::from_fn(build_position));
    POSITION.with(|p| *p.borrow_mut() = Some(x.clone()));
    x
}

fn build_position(mu: usize) -> Expression {
    use super::generator::j_signed;
    use super::metric::sign;
    let p_over = |r: usize| Expression::gen(Gen::p(r)).times_mass(-2);
    let mut x = p_over(mu).sym(&Expression::gen(Gen::d()));
    for rho in 0..4 {
        if let Some((s, j)) = j_signed(rho, mu) {
            let term = p_over(rho).sym(&Expression::gen(j));
            x.add_scaled(&term, GaussRat::from_int((s * sign(rho)) as i128));
        }
    }
    x
}

/// Terms of `M^k g`.
fn mass_past(k: i32, g: Gen) -> Rc<[Tail]> {
    if let Some(hit) = MASS_CACHE.with(|c| c.borrow().get(&(k, g.id())).cloned()) {
        return hit;
    }
    let single = key::push(0, g.id());
    let kc = k as i128;
    let out: Rc<[Tail]> = match g.kind() {
        GenKind::P(_) | GenKind::J(..) => Rc::new([(single, k, 0, GaussRat::one())]),
        GenKind::D => Rc::new([(single, k, 0, GaussRat::one()), (0, k, 1, GaussRat::from_int(-kc).times_i())]),
        GenKind::C(mu) => {
            let mut v = vec![(single, k, 0, GaussRat::one())];
            let x = position();
            let c = GaussRat::from_int(-2 * kc).times_i();
            for (m, coef) in x[mu].keys() {
                v.push((m.word(), m.mass() + k, m.hbar() + 1, coef * c));
            }
            v.push((key::push(0, Gen::p(mu).id()), k - 2, 2, GaussRat::from_int(-kc * kc)));
            v.into()
        }
    };
    MASS_CACHE.with(|c| c.borrow_mut().insert((k, g.id()), out.clone()));
    out
}

/// Apply `P0² = M² + P1² + P2² + P3²` until `P0` occurs at most once.
fn reduce_p0(word: u128, mass: i32, out: &mut Vec<(u128, i32)>) {
    if key::exp(word, P0) < 2 {
        out.push((word, mass));
        return;
    }
    let base = key::pop(key::pop(word, P0), P0);
    reduce_p0(base, mass + 2, out);
    for j in 1..4 {
        let pj = Gen::p(j).id();
        reduce_p0(key::push(key::push(base, pj), pj), mass, out);
    }
}

fn mul_keys(a: Key, b: Key, coef: GaussRat, out: &mut FxHashMap<Key, GaussRat>) {
    let mut cur: Vec<Tail> = vec![(a.word(), a.mass(), a.hbar(), coef)];
    let mut stage: Vec<Term> = Vec::new();
    let mut swap: Vec<Term> = Vec::new();
    for g in key::letters(b.word()) {
        let mut next: FxHashMap<Key, GaussRat> = FxHashMap::default();
        for &(w, k, h, c) in cur.iter() {
            if k == 0 || g.is_p() || matches!(g.kind(), GenKind::J(..)) {
                stage.clear();
                insert_into(w, g.id(), 0, c, &mut stage);
                for &(t, th, tc) in stage.iter() {
                    *next.entry(Key::new(t, k, h + th)).or_insert_with(GaussRat::zero) += tc;
                }
                continue;
            }
            for &(ew, em, eh, ec) in mass_past(k, g).iter() {
                stage.clear();
                stage.push((w, 0, c * ec));
                for l in key::letters(ew) {
                    swap.clear();
                    for &(t, th, tc) in stage.iter() {
                        insert_into(t, l.id(), th, tc, &mut swap);
                    }
                    std::mem::swap(&mut stage, &mut swap);
                }
                for &(t, th, tc) in stage.iter() {
                    *next.entry(Key::new(t, em, h + eh + th)).or_insert_with(GaussRat::zero) += tc;
                }
            }
        }
        cur = next.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.word(), k.mass(), k.hbar(), c)).collect();
    }
    let mut reduced = Vec::new();
    for (w, k, h, c) in cur {
        reduced.clear();
        reduce_p0(w, k + b.mass(), &mut reduced);
        for &(rw, rm) in reduced.iter() {
            *out.entry(Key::new(rw, rm, h + b.hbar())).or_insert_with(GaussRat::zero) += c;
        }
    }
}

/// Normal-ordered product of two normal expressions.
pub fn multiply(a: &Expression, b: &Expression) -> Expression {
    let mut out: FxHashMap<Key, GaussRat> = FxHashMap::default();
    for (ka, ca) in a.keys() {
        for (kb, cb) in b.keys() {
            mul_keys(ka, kb, ca * cb, &mut out);
        }
    }
    Expression::from_map(out)
}

/// Normal form of a free (unordered) word `g1 g2 … gn · M^mass`, under the step budget.
pub fn normalize_word(gens: &[Gen], mass: i32) -> Result<Expression, AlgebraError> {
    with_budget(STEP_BUDGET, || {
        let mut acc = Expression::one();
        for &g in gens {
            acc = multiply(&acc, &Expression::gen(g));
            check_budget()?;
        }
        Ok(acc.times_mass(mass))
    })
}

/// Run `f` with a fresh rewrite-step budget.
pub fn with_budget<T>(limit: u64, f: impl FnOnce() -> Result<T, AlgebraError>) -> Result<T, AlgebraError> {
    let prev_limit = LIMIT.with(|l| l.replace(limit));
    let prev_steps = STEPS.with(|s| s.replace(0));
    let r = f();
    LIMIT.with(|l| l.set(prev_limit));
    STEPS.with(|s| s.set(prev_steps));
    r
}

pub fn check_budget() -> Result<(), AlgebraError> {
    let steps = STEPS.with(|s| s.get());
    let limit = LIMIT.with(|l| l.get());
    if steps > limit {
        Err(AlgebraError::NonTerminating { steps })
    } else {
        Ok(())
    }
}

/// Drop the per-thread memo tables.
pub fn clear_caches() {
    INSERT_CACHE.with(|c| c.borrow_mut().clear());
    MASS_CACHE.with(|c| c.borrow_mut().clear());
}
