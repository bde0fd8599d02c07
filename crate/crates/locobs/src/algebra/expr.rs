//! Elements of the localized enveloping algebra.
//!
//! An [`Expression`] is a finite sum of [`Monomial`]s with Gaussian-rational
//! coefficients. Every monomial is a PBW-ordered generator word followed by a
//! mass tail `M^k = (P²)^{k/2}` and carries an explicit power of ħ. All
//! expressions held by this type are normal: words are nondecreasing, the
//! `P` block contains `P0` at most once, and like terms are merged.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::coeff::{GaussRat, Rat};
use super::engine;
use super::generator::Gen;
use super::key::{self, Key};

pub type Word = SmallVec<[Gen; 12]>;

/// Basis element: `hbar^hbar · word · M^mass`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub word: Word,
    pub mass: i32,
    pub hbar: i32,
}

impl Monomial {
    pub fn new(word: Word, mass: i32, hbar: i32) -> Self {
        Monomial { word, mass, hbar }
    }

    pub(crate) fn key(&self) -> Key {
        debug_assert!(self.word.windows(2).all(|w| w[0] <= w[1]));
        Key::new(key::from_gens(&self.word), self.mass, self.hbar)
    }

    pub(crate) fn from_key(k: Key) -> Self {
        Monomial { word: key::letters(k.word()).collect(), mass: k.mass(), hbar: k.hbar() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expression {
    terms: FxHashMap<Key, GaussRat>,
}

impl Expression {
    pub fn zero() -> Self {
        Expression::default()
    }

    pub fn one() -> Self {
        Expression::scalar(GaussRat::one())
    }

    pub fn scalar(c: GaussRat) -> Self {
        Expression::from_key(Key::new(0, 0, 0), c)
    }

    pub fn int(n: i128) -> Self {
        Expression::scalar(GaussRat::from_int(n))
    }

    pub fn rational(n: i128, d: i128) -> Self {
        Expression::scalar(GaussRat::frac(n, d))
    }

    pub fn i() -> Self {
        Expression::scalar(GaussRat::i())
    }

    pub fn hbar() -> Self {
        Expression::from_key(Key::new(0, 0, 1), GaussRat::one())
    }

    pub fn gen(g: Gen) -> Self {
        Expression::from_key(Key::new(key::push(0, g.id()), 0, 0), GaussRat::one())
    }

    /// `M^k`; `mass(-2)` is `(P²)^{-1}`.
    pub fn mass(k: i32) -> Self {
        Expression::from_key(Key::new(0, k, 0), GaussRat::one())
    }

    /// A single monomial. The word must already be in PBW order.
    pub fn monomial(m: Monomial, c: GaussRat) -> Self {
        assert!(m.word.windows(2).all(|w| w[0] <= w[1]), "monomial word not in PBW order");
        Expression::from_key(m.key(), c)
    }

    fn from_key(k: Key, c: GaussRat) -> Self {
        let mut e = Expression::zero();
        e.add_key(k, c);
        e
    }

    pub(crate) fn from_map(terms: FxHashMap<Key, GaussRat>) -> Self {
        let mut e = Expression { terms };
        e.terms.retain(|_, c| !c.is_zero());
        e
    }

    pub(crate) fn add_key(&mut self, k: Key, c: GaussRat) {
        use std::collections::hash_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub(crate) fn keys(&self) -> impl Iterator<Item = (Key, GaussRat)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        self.add_key(m.key(), c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Monomial, GaussRat)> + '_ {
        self.terms.iter().map(|(k, c)| (Monomial::from_key(*k), *c))
    }

    /// Terms in canonical order (by word length, word, mass, then ħ power).
    pub fn sorted_terms(&self) -> Vec<(Monomial, GaussRat)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| {
            (a.0.word.len(), &a.0.word, a.0.mass, a.0.hbar).cmp(&(b.0.word.len(), &b.0.word, b.0.mass, b.0.hbar))
        });
        v
    }

    pub fn coeff_of(&self, m: &Monomial) -> GaussRat {
        self.terms.get(&m.key()).copied().unwrap_or_else(GaussRat::zero)
    }

    pub fn scale(&self, c: GaussRat) -> Self {
        if c.is_zero() {
            return Expression::zero();
        }
        Expression { terms: self.terms.iter().map(|(k, v)| (*k, *v * c)).collect() }
    }

    pub fn scale_rat(&self, n: i128, d: i128) -> Self {
        self.scale(GaussRat::frac(n, d))
    }

    fn map_keys(&self, f: impl Fn(Key) -> Key, g: impl Fn(GaussRat) -> GaussRat) -> Self {
        Expression { terms: self.terms.iter().map(|(k, v)| (f(*k), g(*v))).collect() }
    }

    /// Multiply by `hbar^k`.
    pub fn hbar_shift(&self, n: i32) -> Self {
        self.map_keys(|k| Key::new(k.word(), k.mass(), k.hbar() + n), |c| c)
    }

    /// Exact division by `iħ`.
    pub fn div_ihbar(&self) -> Self {
        self.map_keys(|k| Key::new(k.word(), k.mass(), k.hbar() - 1), |c| c.div_i())
    }

    /// Right multiplication by `M^k`; a pure tail shift because nothing follows the tail.
    pub fn times_mass(&self, n: i32) -> Self {
        self.map_keys(|k| Key::new(k.word(), k.mass() + n, k.hbar()), |c| c)
    }

    pub fn times(&self, other: &Expression) -> Expression {
        engine::multiply(self, other)
    }

    /// `(a, b) = (ab - ba)/(iħ)`.
    pub fn commutator(&self, other: &Expression) -> Expression {
        (self.times(other) - other.times(self)).div_ihbar()
    }

    /// `a·b = (ab + ba)/2`.
    pub fn sym(&self, other: &Expression) -> Expression {
        (self.times(other) + other.times(self)).scale_rat(1, 2)
    }

    pub fn pow(&self, n: u32) -> Expression {
        let mut acc = Expression::one();
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }

    /// True if any term carries a negative mass power, i.e. the expression is
    /// only meaningful on states with `P² != 0`.
    pub fn needs_nonzero_mass(&self) -> bool {
        self.terms.keys().any(|k| k.mass() < 0)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|k| key::len(k.word())).max().unwrap_or(0)
    }

    pub fn min_hbar(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.hbar()).min()
    }

    /// Keep only terms for which `f` holds.
    pub fn filter(&self, f: impl Fn(&Monomial) -> bool) -> Expression {
        Expression {
            terms: self.terms.iter().filter(|(k, _)| f(&Monomial::from_key(**k))).map(|(k, c)| (*k, *c)).collect(),
        }
    }

    pub fn sum<I: IntoIterator<Item = Expression>>(it: I) -> Expression {
        let mut acc = Expression::zero();
        for e in it {
            acc.add_assign_ref(&e);
        }
        acc
    }

    pub fn add_assign_ref(&mut self, other: &Expression) {
        for (k, c) in other.terms.iter() {
            self.add_key(*k, *c);
        }
    }

    pub fn add_scaled(&mut self, other: &Expression, c: GaussRat) {
        for (k, v) in other.terms.iter() {
            self.add_key(*k, *v * c);
        }
    }
}

impl Add for Expression {
    type Output = Expression;
    fn add(mut self, o: Expression) -> Expression {
        self.add_assign_ref(&o);
        self
    }
}

impl Sub for Expression {
    type Output = Expression;
    fn sub(mut self, o: Expression) -> Expression {
        self.add_scaled(&o, -GaussRat::one());
        self
    }
}

impl Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        self.scale(-GaussRat::one())
    }
}

impl Mul for Expression {
    type Output = Expression;
    fn mul(self, o: Expression) -> Expression {
        engine::multiply(&self, &o)
    }
}

impl<'a> Mul<&'a Expression> for &'a Expression {
    type Output = Expression;
    fn mul(self, o: &Expression) -> Expression {
        engine::multiply(self, o)
    }
}

impl<'a> Add<&'a Expression> for &'a Expression {
    type Output = Expression;
    fn add(self, o: &Expression) -> Expression {
        let mut e = self.clone();
        e.add_assign_ref(o);
        e
    }
}

impl<'a> Sub<&'a Expression> for &'a Expression {
    type Output = Expression;
    fn sub(self, o: &Expression) -> Expression {
        let mut e = self.clone();
        e.add_scaled(o, -GaussRat::one());
        e
    }
}

impl From<Gen> for Expression {
    fn from(g: Gen) -> Self {
        Expression::gen(g)
    }
}

impl From<Rat> for Expression {
    fn from(r: Rat) -> Self {
        Expression::scalar(GaussRat::real(r))
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if m.hbar != 0 {
        if m.hbar == 1 {
            parts.push("hbar".into());
        } else {
            parts.push(format!("hbar^{}", m.hbar));
        }
    }
    let mut i = 0;
    while i < m.word.len() {
        let g = m.word[i];
        let mut run = 1;
        while i + run < m.word.len() && m.word[i + run] == g {
            run += 1;
        }
        if run == 1 {
            parts.push(g.to_string());
        } else {
            parts.push(format!("{g}^{run}"));
        }
        i += run;
    }
    if m.mass != 0 {
        parts.push(format!("M^{}", m.mass));
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for Expression {
    /// Canonical textual form; the CLI grammar parses it back to the same expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().iter().enumerate() {
            let is_unit_mono = m.word.is_empty() && m.mass == 0 && m.hbar == 0;
            let neg_real = c.is_real() && c.re() < Rat::from_integer(0);
            let (sign, mag) = if neg_real { ("-", -*c) } else { ("+", *c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if is_unit_mono {
                write!(f, "{mag}")?;
            } else if mag == GaussRat::one() {
                fmt_monomial(m, f)?;
            } else {
                write!(f, "{mag}*")?;
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}
