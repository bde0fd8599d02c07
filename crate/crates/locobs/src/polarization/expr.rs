//! Words of the polarisation calculus.
//!
//! Everything is expanded over `V`, `S` (the spin vector) and the two
//! eigenvectors `E±` of the spin tensor acting on the transverse plane:
//!
//! ```text
//! Q̂ = E⁺ + E⁻        R = i(s*+½)E⁺ - i(s*-½)E⁻
//! S_μ^ν E±_ν = λ± E±_μ,   λ⁺ = -iħ(s*-½),  λ⁻ = iħ(s*+½)
//! E± f(s*) = f(s*±1) E±
//! ```
//!
//! Coefficients always sit on the left of a word. Free indices are `μ` and
//! `ν`; rank-two tensors that never need to be split (`η`, `S_μν`,
//! `S_μ·S_ν`, `ε_μνρσ E^ρ V^σ`) are atoms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::scalar::{named, ScalarFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    V,
    S,
    Ep,
    Em,
}

impl Basis {
    pub fn delta(self) -> i32 {
        match self {
            Basis::Ep => 1,
            Basis::Em => -1,
            _ => 0,
        }
    }

    fn transverse(self) -> bool {
        matches!(self, Basis::Ep | Basis::Em)
    }

    fn name(self) -> &'static str {
        match self {
            Basis::V => "V",
            Basis::S => "Svec",
            Basis::Ep => "E+",
            Basis::Em => "E-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Mu,
    Nu,
}

impl Slot {
    pub fn other(self) -> Slot {
        match self {
            Slot::Mu => Slot::Nu,
            Slot::Nu => Slot::Mu,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::Mu => "mu",
            Slot::Nu => "nu",
        })
    }
}

/// Rank-two tensors in `(μ, ν)` kept whole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Eta,
    /// `S_μν`
    Stensor,
    /// `S_μ·S_ν`
    K,
    /// `ε_μνρσ E^ρ V^σ` for a transverse basis vector
    Et(Basis),
    /// A word outside the calculus, compared by name only.
    Opaque(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Word {
    One,
    Vec(Basis, Slot),
    /// Ordered product, left factor first.
    Pair((Basis, Slot), (Basis, Slot)),
    /// `A^ρ B_ρ`, `A` on the left.
    Dot(Basis, Basis),
    Atom(Atom),
}

impl Word {
    pub fn delta(&self) -> i32 {
        match *self {
            Word::One => 0,
            Word::Vec(b, _) => b.delta(),
            Word::Pair((a, _), (b, _)) | Word::Dot(a, b) => a.delta() + b.delta(),
            Word::Atom(Atom::Et(b)) => b.delta(),
            Word::Atom(_) => 0,
        }
    }

    /// Words built only from transverse vectors; these are what the
    /// transverse relations can rewrite.
    pub fn is_transverse(&self) -> bool {
        match *self {
            Word::Pair((a, _), (b, _)) | Word::Dot(a, b) => a.transverse() && b.transverse(),
            _ => false,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Word::One | Word::Dot(..) => 0,
            Word::Vec(..) => 1,
            Word::Pair(..) | Word::Atom(_) => 2,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Word::One => write!(f, "1"),
            Word::Vec(b, s) => write!(f, "{}[{s}]", b.name()),
            Word::Pair((a, sa), (b, sb)) => write!(f, "{}[{sa}] {}[{sb}]", a.name(), b.name()),
            Word::Dot(a, b) => write!(f, "{}^rho {}[rho]", a.name(), b.name()),
            Word::Atom(Atom::Eta) => write!(f, "eta[mu,nu]"),
            Word::Atom(Atom::Stensor) => write!(f, "S[mu,nu]"),
            Word::Atom(Atom::K) => write!(f, "Svec[mu].Svec[nu]"),
            Word::Atom(Atom::Et(b)) => write!(f, "eps[mu,nu,rho,sigma] {}^rho V^sigma", b.name()),
            Word::Atom(Atom::Opaque(n)) => write!(f, "{{{n}}}"),
        }
    }
}

/// Vectors the identities are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolVector {
    V,
    Svec,
    /// `Q = (V·Q)V + αS + Q̂`
    Q,
    Qhat,
    R,
    Aplus,
    Aminus,
}

/// Linear combination of words with left scalar coefficients.
#[derive(Clone, Debug, Default)]
pub struct PolExpression {
    terms: BTreeMap<Word, ScalarFn>,
}

fn s_plus(k: (i64, i64)) -> ScalarFn {
    &ScalarFn::s() + &ScalarFn::frac(k.0, k.1)
}

impl PolExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word, c: ScalarFn) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn scalar(c: ScalarFn) -> Self {
        Self::word(Word::One, c)
    }

    pub fn atom(a: Atom) -> Self {
        Self::word(Word::Atom(a), ScalarFn::one())
    }

    /// `η_μν - V_μ V_ν`
    pub fn g_tensor() -> Self {
        &Self::atom(Atom::Eta) - &Self::vector(PolVector::V, Slot::Mu).mul(&Self::vector(PolVector::V, Slot::Nu))
    }

    pub fn vector(v: PolVector, slot: Slot) -> Self {
        let e = |b| Self::word(Word::Vec(b, slot), ScalarFn::one());
        let i = ScalarFn::i();
        match v {
            PolVector::V => e(Basis::V),
            PolVector::Svec => e(Basis::S),
            PolVector::Qhat => &e(Basis::Ep) + &e(Basis::Em),
            PolVector::R => {
                &e(Basis::Ep).scale(&(&i * &s_plus((1, 2)))) - &e(Basis::Em).scale(&(&i * &s_plus((-1, 2))))
            }
            PolVector::Q => {
                let head = &e(Basis::V).scale(&named::u()) + &e(Basis::S).scale(&named::alpha());
                &head + &Self::vector(PolVector::Qhat, slot)
            }
            PolVector::Aplus => e(Basis::Ep).scale(&(&named::sqrt_s(0) * &named::sqrt_s(1))),
            PolVector::Aminus => e(Basis::Em).scale(&(&named::sqrt_s(0) * &named::sqrt_s(-1))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ScalarFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> ScalarFn {
        self.terms.get(w).cloned().unwrap_or_else(ScalarFn::zero)
    }

    pub fn add_term(&mut self, w: Word, c: ScalarFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn map_terms(&self, f: impl Fn(&Word, &ScalarFn) -> PolExpression) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for (w2, c2) in f(w, c).terms {
                out.add_term(w2, c2);
            }
        }
        out
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, f: &ScalarFn) -> Self {
        self.map_terms(|w, c| Self::word(*w, c * f))
    }

    /// Right multiplication by a scalar, moved to the left across each word.
    pub fn scale_right(&self, f: &ScalarFn) -> Self {
        self.map_terms(|w, c| Self::word(*w, c * &f.shift(w.delta())))
    }

    /// Operator product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let c = ca * &cb.shift(wa.delta());
                let w = match (*wa, *wb) {
                    (Word::One, w) | (w, Word::One) => w,
                    (Word::Vec(a, sa), Word::Vec(b, sb)) => {
                        assert_ne!(sa, sb, "product of two vectors on one index");
                        pair((a, sa), (b, sb))
                    }
                    (a, b) => panic!("unsupported product {a} * {b}"),
                };
                out.add_term(w, c);
            }
        }
        out
    }

    /// `(A, B) = [A, B]/(iħ)`.
    pub fn bracket(&self, o: &Self) -> Self {
        (&self.mul(o) - &o.mul(self)).scale(&(&ScalarFn::i() * &ScalarFn::hbar()).inv())
    }

    /// `A·B = (AB + BA)/2`.
    pub fn sym(&self, o: &Self) -> Self {
        (&self.mul(o) + &o.mul(self)).scale(&ScalarFn::frac(1, 2))
    }

    /// Trace over `μ = ν`, using `V·E± = S·E± = 0` and `V·S = 0`.
    pub fn contract(&self) -> Self {
        self.map_terms(|w, c| {
            let scalar = |f: ScalarFn| Self::scalar(c * &f);
            match *w {
                Word::Pair((a, _), (b, _)) => match (a, b) {
                    _ if a.transverse() && b.transverse() => Self::word(Word::Dot(a, b), c.clone()),
                    (Basis::V, Basis::V) => scalar(ScalarFn::one()),
                    (Basis::S, Basis::S) => scalar(named::s2()),
                    _ => Self::zero(),
                },
                Word::Atom(Atom::Eta) => scalar(ScalarFn::int(4)),
                Word::Atom(Atom::K) => scalar(named::s2()),
                Word::Atom(Atom::Stensor | Atom::Et(_)) => Self::zero(),
                other => panic!("cannot contract {other}"),
            }
        })
    }

    /// Exchange `μ` and `ν`.
    pub fn swap_slots(&self) -> Self {
        self.map_terms(|w, c| match *w {
            Word::Vec(b, s) => Self::word(Word::Vec(b, s.other()), c.clone()),
            Word::Pair((a, sa), (b, sb)) => Self::word(pair((a, sa.other()), (b, sb.other())), c.clone()),
            Word::Atom(Atom::Stensor | Atom::Et(_)) => Self::word(*w, -c),
            Word::Atom(Atom::Opaque(n)) => panic!("cannot swap indices of {n}"),
            _ => Self::word(*w, c.clone()),
        })
    }

    /// `S_μ^ν Y_ν` for a vector `Y`, result on the same free index.
    pub fn rotate(&self) -> Self {
        self.map_terms(|w, c| match *w {
            Word::Vec(b, _) => Self::word(*w, c * &eigenvalue(b)),
            other => panic!("rotate expects a vector, got {other}"),
        })
    }

    /// `Y_ν S_μ^ν = S_μ^ν Y_ν - 2iħ Y_μ`.
    pub fn rotate_right(&self) -> Self {
        let shift = &(&ScalarFn::int(2) * &ScalarFn::i()) * &ScalarFn::hbar();
        &self.rotate() - &self.scale(&shift)
    }

    /// `A_μν = ε_μνρσ A^ρ V^σ` for a vector `A`.
    pub fn tensor_of(&self) -> Self {
        self.map_terms(|w, c| match *w {
            Word::Vec(Basis::V, _) => Self::zero(),
            Word::Vec(Basis::S, _) => Self::word(Word::Atom(Atom::Stensor), c.clone()),
            Word::Vec(b, _) => Self::word(Word::Atom(Atom::Et(b)), c.clone()),
            other => panic!("tensor_of expects a vector, got {other}"),
        })
    }

    /// Apply a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ScalarFn) -> ScalarFn) -> Self {
        self.map_terms(|w, c| Self::word(*w, f(c)))
    }

    /// Keep the words of total shift `d`.
    pub fn sector(&self, d: i32) -> Self {
        self.map_terms(|w, c| if w.delta() == d { Self::word(*w, c.clone()) } else { Self::zero() })
    }

    pub fn sectors(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.terms.keys().map(Word::delta).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Rewrite `E±` in terms of `Q̂` and `R` for display:
    /// `E± = (±R + i(s* ∓ ½)Q̂)/(2is*)`, rank-one words only.
    pub fn display_basis(&self) -> String {
        let mut vecs: BTreeMap<(Slot, bool), ScalarFn> = BTreeMap::new();
        let mut rest = Self::zero();
        let two_is = &(&ScalarFn::int(2) * &ScalarFn::i()) * &ScalarFn::s();
        for (w, c) in &self.terms {
            let (b, s) = match *w {
                Word::Vec(b @ (Basis::Ep | Basis::Em), s) => (b, s),
                _ => {
                    rest.add_term(*w, c.clone());
                    continue;
                }
            };
            let sign = if b == Basis::Ep { 1 } else { -1 };
            let k = c.div(&two_is);
            let q = &(&k * &ScalarFn::i()) * &s_plus((-sign, 2));
            let r = &k * &ScalarFn::int(sign);
            for (key, v) in [((s, false), q), ((s, true), r)] {
                let old = vecs.remove(&key).unwrap_or_else(ScalarFn::zero);
                let new = &old + &v;
                if !new.is_zero() {
                    vecs.insert(key, new);
                }
            }
        }
        let mut parts: Vec<String> = vecs
            .iter()
            .map(|((s, is_r), c)| format!("({c}) {}[{s}]", if *is_r { "R" } else { "Qhat" }))
            .collect();
        if !rest.is_zero() {
            parts.push(rest.to_string());
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Eigenvalue of `S_μ^ν` on a basis vector; `V` is annihilated.
fn eigenvalue(b: Basis) -> ScalarFn {
    let ih = &ScalarFn::i() * &ScalarFn::hbar();
    match b {
        Basis::Ep => -(&ih * &s_plus((-1, 2))),
        Basis::Em => &ih * &s_plus((1, 2)),
        Basis::V => ScalarFn::zero(),
        Basis::S => panic!("spin tensor acting on the spin vector is outside the calculus"),
    }
}

/// `V` commutes with every vector of the calculus; it is written first.
fn pair(a: (Basis, Slot), b: (Basis, Slot)) -> Word {
    let swap = match (a.0, b.0) {
        (Basis::V, Basis::V) => a.1 > b.1,
        (_, Basis::V) => true,
        _ => false,
    };
    if swap {
        Word::Pair(b, a)
    } else {
        Word::Pair(a, b)
    }
}

impl PartialEq for PolExpression {
    fn eq(&self, o: &Self) -> bool {
        (self - o).is_zero()
    }
}

impl<'a> Add<&'a PolExpression> for &'a PolExpression {
    type Output = PolExpression;
    fn add(self, o: &PolExpression) -> PolExpression {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PolExpression> for &'a PolExpression {
    type Output = PolExpression;
    fn sub(self, o: &PolExpression) -> PolExpression {
        self + &(-o)
    }
}

impl Neg for &PolExpression {
    type Output = PolExpression;
    fn neg(self) -> PolExpression {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for PolExpression {
            type Output = PolExpression;
            fn $m(self, o: PolExpression) -> PolExpression {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);

impl fmt::Display for PolExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match w {
                Word::One => write!(f, "({c})")?,
                _ => write!(f, "({c}) {w}")?,
            }
        }
        Ok(())
    }
}
