//! Scalar coefficients of the polarisation calculus.
//!
//! A [`ScalarFn`] is a quotient of polynomials in `s*`, `ħ`, the Casimirs
//! `c1, c2, c3`, the mass `M`, and two families of atoms indexed by a shift
//! `k`: `γ(s*+k)` and `√(s*+k)`. Square-root atoms are kept multilinear
//! (`√x·√x = x`), which makes the numerator a canonical representative, so a
//! quotient is zero exactly when its numerator is.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{GaussRat, Rat};

/// Largest shift carried by the indexed atoms.
pub const MAX_SHIFT: i32 = 6;
const ATOMS: usize = (2 * MAX_SHIFT + 1) as usize;
const NVARS: usize = 6 + 2 * ATOMS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `s* = s + ½`
    S,
    Hbar,
    C1,
    C2,
    C3,
    M,
    /// `γ(s* + k)`
    Gamma(i32),
    /// `√(s* + k)`
    Sqrt(i32),
}

impl Var {
    fn slot(self) -> usize {
        let atom = |k: i32| {
            assert!(k.abs() <= MAX_SHIFT, "atom shift {k} out of range");
            (k + MAX_SHIFT) as usize
        };
        match self {
            Var::S => 0,
            Var::Hbar => 1,
            Var::C1 => 2,
            Var::C2 => 3,
            Var::C3 => 4,
            Var::M => 5,
            Var::Gamma(k) => 6 + atom(k),
            Var::Sqrt(k) => 6 + ATOMS + atom(k),
        }
    }

    fn from_slot(i: usize) -> Var {
        match i {
            0 => Var::S,
            1 => Var::Hbar,
            2 => Var::C1,
            3 => Var::C2,
            4 => Var::C3,
            5 => Var::M,
            i if i < 6 + ATOMS => Var::Gamma(i as i32 - 6 - MAX_SHIFT),
            i => Var::Sqrt(i as i32 - 6 - ATOMS as i32 - MAX_SHIFT),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = |k: i32| match k {
            0 => "s*".to_string(),
            k if k > 0 => format!("s*+{k}"),
            k => format!("s*-{}", -k),
        };
        match self {
            Var::S => write!(f, "s*"),
            Var::Hbar => write!(f, "hbar"),
            Var::C1 => write!(f, "c1"),
            Var::C2 => write!(f, "c2"),
            Var::C3 => write!(f, "c3"),
            Var::M => write!(f, "M"),
            Var::Gamma(k) => write!(f, "gamma({})", arg(*k)),
            Var::Sqrt(k) => write!(f, "sqrt({})", arg(*k)),
        }
    }
}

type Exps = [u8; NVARS];

/// Polynomial with Gaussian-rational coefficients; no zero entries stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exps, GaussRat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: GaussRat) -> Poly {
        let mut p = Poly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn var(v: Var) -> Poly {
        let mut e = [0; NVARS];
        e[v.slot()] = 1;
        let mut p = Poly::zero();
        p.add_term(e, GaussRat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exps, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(GaussRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add_ref(&self, o: &Poly, sign: GaussRat) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, *c * sign);
        }
        p
    }

    fn mul_ref(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for i in 0..NVARS {
                    e[i] = e[i].checked_add(eb[i]).expect("exponent overflow");
                }
                p.add_term(e, *ca * *cb);
            }
        }
        p.reduce_sqrt()
    }

    /// Replace `√(s*+k)²` by `s*+k` until every root atom is linear.
    fn reduce_sqrt(self) -> Poly {
        let needs = |e: &Exps| (0..ATOMS).any(|j| e[6 + ATOMS + j] >= 2);
        if !self.terms.keys().any(needs) {
            return self;
        }
        let mut out = Poly::zero();
        for (e, c) in self.terms {
            let mut base = e;
            let mut factor = Poly::constant(GaussRat::one());
            for j in 0..ATOMS {
                let slot = 6 + ATOMS + j;
                let pairs = base[slot] / 2;
                if pairs > 0 {
                    base[slot] -= 2 * pairs;
                    let k = j as i32 - MAX_SHIFT;
                    let lin = Poly::var(Var::S).add_ref(&Poly::constant(GaussRat::from_int(k as i128)), GaussRat::one());
                    for _ in 0..pairs {
                        factor = factor.mul_ref(&lin);
                    }
                }
            }
            let mut mono = Poly::zero();
            mono.add_term(base, c);
            let prod = mono.mul_ref(&factor);
            out = out.add_ref(&prod, GaussRat::one());
        }
        out
    }

    /// Substitute each variable by a polynomial.
    fn substitute(&self, f: &impl Fn(Var) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut term = Poly::constant(*c);
            let mut rest = [0u8; NVARS];
            for (i, &n) in e.iter().enumerate() {
                if n == 0 {
                    continue;
                }
                match f(Var::from_slot(i)) {
                    Some(p) => {
                        for _ in 0..n {
                            term = term.mul_ref(&p);
                        }
                    }
                    None => rest[i] = n,
                }
            }
            let mut mono = Poly::zero();
            mono.add_term(rest, GaussRat::one());
            out = out.add_ref(&term.mul_ref(&mono), GaussRat::one());
        }
        out
    }

    /// Exact quotient by `s* - v`, or `None` when it leaves a remainder.
    fn div_linear_s(&self, v: GaussRat) -> Option<Poly> {
        let si = Var::S.slot();
        let mut by_power: BTreeMap<u8, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[si] = 0;
            by_power.entry(e[si]).or_default().add_term(rest, *c);
        }
        let top = *by_power.keys().next_back()?;
        let mut q = Poly::zero();
        let mut carry = Poly::zero();
        for k in (0..=top).rev() {
            let a = by_power.remove(&k).unwrap_or_default();
            let cur = a.add_ref(&carry, GaussRat::one());
            if k == 0 {
                return cur.is_zero().then_some(q);
            }
            for (e, c) in &cur.terms {
                let mut e2 = *e;
                e2[si] = k - 1;
                q.add_term(e2, *c);
            }
            carry = cur.scale(v);
        }
        unreachable!()
    }

    fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..NVARS).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).map(Var::from_slot)
    }

    /// Largest monomial dividing every term.
    fn min_exps(&self) -> Exps {
        let mut m = [u8::MAX; NVARS];
        for e in self.terms.keys() {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    fn div_monomial(&self, m: &Exps) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in &self.terms {
            let mut d = *e;
            for i in 0..NVARS {
                d[i] -= m[i];
            }
            p.add_term(d, *c);
        }
        p
    }

    fn scale(&self, c: GaussRat) -> Poly {
        let mut p = Poly::zero();
        for (e, v) in &self.terms {
            p.add_term(*e, *v * c);
        }
        p
    }

    fn lead(&self) -> Option<GaussRat> {
        self.terms.values().next_back().copied()
    }

    fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&[0; NVARS]).copied(),
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { Var::from_slot(i).to_string() } else { format!("{}^{k}", Var::from_slot(i)) })
                .collect();
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if *c == GaussRat::one() {
                write!(f, "{}", factors.join(" "))?;
            } else {
                write!(f, "{c} {}", factors.join(" "))?;
            }
        }
        Ok(())
    }
}

/// `num / den`, with `den != 0`.
#[derive(Clone, Debug)]
pub struct ScalarFn {
    num: Poly,
    den: Poly,
}

impl ScalarFn {
    pub fn zero() -> ScalarFn {
        ScalarFn::constant(GaussRat::zero())
    }

    pub fn one() -> ScalarFn {
        ScalarFn::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> ScalarFn {
        ScalarFn { num: Poly::constant(c), den: Poly::constant(GaussRat::one()) }
    }

    pub fn int(n: i64) -> ScalarFn {
        ScalarFn::constant(GaussRat::from_int(n as i128))
    }

    pub fn frac(n: i64, d: i64) -> ScalarFn {
        ScalarFn::constant(GaussRat::frac(n as i128, d as i128))
    }

    pub fn i() -> ScalarFn {
        ScalarFn::constant(GaussRat::i())
    }

    pub fn var(v: Var) -> ScalarFn {
        ScalarFn { num: Poly::var(v), den: Poly::constant(GaussRat::one()) }
    }

    pub fn s() -> ScalarFn {
        ScalarFn::var(Var::S)
    }

    pub fn hbar() -> ScalarFn {
        ScalarFn::var(Var::Hbar)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` when the value does not depend on any variable.
    pub fn as_constant(&self) -> Option<GaussRat> {
        Some(self.num.as_constant()? * self.den.as_constant()?.inv())
    }

    pub fn powi(&self, n: u32) -> ScalarFn {
        (0..n).fold(ScalarFn::one(), |acc, _| &acc * self)
    }

    pub fn inv(&self) -> ScalarFn {
        assert!(!self.is_zero(), "inverse of zero scalar");
        ScalarFn { num: self.den.clone(), den: self.num.clone() }.normalized()
    }

    pub fn div(&self, o: &ScalarFn) -> ScalarFn {
        self * &o.inv()
    }

    fn normalized(mut self) -> ScalarFn {
        if self.num.is_zero() {
            return ScalarFn::zero();
        }
        let m = self.num.min_exps();
        let md = self.den.min_exps();
        let common: Exps = std::array::from_fn(|i| m[i].min(md[i]));
        if common.iter().any(|&k| k > 0) {
            self.num = self.num.div_monomial(&common);
            self.den = self.den.div_monomial(&common);
        }
        let lead = self.den.lead().expect("zero denominator");
        if lead != GaussRat::one() {
            let inv = lead.inv();
            self.num = self.num.scale(inv);
            self.den = self.den.scale(inv);
        }
        if self.num == self.den {
            return ScalarFn::one();
        }
        self
    }

    fn map(&self, f: impl Fn(Var) -> Option<Poly>) -> ScalarFn {
        ScalarFn { num: self.num.substitute(&f), den: self.den.substitute(&f) }.normalized()
    }

    /// `f(s* + d)`: the coefficient seen after moving across a word that shifts `s*` by `d`.
    pub fn shift(&self, d: i32) -> ScalarFn {
        if d == 0 {
            return self.clone();
        }
        self.map(|v| match v {
            Var::S => Some(Poly::var(Var::S).add_ref(&Poly::constant(GaussRat::from_int(d as i128)), GaussRat::one())),
            Var::Gamma(k) => Some(Poly::var(Var::Gamma(k + d))),
            Var::Sqrt(k) => Some(Poly::var(Var::Sqrt(k + d))),
            _ => None,
        })
    }

    /// `f(-s*)`, with `γ` even in `s*`. Root atoms have no meaning here.
    pub fn negate_s(&self) -> ScalarFn {
        self.map(|v| match v {
            Var::S => Some(Poly::var(Var::S).scale(-GaussRat::one())),
            Var::Gamma(k) => Some(Poly::var(Var::Gamma(-k))),
            Var::Sqrt(_) => panic!("negate_s on a square-root atom"),
            _ => None,
        })
    }

    /// Substitute one variable by a scalar; `None` when the denominator vanishes.
    pub fn subs(&self, v: Var, value: &ScalarFn) -> Option<ScalarFn> {
        let deg = |p: &Poly| p.terms.keys().map(|e| e[v.slot()]).max().unwrap_or(0);
        let d = deg(&self.num).max(deg(&self.den));
        let (a, b) = (&value.num, &value.den);
        // f(a/b) with both sides multiplied by b^d
        let rebuild = |p: &Poly| -> Poly {
            let mut out = Poly::zero();
            for (e, c) in &p.terms {
                let k = e[v.slot()];
                let mut rest = *e;
                rest[v.slot()] = 0;
                let mut t = Poly::zero();
                t.add_term(rest, *c);
                for _ in 0..k {
                    t = t.mul_ref(a);
                }
                for _ in k..d {
                    t = t.mul_ref(b);
                }
                out = out.add_ref(&t, GaussRat::one());
            }
            out
        };
        let den = rebuild(&self.den);
        if den.is_zero() {
            return None;
        }
        Some(ScalarFn { num: rebuild(&self.num), den }.normalized())
    }

    /// Value at `s* = v`, cancelling common factors `s* - v` first.
    /// `None` at a genuine pole.
    pub fn at_s(&self, v: &ScalarFn) -> Option<ScalarFn> {
        let point = v.as_constant().expect("evaluation point must be a number");
        let mut f = self.clone();
        loop {
            if let Some(r) = f.subs(Var::S, v) {
                return Some(r);
            }
            let num = f.num.div_linear_s(point)?;
            let den = f.den.div_linear_s(point)?;
            f = ScalarFn { num, den };
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.num.vars().chain(self.den.vars()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl PartialEq for ScalarFn {
    fn eq(&self, o: &ScalarFn) -> bool {
        (self - o).is_zero()
    }
}

impl<'a> Add<&'a ScalarFn> for &'a ScalarFn {
    type Output = ScalarFn;
    fn add(self, o: &ScalarFn) -> ScalarFn {
        if self.den == o.den {
            return ScalarFn { num: self.num.add_ref(&o.num, GaussRat::one()), den: self.den.clone() }.normalized();
        }
        let num = self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den), GaussRat::one());
        ScalarFn { num, den: self.den.mul_ref(&o.den) }.normalized()
    }
}

impl<'a> Sub<&'a ScalarFn> for &'a ScalarFn {
    type Output = ScalarFn;
    fn sub(self, o: &ScalarFn) -> ScalarFn {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ScalarFn> for &'a ScalarFn {
    type Output = ScalarFn;
    fn mul(self, o: &ScalarFn) -> ScalarFn {
        if self.is_zero() || o.is_zero() {
            return ScalarFn::zero();
        }
        ScalarFn { num: self.num.mul_ref(&o.num), den: self.den.mul_ref(&o.den) }.normalized()
    }
}

impl Neg for &ScalarFn {
    type Output = ScalarFn;
    fn neg(self) -> ScalarFn {
        ScalarFn { num: self.num.scale(-GaussRat::one()), den: self.den.clone() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarFn {
            type Output = ScalarFn;
            fn $m(self, o: ScalarFn) -> ScalarFn {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for ScalarFn {
    type Output = ScalarFn;
    fn neg(self) -> ScalarFn {
        -&self
    }
}

impl From<Rat> for ScalarFn {
    fn from(r: Rat) -> ScalarFn {
        ScalarFn::constant(GaussRat::real(r))
    }
}

impl fmt::Display for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_constant() {
            Some(c) if c == GaussRat::one() => write!(f, "{}", self.num),
            _ => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

/// Named scalars of the calculus, all functions of `s*` and the Casimirs.
pub mod named {
    use super::*;

    /// `S² = -ħ²(s*² - ¼)`
    pub fn s2() -> ScalarFn {
        let h2 = ScalarFn::hbar().powi(2);
        -(&h2 * &(&ScalarFn::s().powi(2) - &ScalarFn::frac(1, 4)))
    }

    /// `V·Q = (c1 + S²)/ħ`
    pub fn u() -> ScalarFn {
        (&ScalarFn::var(Var::C1) + &s2()).div(&ScalarFn::hbar())
    }

    /// `α = c2/S²`
    pub fn alpha() -> ScalarFn {
        ScalarFn::var(Var::C2).div(&s2())
    }

    /// `β = 2V·Q/ħ - α²`
    pub fn beta() -> ScalarFn {
        &(&ScalarFn::int(2) * &u()).div(&ScalarFn::hbar()) - &alpha().powi(2)
    }

    pub fn gamma() -> ScalarFn {
        ScalarFn::var(Var::Gamma(0))
    }

    pub fn sqrt_s(k: i32) -> ScalarFn {
        ScalarFn::var(Var::Sqrt(k))
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = &ScalarFn::s() + &ScalarFn::frac(1, 2);
        let b = a.inv();
        assert_eq!(&a * &b, ScalarFn::one());
        assert!((&a - &a).is_zero());
        let r = sqrt_s(0);
        assert_eq!(&r * &r, ScalarFn::s());
    }

    #[test]
    fn shift_moves_every_s_dependence() {
        let f = &(&ScalarFn::s().powi(2) * &gamma()) * &sqrt_s(1);
        let g = f.shift(2).shift(-1);
        assert_eq!(g, f.shift(1));
        assert_eq!(s2().shift(1), -(&ScalarFn::hbar().powi(2) * &(&(&ScalarFn::s() + &ScalarFn::one()).powi(2) - &ScalarFn::frac(1, 4))));
        assert_eq!(s2().negate_s(), s2());
    }

    #[test]
    fn beta_closed_form() {
        // ħ²(α² + β) = 2ħ V·Q
        let lhs = &ScalarFn::hbar().powi(2) * &(&alpha().powi(2) + &beta());
        assert_eq!(lhs, &(&ScalarFn::int(2) * &ScalarFn::hbar()) * &u());
    }

    #[test]
    fn substitution() {
        let f = (&ScalarFn::s() - &ScalarFn::int(1)).div(&(&ScalarFn::s() + &ScalarFn::int(1)));
        assert_eq!(f.subs(Var::S, &ScalarFn::int(1)).unwrap(), ScalarFn::zero());
        assert!(f.subs(Var::S, &ScalarFn::int(-1)).is_none());
        assert_eq!(f.subs(Var::S, &ScalarFn::frac(1, 2)).unwrap(), ScalarFn::frac(-1, 3));
        let removable = (&ScalarFn::s().powi(2) - &ScalarFn::int(1)).div(&(&ScalarFn::s() - &ScalarFn::int(1)));
        assert!(removable.subs(Var::S, &ScalarFn::int(1)).is_none());
        assert_eq!(removable.at_s(&ScalarFn::int(1)).unwrap(), ScalarFn::int(2));
        assert!(f.at_s(&ScalarFn::int(-1)).is_none());
    }
}
