//! Sparse square matrices over the Gaussian rationals with big integers.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;
pub type Cq = Complex<Q>;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn re(x: Q) -> Cq {
    Complex::new(x, Q::zero())
}

pub fn cq(n: i64, d: i64) -> Cq {
    re(q(n, d))
}

pub fn i_unit() -> Cq {
    Complex::new(Q::zero(), Q::one())
}

/// Modulus as a float, for reporting only.
pub fn modulus(x: &Cq) -> f64 {
    let a = x.re.to_f64().unwrap_or(f64::INFINITY);
    let b = x.im.to_f64().unwrap_or(f64::INFINITY);
    a.hypot(b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SMat {
    n: usize,
    rows: Vec<BTreeMap<usize, Cq>>,
}

impl SMat {
    pub fn zero(n: usize) -> Self {
        SMat { n, rows: vec![BTreeMap::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        SMat::diag((0..n).map(|_| cq(1, 1)))
    }

    pub fn diag(d: impl IntoIterator<Item = Cq>) -> Self {
        let d: Vec<Cq> = d.into_iter().collect();
        let mut m = SMat::zero(d.len());
        for (k, x) in d.into_iter().enumerate() {
            m.set(k, k, x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Cq {
        self.rows[r].get(&c).cloned().unwrap_or_else(Cq::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Cq) {
        if x.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, x);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &Cq) {
        let v = self.get(r, c) + x;
        self.set(r, c, v);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Cq)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn scale(&self, k: &Cq) -> SMat {
        let mut out = SMat::zero(self.n);
        if k.is_zero() {
            return out;
        }
        for (r, c, x) in self.entries() {
            out.rows[r].insert(c, x * k);
        }
        out
    }

    /// Keeps the entries for which `keep(row, col)` holds.
    pub fn filter(&self, keep: impl Fn(usize, usize) -> bool) -> SMat {
        let mut out = SMat::zero(self.n);
        for (r, c, x) in self.entries() {
            if keep(r, c) {
                out.rows[r].insert(c, x.clone());
            }
        }
        out
    }

    pub fn commutator(&self, other: &SMat) -> SMat {
        &(self * other) - &(other * self)
    }

    /// `(AB + BA)/2`
    pub fn sym(&self, other: &SMat) -> SMat {
        (&(self * other) + &(other * self)).scale(&cq(1, 2))
    }

    /// Largest entry modulus over rows and columns in `range`.
    pub fn max_norm_on(&self, range: std::ops::Range<usize>) -> f64 {
        let mut best = 0.0f64;
        for r in range.clone() {
            for (_, x) in self.rows[r].range(range.clone()) {
                best = best.max(modulus(x));
            }
        }
        best
    }

    pub fn max_norm(&self) -> f64 {
        self.max_norm_on(0..self.n)
    }
}

impl Add for &SMat {
    type Output = SMat;
    fn add(self, o: &SMat) -> SMat {
        let mut out = self.clone();
        for (r, c, x) in o.entries() {
            out.add_at(r, c, x);
        }
        out
    }
}

impl Sub for &SMat {
    type Output = SMat;
    fn sub(self, o: &SMat) -> SMat {
        self + &(-o)
    }
}

impl Neg for &SMat {
    type Output = SMat;
    fn neg(self) -> SMat {
        self.scale(&cq(-1, 1))
    }
}

impl Mul for &SMat {
    type Output = SMat;
    fn mul(self, o: &SMat) -> SMat {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let mut out = SMat::zero(self.n);
        for (r, row) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[r];
            for (k, x) in row {
                for (c, y) in &o.rows[*k] {
                    let e = acc.entry(*c).or_insert_with(Cq::zero);
                    *e = &*e + x * y;
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        out
    }
}
