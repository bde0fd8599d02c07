//! Gaussian rationals: the scalar field of the enveloping algebra.
//!
//! Powers of ħ are carried separately in the monomial key, so a coefficient is
//! just `re + i·im` with exact rational parts. Both parts share one positive
//! denominator, which keeps the integer case free of gcd work.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rat = Ratio<i128>;

/// `(re + i·im) / den` with `den > 0` and `gcd(re, im, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    re: i128,
    im: i128,
    den: i128,
}

impl GaussRat {
    fn raw(re: i128, im: i128, den: i128) -> Self {
        if den == 1 {
            return GaussRat { re, im, den };
        }
        let (mut re, mut im, mut den) = if den < 0 { (-re, -im, -den) } else { (re, im, den) };
        let g = re.gcd(&im).gcd(&den);
        if g > 1 {
            re /= g;
            im /= g;
            den /= g;
        }
        if re == 0 && im == 0 {
            den = 1;
        }
        GaussRat { re, im, den }
    }

    pub fn new(re: Rat, im: Rat) -> Self {
        let den = re.denom().lcm(im.denom());
        GaussRat::raw(re.numer() * (den / re.denom()), im.numer() * (den / im.denom()), den)
    }

    pub fn re(&self) -> Rat {
        Rat::new(self.re, self.den)
    }

    pub fn im(&self) -> Rat {
        Rat::new(self.im, self.den)
    }

    pub fn from_int(n: i128) -> Self {
        GaussRat { re: n, im: 0, den: 1 }
    }

    pub fn real(r: Rat) -> Self {
        GaussRat::raw(*r.numer(), 0, *r.denom())
    }

    pub fn frac(n: i128, d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        GaussRat::raw(n, 0, d)
    }

    pub fn i() -> Self {
        GaussRat { re: 0, im: 1, den: 1 }
    }

    pub fn zero() -> Self {
        GaussRat::from_int(0)
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn conj(&self) -> Self {
        GaussRat { im: -self.im, ..*self }
    }

    pub fn norm_sqr(&self) -> Rat {
        Rat::new(self.re * self.re + self.im * self.im, self.den * self.den)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero Gaussian rational");
        let n = self.re * self.re + self.im * self.im;
        GaussRat::raw(self.re * self.den, -self.im * self.den, n)
    }

    /// Multiply by `i`.
    pub fn times_i(&self) -> Self {
        GaussRat { re: -self.im, im: self.re, den: self.den }
    }

    /// Multiply by `-i`, i.e. divide by `i`.
    pub fn div_i(&self) -> Self {
        GaussRat { re: self.im, im: -self.re, den: self.den }
    }

    pub fn scale(&self, r: Rat) -> Self {
        *self * GaussRat::real(r)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        if self.den == o.den {
            GaussRat::raw(self.re + o.re, self.im + o.im, self.den)
        } else {
            GaussRat::raw(self.re * o.den + o.re * self.den, self.im * o.den + o.im * self.den, self.den * o.den)
        }
    }
}

impl AddAssign for GaussRat {
    fn add_assign(&mut self, o: GaussRat) {
        *self = *self + o;
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        self + (-o)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im, den: self.den }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        if self.im == 0 && o.im == 0 {
            return GaussRat::raw(self.re * o.re, 0, self.den * o.den);
        }
        GaussRat::raw(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.den * o.den,
        )
    }
}

fn fmt_rat(r: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Prints `a`, `a*i`, or `(a+b*i)`; the grammar reads all three back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re(), self.im());
        match (re.is_zero(), im.is_zero()) {
            (_, true) => fmt_rat(&re, f),
            (true, false) => {
                fmt_rat(&im, f)?;
                write!(f, "*i")
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rat(&re, f)?;
                if im.is_negative() {
                    write!(f, "-")?;
                    fmt_rat(&im.abs(), f)?;
                } else {
                    write!(f, "+")?;
                    fmt_rat(&im, f)?;
                }
                write!(f, "*i)")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = GaussRat::new(Rat::new(1, 2), Rat::new(-3, 4));
        let b = a.inv();
        assert_eq!(a * b, GaussRat::one());
        assert_eq!(GaussRat::i() * GaussRat::i(), GaussRat::from_int(-1));
        assert_eq!(a.times_i().div_i(), a);
        assert_eq!(a + (-a), GaussRat::zero());
        assert_eq!(GaussRat::frac(2, 4), GaussRat::frac(-1, -2));
        assert_eq!(a.re(), Rat::new(1, 2));
        assert_eq!(a.im(), Rat::new(-3, 4));
    }

    #[test]
    fn display() {
        assert_eq!(GaussRat::frac(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussRat::i().to_string(), "1*i");
        assert_eq!(GaussRat::new(Rat::from_integer(1), Rat::from_integer(-2)).to_string(), "(1-2*i)");
    }
}
