//! Text form of expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')* power ('*' power)*
//! power  := factor ('^' integer)?
//! factor := rational | 'i' | 'hbar' | 'M' | 'inv(P2)' | gen | derived
//!         | '(' expr ',' expr ')' | 'dot(' expr ',' expr ')' | '(' expr ')'
//! gen    := 'P[' idx ']' | 'C[' idx ']' | 'J[' idx ',' idx ']' | 'D'
//! derived:= 'X[' idx ']' | 'W[' idx ']' | 'S[' idx ',' idx ']' | 'V[' idx ']'
//!         | 'Svec[' idx ']' | 'Q[' idx ']' | 'R[' idx ']' | 'Ext[' idx ']'
//! ```
//!
//! `(a, b)` is the commutator divided by `iħ`, `dot(a, b)` the symmetrised
//! product. Exponents are non-negative except on `hbar`, `M` and `inv(P2)`.
//! Whatever [`Expression`]'s `Display` prints parses back to the same value.

use std::fmt;

use crate::algebra::{Expression, GaussRat, Gen, Rat};
use crate::observables::{build, j, Observable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected ", self.line, self.column)?;
        if self.expected.len() == 1 {
            write!(f, "{}", self.expected[0])?;
        } else {
            write!(f, "one of {}", self.expected.join(", "))?;
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

const FACTOR_START: &[&str] = &[
    "rational", "'i'", "'hbar'", "'M'", "'inv(P2)'", "'D'", "'P['", "'C['", "'J['", "'X['", "'W['", "'S['", "'V['",
    "'Svec['", "'Q['", "'R['", "'Ext['", "'('", "'dot('", "'-'",
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type Res<T> = Result<T, ParseError>;

#[derive(Clone, Copy)]
enum Pure {
    Mass(i32),
    Hbar,
}

pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Res<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        self.error_at(self.pos, expected)
    }

    fn error_at(&self, at: usize, expected: &[&str]) -> ParseError {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        let found = match self.src[at..].chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let tok: String = self.src[at..].chars().take_while(|c| !c.is_whitespace()).take(12).collect();
                format!("`{tok}`")
            }
        };
        ParseError { line, column, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn expr(&mut self) -> Res<Expression> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = e + self.term()?;
            } else if self.eat('-') {
                e = e - self.term()?;
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Res<Expression> {
        let mut negate = false;
        loop {
            if self.eat('-') {
                negate = !negate;
            } else if !self.eat('+') {
                break;
            }
        }
        let mut e = self.power()?;
        while self.eat('*') {
            let f = self.power()?;
            e = e.times(&f);
        }
        Ok(if negate { -e } else { e })
    }

    fn power(&mut self) -> Res<Expression> {
        let (base, pure) = self.factor()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let n = self.integer(true)?;
        let total = |k: i32| i32::try_from(n).ok().and_then(|n| n.checked_mul(k));
        match pure {
            Some(Pure::Mass(k)) => total(k).map(Expression::mass).ok_or_else(|| self.error_at(at, &["exponent in range"])),
            Some(Pure::Hbar) => {
                total(1).map(|n| Expression::one().hbar_shift(n)).ok_or_else(|| self.error_at(at, &["exponent in range"]))
            }
            None => match u32::try_from(n) {
                Ok(n) => Ok(base.pow(n)),
                Err(_) => Err(self.error_at(at, &["non-negative exponent"])),
            },
        }
    }

    fn integer(&mut self, signed: bool) -> Res<i128> {
        self.skip_ws();
        let start = self.pos;
        let r = self.rest();
        let mut len = 0;
        if signed && r.starts_with('-') {
            len = 1;
        }
        let digits = r[len..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error_at(start, &["integer"]));
        }
        len += digits;
        let v = r[..len].parse::<i128>().map_err(|_| self.error_at(start, &["integer that fits in 128 bits"]))?;
        self.pos += len;
        Ok(v)
    }

    fn index(&mut self) -> Res<usize> {
        self.skip_ws();
        let at = self.pos;
        match self.rest().chars().next() {
            Some(c @ '0'..='3') if !self.rest()[1..].starts_with(|d: char| d.is_ascii_digit()) => {
                self.pos += 1;
                Ok(c as usize - '0' as usize)
            }
            _ => Err(self.error_at(at, &["'0'", "'1'", "'2'", "'3'"])),
        }
    }

    fn indices(&mut self, n: usize) -> Res<Vec<usize>> {
        let mut out = vec![self.index()?];
        for _ in 1..n {
            self.expect(',')?;
            out.push(self.index()?);
        }
        self.expect(']')?;
        Ok(out)
    }

    fn pair(&mut self) -> Res<(Expression, Expression)> {
        let a = self.expr()?;
        self.expect(',')?;
        let b = self.expr()?;
        self.expect(')')?;
        Ok((a, b))
    }

    /// The factor, and what it is a power of when negative exponents make sense.
    fn factor(&mut self) -> Res<(Expression, Option<Pure>)> {
        let Some(c) = self.peek() else {
            return Err(self.error(FACTOR_START));
        };
        if c.is_ascii_digit() {
            let n = self.integer(false)?;
            let mut d = 1;
            if self.rest().starts_with('/') {
                self.pos += 1;
                let at = self.pos;
                d = self.integer(false)?;
                if d == 0 {
                    return Err(self.error_at(at, &["nonzero denominator"]));
                }
            }
            return Ok((Expression::scalar(GaussRat::real(Rat::new(n, d))), None));
        }
        if c == '(' {
            self.pos += 1;
            let a = self.expr()?;
            if self.eat(',') {
                let b = self.expr()?;
                self.expect(')')?;
                return Ok((a.commutator(&b), None));
            }
            if !self.eat(')') {
                return Err(self.error(&["','", "')'"]));
            }
            return Ok((a, None));
        }
        let at = self.pos;
        let name_len = self.rest().bytes().take_while(u8::is_ascii_alphanumeric).count();
        if name_len == 0 {
            return Err(self.error(FACTOR_START));
        }
        let name = &self.rest()[..name_len];
        self.pos += name_len;
        let opens = |p: &mut Self, c: char| p.rest().starts_with(c) && {
            p.pos += 1;
            true
        };
        let simple = match name {
            "i" => Some((Expression::i(), None)),
            "hbar" => Some((Expression::hbar(), Some(Pure::Hbar))),
            "M" => Some((Expression::mass(1), Some(Pure::Mass(1)))),
            "D" => Some((Expression::gen(Gen::d()), None)),
            _ => None,
        };
        if let Some(s) = simple {
            return Ok(s);
        }
        if name == "inv" && self.rest().starts_with("(P2)") {
            self.pos += 4;
            return Ok((Expression::mass(-2), Some(Pure::Mass(-2))));
        }
        if name == "dot" && opens(self, '(') {
            let (a, b) = self.pair()?;
            return Ok((a.sym(&b), None));
        }
        let arity = match name {
            "P" | "C" | "X" | "W" | "V" | "Svec" | "Q" | "R" | "Ext" => 1,
            "J" | "S" => 2,
            _ => 0,
        };
        if arity == 0 || !opens(self, '[') {
            return Err(self.error_at(at, FACTOR_START));
        }
        let ix = self.indices(arity)?;
        let e = match name {
            "P" => Expression::gen(Gen::p(ix[0])),
            "C" => Expression::gen(Gen::c(ix[0])),
            "J" => j(ix[0], ix[1]),
            "X" => build(&Observable::X(ix[0])),
            "W" => build(&Observable::W(ix[0])),
            "V" => build(&Observable::V(ix[0])),
            "Svec" => build(&Observable::Svec(ix[0])),
            "Q" => build(&Observable::Q(ix[0])),
            "R" => build(&Observable::R(ix[0])),
            "Ext" => build(&Observable::Ext(ix[0])),
            "S" => build(&Observable::Stensor(ix[0], ix[1])),
            _ => unreachable!(),
        };
        Ok((e, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_and_scalars() {
        assert_eq!(parse("P[0]").unwrap(), Expression::gen(Gen::p(0)));
        assert_eq!(parse(" 3/6 ").unwrap(), Expression::rational(1, 2));
        assert_eq!(parse("J[2,1]").unwrap(), -Expression::gen(Gen::j(1, 2)));
        assert_eq!(parse("M^-2").unwrap(), parse("inv(P2)").unwrap());
        assert_eq!(parse("inv(P2)^2").unwrap(), Expression::mass(-4));
        assert_eq!(parse("- -P[1]").unwrap(), Expression::gen(Gen::p(1)));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("P[4]").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert_eq!(e.expected, ["'0'", "'1'", "'2'", "'3'"]);
        let e = parse("P[0] +\n  Z").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse("P[0]^-1").is_err());
        assert_eq!(parse("hbar^-1*hbar").unwrap(), Expression::one());
        assert!(parse("1/0").is_err());
        assert!(parse("(P[0]").is_err());
        assert!(parse("P[0] P[1]").is_err());
        assert!(parse("").is_err());
        assert!(parse("P[01]").is_err());
    }
}
