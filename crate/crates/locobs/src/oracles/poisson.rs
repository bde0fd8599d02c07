//! Classical spinless realisation: polynomials in `x^0..x^3, p_0..p_3` with
//! `{f, g} = ∂f/∂x^μ ∂g/∂p_μ - ∂f/∂p_μ ∂g/∂x^μ`, so that `{p_μ, x_ν} = -η_μν`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::metric::eta;
use crate::algebra::relations::bracket;
use crate::algebra::{Gen, GenKind, Rat};
use crate::report::{Report, Residual, Status};

/// Exponents of `x^0..x^3` then `p_0..p_3`.
pub type Exps = [u8; 8];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseSpacePoly {
    terms: BTreeMap<Exps, Rat>,
}

impl PhaseSpacePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 8], c);
        p
    }

    fn var(i: usize) -> Self {
        let mut e = [0; 8];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, Rat::one());
        p
    }

    /// `x^μ`
    pub fn x_up(mu: usize) -> Self {
        Self::var(mu)
    }

    /// `x_μ = η_μμ x^μ`
    pub fn x_low(mu: usize) -> Self {
        Self::var(mu).scale(Rat::from(eta(mu, mu) as i128))
    }

    /// `p_μ`
    pub fn p(mu: usize) -> Self {
        Self::var(4 + mu)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Exps, c: Rat) {
        let v = self.terms.get(&e).copied().unwrap_or_else(Rat::zero) + c;
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn scale(&self, k: Rat) -> Self {
        let mut out = Self::zero();
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(e, c)| (*e, c * k)).collect();
        }
        out
    }

    pub fn deriv(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * Rat::from(e[i] as i128));
            }
        }
        out
    }

    pub fn poisson(&self, g: &Self) -> Self {
        let mut out = Self::zero();
        for mu in 0..4 {
            out = &out + &(&(&self.deriv(mu) * &g.deriv(4 + mu)) - &(&self.deriv(4 + mu) * &g.deriv(mu)));
        }
        out
    }
}

impl Add for &PhaseSpacePoly {
    type Output = PhaseSpacePoly;
    fn add(self, o: &PhaseSpacePoly) -> PhaseSpacePoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Sub for &PhaseSpacePoly {
    type Output = PhaseSpacePoly;
    fn sub(self, o: &PhaseSpacePoly) -> PhaseSpacePoly {
        self + &(-o)
    }
}

impl Neg for &PhaseSpacePoly {
    type Output = PhaseSpacePoly;
    fn neg(self) -> PhaseSpacePoly {
        self.scale(-Rat::one())
    }
}

impl Mul for &PhaseSpacePoly {
    type Output = PhaseSpacePoly;
    fn mul(self, o: &PhaseSpacePoly) -> PhaseSpacePoly {
        let mut out = PhaseSpacePoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut e = *a;
                for k in 0..8 {
                    e[k] += b[k];
                }
                out.add_term(e, x * y);
            }
        }
        out
    }
}

impl fmt::Display for PhaseSpacePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, n) in e.iter().enumerate() {
                if *n > 0 {
                    let name = if i < 4 { format!("x{i}") } else { format!("p{}", i - 4) };
                    if *n == 1 {
                        write!(f, " {name}")?;
                    } else {
                        write!(f, " {name}^{n}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `p·x`
pub fn dilatation() -> PhaseSpacePoly {
    (0..4).fold(PhaseSpacePoly::zero(), |acc, m| &acc + &(&PhaseSpacePoly::p(m) * &PhaseSpacePoly::x_up(m)))
}

/// `x_μ x^μ`
pub fn x_squared() -> PhaseSpacePoly {
    (0..4).fold(PhaseSpacePoly::zero(), |acc, m| &acc + &(&PhaseSpacePoly::x_low(m) * &PhaseSpacePoly::x_up(m)))
}

/// `p_μ p^μ`
pub fn p_squared() -> PhaseSpacePoly {
    (0..4).fold(PhaseSpacePoly::zero(), |acc, m| &acc + &(&PhaseSpacePoly::p(m) * &PhaseSpacePoly::p(m)).scale(Rat::from(eta(m, m) as i128)))
}

/// Classical value of a generator.
pub fn classical(g: Gen) -> PhaseSpacePoly {
    use PhaseSpacePoly as Ps;
    match g.kind() {
        GenKind::P(m) => Ps::p(m),
        GenKind::J(m, n) => &(&Ps::p(m) * &Ps::x_low(n)) - &(&Ps::p(n) * &Ps::x_low(m)),
        GenKind::D => dilatation(),
        GenKind::C(m) => &(&dilatation() * &Ps::x_low(m)).scale(Rat::from(2)) - &(&Ps::p(m) * &x_squared()),
    }
}

/// Classical value of the table entry `(a, b)`.
pub fn table_image(a: Gen, b: Gen) -> PhaseSpacePoly {
    bracket(a, b).iter().fold(PhaseSpacePoly::zero(), |acc, (g, c)| &acc + &classical(*g).scale(Rat::from(*c as i128)))
}

/// Labelled residuals: every bracket table entry, then `{C_μ, p²} - 4p²x_μ`.
pub fn poisson_residuals() -> Vec<(String, PhaseSpacePoly)> {
    let gens: Vec<Gen> = Gen::all().collect();
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let lhs = classical(*a).poisson(&classical(*b));
            out.push((format!("{{{a},{b}}}"), &lhs - &table_image(*a, *b)));
        }
    }
    let p2 = p_squared();
    for m in 0..4 {
        let lhs = classical(Gen::c(m)).poisson(&p2);
        let rhs = (&p2 * &PhaseSpacePoly::x_low(m)).scale(Rat::from(4));
        out.push((format!("{{C[{m}],p^2}} - 4 p^2 x_{m}"), &lhs - &rhs));
    }
    out
}

pub const POISSON_ID: &str = "oracle/poisson";
pub const POISSON_ANCHOR: &str =
    "classical (defCp), (J_X), (D_X), (CM): \"2D·X_μ − P_μ·X²\", \"the scalar product of momentum and position\"";

pub fn poisson_check() -> Report {
    let started = std::time::Instant::now();
    let res = poisson_residuals();
    let bad: Vec<&(String, PhaseSpacePoly)> = res.iter().filter(|(_, r)| !r.is_zero()).collect();
    let mut notes = vec![format!("{}/{} polynomial identities hold", res.len() - bad.len(), res.len())];
    notes.extend(bad.iter().map(|(n, r)| format!("failed: {n} = {r}")));
    Report {
        id: POISSON_ID.into(),
        paper_ref: POISSON_ANCHOR.into(),
        status: if bad.is_empty() { Status::Pass } else { Status::Fail },
        residual: Residual::Exact(bad.first().map_or_else(|| "0".to_string(), |(_, r)| r.to_string())),
        ms: Some(started.elapsed().as_millis() as u64),
        notes,
    }
}
