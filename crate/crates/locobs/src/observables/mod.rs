//! Derived observables built from the conformal generators: spin, position,
//! the external part of `C`, quadrupoles and the conformal Casimirs.
//!
//! Index conventions: every vector is stored with a lower index; raise with
//! [`up`]. Tensors `A_{μν}` attached to a vector `A` use `ε_{μνρσ} A^ρ V^σ`.

pub mod catalog;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::metric::{eps_lower, eps_upper, eta, sign};
use crate::algebra::{j_signed, Expression, Gen, GaussRat};

pub type Vec4 = [Expression; 4];

/// `A^μ` from `A_μ`.
pub fn up(mu: usize, e: &Expression) -> Expression {
    e.scale_rat(sign(mu) as i128, 1)
}

pub fn int(n: i64) -> Expression {
    Expression::int(n as i128)
}

/// `A^ρ B_ρ` with plain products.
pub fn contract(a: &Vec4, b: &Vec4) -> Expression {
    Expression::sum((0..4).map(|r| up(r, &a[r].times(&b[r]))))
}

/// `A^ρ · B_ρ` with symmetrised products.
pub fn dot(a: &Vec4, b: &Vec4) -> Expression {
    Expression::sum((0..4).map(|r| up(r, &a[r].sym(&b[r]))))
}

fn vec4(f: impl Fn(usize) -> Expression) -> Vec4 {
    std::array::from_fn(f)
}

fn gen(g: Gen) -> Expression {
    Expression::gen(g)
}

/// `J_{μν}` for any index order.
pub fn j(mu: usize, nu: usize) -> Expression {
    match j_signed(mu, nu) {
        Some((s, g)) => gen(g).scale_rat(s as i128, 1),
        None => Expression::zero(),
    }
}

/// Everything derived from the generators, computed once and shared.
pub struct Kit {
    pub p: Vec4,
    pub c: Vec4,
    pub d: Expression,
    /// polynomial `P^ρ P_ρ`, normalizes to `M^2`
    pub p2: Expression,
    pub w: Vec4,
    pub st: [Vec4; 4],
    pub s2: Expression,
    pub x: Vec4,
    pub x2: Expression,
    pub ext: Vec4,
    pub v: Vec4,
    pub sv: Vec4,
    pub q: Vec4,
    pub r: Vec4,
    /// `V·Q`
    pub u: Expression,
    pub c1: Expression,
    pub c2: Expression,
    pub c3: Expression,
    qt: OnceLock<(Vec4, Vec4)>,
}

static KIT: OnceLock<Kit> = OnceLock::new();

pub fn kit() -> &'static Kit {
    KIT.get_or_init(Kit::build)
}

impl Kit {
    fn build() -> Kit {
        crate::algebra::validate_mass_rules().expect("mass exchange rules");
        let p = vec4(|m| gen(Gen::p(m)));
        let c = vec4(|m| gen(Gen::c(m)));
        let d = gen(Gen::d());
        let p2 = contract(&p, &p);
        let w_up = vec4(|mu| {
            let mut e = Expression::zero();
            for n in 0..4 {
                for r in 0..4 {
                    for s in 0..4 {
                        let ep = eps_upper(mu, n, r, s);
                        if ep != 0 {
                            e.add_scaled(&j(n, r).times(&p[s]), GaussRat::frac(-ep as i128, 2));
                        }
                    }
                }
            }
            e
        });
        let w = vec4(|m| up(m, &w_up[m]));
        let st: [Vec4; 4] = std::array::from_fn(|m| {
            vec4(|n| {
                let mut e = Expression::zero();
                for r in 0..4 {
                    for s in 0..4 {
                        let ep = eps_lower(m, n, r, s);
                        if ep != 0 {
                            e.add_scaled(&w_up[r].times(&up(s, &p[s])), GaussRat::from_int(ep as i128));
                        }
                    }
                }
                e.times_mass(-2)
            })
        });
        let s2 = contract(&w, &w).times_mass(-2);
        let x: Vec4 = (*crate::algebra::engine::position()).clone();
        let x2 = contract(&x, &x);
        let ext = vec4(|mu| {
            let mut e = d.sym(&x[mu]).scale_rat(2, 1) - p[mu].sym(&x2);
            for r in 0..4 {
                e = e + up(r, &x[r].sym(&st[r][mu])).scale_rat(2, 1);
            }
            e - p[mu].times_mass(-2).times(&s2)
        });
        let v = vec4(|m| p[m].times_mass(-1));
        let sv = vec4(|m| w[m].times_mass(-1));
        let q = vec4(|mu| (&c[mu] - &ext[mu]).times_mass(1).hbar_shift(-1).scale_rat(1, 2));
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(p[nu].commutator(&q[mu]).is_zero(), "Q must commute with P");
            }
        }
        let r = vec4(|mu| {
            Expression::sum((0..4).map(|nu| up(nu, &tensor_with(&q, &v, mu, nu).sym(&sv[nu]))))
                .hbar_shift(-1)
        });
        let u = contract(&v, &q);
        let c1 = u.hbar_shift(1) - s2.clone();
        let c2 = dot(&sv, &q);
        let c3 = contract(&q, &q).scale_rat(1, 2) - s2.clone();
        Kit { p, c, d, p2, w, st, s2, x, x2, ext, v, sv, q, r, u, c1, c2, c3, qt: OnceLock::new() }
    }

    /// `S_μ{}^ν`.
    pub fn st_mixed(&self, mu: usize, nu: usize) -> Expression {
        up(nu, &self.st[mu][nu])
    }

    /// `A_{μν} = ε_{μνρσ} A^ρ V^σ`.
    pub fn tensor(&self, a: &Vec4, mu: usize, nu: usize) -> Expression {
        tensor_with(a, &self.v, mu, nu)
    }

    /// Transverse quadrupole multiplied by `S²` on the left and on the right:
    /// `(S² Q̂, Q̂ S²)`. Both are polynomial, unlike `Q̂` itself.
    pub fn qhat_scaled(&self) -> &(Vec4, Vec4) {
        self.qt.get_or_init(|| {
            let t = &self.s2;
            let tu = t.times(&self.u);
            let left = vec4(|m| t.times(&self.q[m]) - tu.times(&self.v[m]) - self.c2.times(&self.sv[m]));
            let right = vec4(|m| self.q[m].times(t) - tu.times(&self.v[m]) - self.c2.times(&self.sv[m]));
            (left, right)
        })
    }

    /// `Δ_a = a^μ C_μ / 2`.
    pub fn delta(&self, a: [i64; 4]) -> Expression {
        Expression::sum((0..4).map(|m| self.c[m].scale_rat(a[m] as i128, 2)))
    }
}

fn tensor_with(a: &Vec4, v: &Vec4, mu: usize, nu: usize) -> Expression {
    let mut e = Expression::zero();
    for r in 0..4 {
        for s in 0..4 {
            let ep = eps_lower(mu, nu, r, s) * sign(r) * sign(s);
            if ep != 0 {
                e.add_scaled(&a[r].times(&v[s]), GaussRat::from_int(ep as i128));
            }
        }
    }
    e
}

/// `η_{μν}` as an expression.
pub fn eta_e(mu: usize, nu: usize) -> Expression {
    int(eta(mu, nu))
}

/// Named derived observables, as accepted by [`build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observable {
    W(usize),
    Stensor(usize, usize),
    S2,
    X(usize),
    Ext(usize),
    Mass(i32),
    V(usize),
    Svec(usize),
    Q(usize),
    R(usize),
    Delta([i64; 4]),
    C1,
    C2,
    C3,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown observable `{0}`")]
pub struct UnknownName(pub String);

/// Builder output, always normal.
pub fn build(o: &Observable) -> Expression {
    let k = kit();
    match *o {
        Observable::W(m) => k.w[m].clone(),
        Observable::Stensor(m, n) => k.st[m][n].clone(),
        Observable::S2 => k.s2.clone(),
        Observable::X(m) => k.x[m].clone(),
        Observable::Ext(m) => k.ext[m].clone(),
        Observable::Mass(e) => Expression::mass(e),
        Observable::V(m) => k.v[m].clone(),
        Observable::Svec(m) => k.sv[m].clone(),
        Observable::Q(m) => k.q[m].clone(),
        Observable::R(m) => k.r[m].clone(),
        Observable::Delta(a) => k.delta(a),
        Observable::C1 => k.c1.clone(),
        Observable::C2 => k.c2.clone(),
        Observable::C3 => k.c3.clone(),
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::W(m) => write!(f, "W[{m}]"),
            Observable::Stensor(m, n) => write!(f, "S[{m},{n}]"),
            Observable::S2 => write!(f, "S2"),
            Observable::X(m) => write!(f, "X[{m}]"),
            Observable::Ext(m) => write!(f, "Ext[{m}]"),
            Observable::Mass(k) => write!(f, "M^{k}"),
            Observable::V(m) => write!(f, "V[{m}]"),
            Observable::Svec(m) => write!(f, "Svec[{m}]"),
            Observable::Q(m) => write!(f, "Q[{m}]"),
            Observable::R(m) => write!(f, "R[{m}]"),
            Observable::Delta(a) => write!(f, "Delta({},{},{},{})", a[0], a[1], a[2], a[3]),
            Observable::C1 => write!(f, "c1"),
            Observable::C2 => write!(f, "c2"),
            Observable::C3 => write!(f, "c3"),
        }
    }
}

impl FromStr for Observable {
    type Err = UnknownName;

    /// Accepts the forms printed by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UnknownName(s.to_string());
        let s = s.trim();
        let simple = match s {
            "S2" => Some(Observable::S2),
            "c1" => Some(Observable::C1),
            "c2" => Some(Observable::C2),
            "c3" => Some(Observable::C3),
            _ => None,
        };
        if let Some(o) = simple {
            return Ok(o);
        }
        if let Some(k) = s.strip_prefix("M^") {
            return k.parse().map(Observable::Mass).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("Delta(").and_then(|r| r.strip_suffix(')')) {
            let a: Vec<i64> = rest.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
            return <[i64; 4]>::try_from(a).map(Observable::Delta).map_err(|_| bad());
        }
        let (name, rest) = s.split_once('[').ok_or_else(bad)?;
        let idx: Vec<usize> = rest
            .strip_suffix(']')
            .ok_or_else(bad)?
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        if idx.iter().any(|&i| i > 3) {
            return Err(bad());
        }
        match (name, idx.as_slice()) {
            ("W", [m]) => Ok(Observable::W(*m)),
            ("S", [m, n]) => Ok(Observable::Stensor(*m, *n)),
            ("X", [m]) => Ok(Observable::X(*m)),
            ("Ext", [m]) => Ok(Observable::Ext(*m)),
            ("V", [m]) => Ok(Observable::V(*m)),
            ("Svec", [m]) => Ok(Observable::Svec(*m)),
            ("Q", [m]) => Ok(Observable::Q(*m)),
            ("R", [m]) => Ok(Observable::R(*m)),
            _ => Err(bad()),
        }
    }
}
