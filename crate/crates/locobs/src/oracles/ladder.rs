//! Truncated spin ladder: a direct sum of spin blocks `s = s_min..s_max`
//! carrying the spin vector, `s*`, and interband vector operators built
//! exactly from angular-momentum recurrences.
//!
//! Conventions, with ħ = 1 and `V = (1,0,0,0)`:
//!
//! * each block uses the unnormalised basis `f_m = J₋^{s-m} e_s`, so every
//!   matrix entry is a Gaussian rational;
//! * `S^i = -J_i`, `S^0 = 0`, and `S_μν = ε_{μνρ0} S^ρ` with `ε_{0123} = +1`;
//! * `Q̂` couples neighbouring blocks only. Its downward part has unit
//!   coupling and the upward part from block `s` carries `y_s`, a similarity
//!   frame of the Hermitian ladder in which no square roots appear. The
//!   Hermitian couplings are non-negative exactly when `y_s` has the sign
//!   recorded in the report;
//! * the step operators live in a second frame, conjugated by the block
//!   scaling `d_{s+1}/d_s = √(s*_s s*_{s+1})`, where `A⁺` is the downward
//!   part of `Q̂` and `A⁻ = s*_s s*_{s+1} y_s` times the upward part.
//!
//! The couplings follow from the Casimir values block by block: on block
//! `s` both `Q̂² = γ + βS²` and `(Q̂_1, Q̂_2) = β S_12` are linear in
//! `y_s` and `y_{s-1}`. The first interior block fixes both of its
//! couplings; every later block fixes the next one.

use std::collections::BTreeMap;
use std::ops::Range;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::exact::{cq, i_unit, q, re, Cq, SMat, Q};
use crate::algebra::metric::{eps_lower, eta};
use crate::report::{Report, Residual, Status};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LadderError {
    #[error("s_min must be 0 or 1/2")]
    BadBottom,
    #[error("need s_max >= s_min + 3 for interior blocks")]
    TooShort,
    #[error("inadmissible Casimirs: {0}")]
    InadmissibleCasimirs(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Casimirs {
    pub c1: Q,
    pub c2: Q,
    pub c3: Q,
}

impl Default for Casimirs {
    fn default() -> Self {
        Casimirs { c1: q(3, 10), c2: Q::zero(), c3: q(-3, 1) }
    }
}

/// Block scalars on one spin block.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockScalars {
    pub s2: Q,
    pub u: Q,
    pub alpha: Q,
    pub beta: Q,
    pub gamma: Q,
}

fn block_scalars(twice_s: u32, c: &Casimirs) -> Result<BlockScalars, LadderError> {
    let s = q(twice_s as i64, 2);
    let s2 = -(&s * (&s + Q::one()));
    let u = &c.c1 + &s2;
    let alpha = if s2.is_zero() {
        if !c.c2.is_zero() {
            return Err(LadderError::InadmissibleCasimirs("c2 != 0 needs S² != 0 on the spin-0 block".into()));
        }
        Q::zero()
    } else {
        &c.c2 / &s2
    };
    let beta = q(2, 1) * &u - &alpha * &alpha;
    let gamma = q(2, 1) * (&c.c3 + &s2) - &u * &u - q(2, 1) * &u * &s2;
    Ok(BlockScalars { s2, u, alpha, beta, gamma })
}

pub type Vec4 = [SMat; 4];

fn zero4(n: usize) -> Vec4 {
    std::array::from_fn(|_| SMat::zero(n))
}

#[derive(Clone, Debug)]
pub struct LadderModel {
    pub twice_s_min: u32,
    pub twice_s_max: u32,
    /// Block start offsets, one more than the number of blocks.
    pub offsets: Vec<usize>,
    pub scalars: Vec<BlockScalars>,
    /// Upward couplings `y_s`, one per neighbouring pair of blocks.
    pub couplings: Vec<Q>,
    pub s_star: SMat,
    /// `S^μ`
    pub s_upper: Vec4,
    /// `S_μ`
    pub s_lower: Vec4,
    /// `Q̂_μ` and `R_μ`
    pub qhat: Vec4,
    pub r: Vec4,
    /// Step-operator frame: `Q̂_μ`, `R_μ`, `A⁺_μ`, `A⁻_μ`.
    pub qhat2: Vec4,
    pub r2: Vec4,
    pub a_plus: Vec4,
    pub a_minus: Vec4,
}

/// Spin matrices `(J_x, J_y, J_z)` on one block in the unnormalised basis.
fn spin_block(twice_s: u32) -> [SMat; 3] {
    let d = twice_s as usize + 1;
    let mut jp = SMat::zero(d);
    let mut jm = SMat::zero(d);
    let mut jz = SMat::zero(d);
    for k in 0..d {
        let tm = 2 * k as i64 - twice_s as i64;
        jz.set(k, k, cq(tm, 2));
        if k + 1 < d {
            jp.set(k + 1, k, re(kappa(twice_s, tm)));
            jm.set(k, k + 1, cq(1, 1));
        }
    }
    cartesian(&jp, &jm, jz)
}

/// `(W₊ + W₋)/2`, `(W₊ - W₋)/(2i)`, `W₀`
fn cartesian(wp: &SMat, wm: &SMat, w0: SMat) -> [SMat; 3] {
    let x = (wp + wm).scale(&cq(1, 2));
    let y = (wp - wm).scale(&(-i_unit() * cq(1, 2)));
    [x, y, w0]
}

/// `κ_m = (s - m)(s + m + 1)`, with `J₊ f_m = κ_m f_{m+1}`.
fn kappa(twice_s: u32, twice_m: i64) -> Q {
    let ts = twice_s as i64;
    q(ts - twice_m, 2) * q(ts + twice_m + 2, 2)
}

/// Cartesian components of a vector operator from the block of spin `s`
/// into the block of spin `s'`, as `(rows of s') × (cols of s)` entries.
/// Normalised by `W₊ f_{-s} = f'_{1-s}`.
pub fn interband(twice_s: u32, twice_sp: u32) -> [Vec<(usize, usize, Cq)>; 3] {
    let ts = twice_s as i64;
    let tsp = twice_sp as i64;
    let d = twice_s as usize + 1;
    // a, b, c indexed by k = m + s, with one slot of padding below.
    let mut a = vec![Q::zero(); d + 1];
    a[1] = Q::one();
    for k in 1..d {
        let tm = 2 * (k as i64 - 1) - ts;
        let kp = if (tm + 2).abs() <= tsp { kappa(twice_sp, tm + 2) } else { Q::zero() };
        a[k + 1] = &a[k] * kp / kappa(twice_s, tm);
    }
    let b: Vec<Q> = (0..=d).map(|k| if k == 0 { Q::zero() } else { (&a[k - 1] - &a[k]) / q(2, 1) }).collect();
    let c: Vec<Q> = (0..=d).map(|k| if k == 0 { Q::zero() } else { &b[k] - &b[k - 1] }).collect();
    let target = |tm: i64| -> Option<usize> { (tm.abs() <= tsp).then(|| ((tm + tsp) / 2) as usize) };
    let mut wp = Vec::new();
    let mut w0 = Vec::new();
    let mut wm = Vec::new();
    for k in 0..d {
        let tm = 2 * k as i64 - ts;
        let put = |v: &mut Vec<(usize, usize, Cq)>, tm_out: i64, x: &Q| {
            if let Some(r) = target(tm_out) {
                if !x.is_zero() {
                    v.push((r, k, re(x.clone())));
                }
            }
        };
        put(&mut wp, tm + 2, &a[k + 1]);
        put(&mut w0, tm, &b[k + 1]);
        put(&mut wm, tm - 2, &c[k + 1]);
    }
    let mut out: [Vec<(usize, usize, Cq)>; 3] = Default::default();
    let half = cq(1, 2);
    let mihalf = -i_unit() * cq(1, 2);
    for (r, k, x) in &wp {
        out[0].push((*r, *k, x * &half));
        out[1].push((*r, *k, x * &mihalf));
    }
    for (r, k, x) in &wm {
        out[0].push((*r, *k, x * &half));
        out[1].push((*r, *k, -(x * &mihalf)));
    }
    out[2] = w0;
    out
}

/// Places per-block entries of an interband operator into a full matrix.
fn place(m: &mut SMat, entries: &[(usize, usize, Cq)], row0: usize, col0: usize, k: &Cq) {
    for (r, c, x) in entries {
        m.add_at(row0 + r, col0 + c, &(x * k));
    }
}

/// `S_μν = ε_{μνρ0} S^ρ`
fn s_tensor(s_upper: &Vec4, mu: usize, nu: usize) -> SMat {
    let n = s_upper[0].dim();
    let mut out = SMat::zero(n);
    for rho in 0..4 {
        let e = eps_lower(mu, nu, rho, 0);
        if e != 0 {
            out = &out + &s_upper[rho].scale(&cq(e, 1));
        }
    }
    out
}

/// `S_μ^ν`
fn s_mixed(s_upper: &Vec4, mu: usize, nu: usize) -> SMat {
    s_tensor(s_upper, mu, nu).scale(&cq(eta(nu, nu), 1))
}

/// `R_μ = -S_μ^ν Q̂_ν`, symmetrised.
fn build_r(s_upper: &Vec4, qhat: &Vec4) -> Vec4 {
    std::array::from_fn(|mu| {
        let n = qhat[0].dim();
        let mut acc = SMat::zero(n);
        for nu in 0..4 {
            acc = &acc - &s_mixed(s_upper, mu, nu).sym(&qhat[nu]);
        }
        acc
    })
}

struct Links {
    /// Per link, spatial components of the upward and downward unit operators.
    up: Vec<[Vec<(usize, usize, Cq)>; 3]>,
    down: Vec<[Vec<(usize, usize, Cq)>; 3]>,
}

fn assemble(model_offsets: &[usize], links: &Links, up_k: &[Cq], down_k: &[Cq]) -> Vec4 {
    let n = *model_offsets.last().unwrap();
    let mut out = zero4(n);
    for l in 0..links.up.len() {
        let (lo, hi) = (model_offsets[l], model_offsets[l + 1]);
        for i in 0..3 {
            place(&mut out[i + 1], &links.up[l][i], hi, lo, &up_k[l]);
            place(&mut out[i + 1], &links.down[l][i], lo, hi, &down_k[l]);
        }
    }
    out
}

impl LadderModel {
    pub fn build(twice_s_min: u32, twice_s_max: u32, cas: &Casimirs) -> Result<LadderModel, LadderError> {
        if twice_s_min > 1 {
            return Err(LadderError::BadBottom);
        }
        if twice_s_max < twice_s_min + 6 || !(twice_s_max - twice_s_min).is_multiple_of(2) {
            return Err(LadderError::TooShort);
        }
        let spins: Vec<u32> = (twice_s_min..=twice_s_max).step_by(2).collect();
        let nb = spins.len();
        let mut offsets = vec![0usize];
        for ts in &spins {
            offsets.push(offsets.last().unwrap() + *ts as usize + 1);
        }
        let n = offsets[nb];
        let scalars = spins.iter().map(|ts| block_scalars(*ts, cas)).collect::<Result<Vec<_>, _>>()?;

        let mut s_upper = zero4(n);
        let mut s_star = SMat::zero(n);
        for (b, ts) in spins.iter().enumerate() {
            let j = spin_block(*ts);
            let o = offsets[b];
            for (i, ji) in j.iter().enumerate() {
                for (r, c, x) in ji.entries() {
                    s_upper[i + 1].set(o + r, o + c, -x);
                }
            }
            for k in 0..=*ts as usize {
                s_star.set(o + k, o + k, cq(*ts as i64 + 1, 2));
            }
        }
        let s_lower: Vec4 = std::array::from_fn(|mu| s_upper[mu].scale(&cq(eta(mu, mu), 1)));

        let links = Links {
            up: (0..nb - 1).map(|l| interband(spins[l], spins[l + 1])).collect(),
            down: (0..nb - 1).map(|l| interband(spins[l + 1], spins[l])).collect(),
        };
        let ones = vec![cq(1, 1); nb - 1];
        // Unit loops through each link, read off on the block they start from.
        let unit_up = assemble(&offsets, &links, &ones, &vec![Cq::zero(); nb - 1]);
        let unit_dn = assemble(&offsets, &links, &vec![Cq::zero(); nb - 1], &ones);
        let loop_q2 = |b: usize, upward: bool| -> Q {
            // Q̂_μ Q̂^μ = -Σ_i Q̂_i Q̂_i; up then down for the upward loop.
            let (first, second) = if upward { (&unit_up, &unit_dn) } else { (&unit_dn, &unit_up) };
            let o = offsets[b];
            let mut acc = Cq::zero();
            for i in 1..4 {
                acc -= (&second[i] * &first[i]).get(o, o);
            }
            acc.re
        };
        let stensor12 = s_tensor(&s_upper, 1, 2);
        let loop_br = |b: usize, upward: bool| -> Q {
            if spins[b] == 0 {
                return Q::zero();
            }
            let (first, second) = if upward { (&unit_up, &unit_dn) } else { (&unit_dn, &unit_up) };
            let o = offsets[b];
            let m = &(&second[1] * &first[2]) - &(&second[2] * &first[1]);
            let v = m.get(o, o) / (i_unit() * stensor12.get(o, o));
            v.re
        };
        let target_q2 = |b: usize| -> Q { &scalars[b].gamma + &scalars[b].beta * &scalars[b].s2 };

        let mut y = vec![Q::zero(); nb - 1];
        // First interior block: both couplings at once.
        {
            let (a1, b1) = (loop_q2(1, true), loop_q2(1, false));
            let (a2, b2) = (loop_br(1, true), loop_br(1, false));
            let det = &a1 * &b2 - &a2 * &b1;
            if det.is_zero() {
                return Err(LadderError::InadmissibleCasimirs("first interior block is degenerate".into()));
            }
            let (t1, t2) = (target_q2(1), scalars[1].beta.clone());
            y[1] = (&t1 * &b2 - &t2 * &b1) / &det;
            y[0] = (&a1 * &t2 - &a2 * &t1) / &det;
        }
        for b in 2..nb - 1 {
            y[b] = (target_q2(b) - loop_q2(b, false) * &y[b - 1]) / loop_q2(b, true);
        }
        for (l, yl) in y.iter().enumerate() {
            if (yl * loop_q2(l, true)).is_positive() {
                return Err(LadderError::InadmissibleCasimirs(format!(
                    "squared coupling between s = {} and s = {} is negative",
                    half(spins[l]),
                    half(spins[l + 1])
                )));
            }
        }

        let yc: Vec<Cq> = y.iter().cloned().map(re).collect();
        let qhat = assemble(&offsets, &links, &yc, &ones);
        let r = build_r(&s_upper, &qhat);
        let frame2: Vec<Cq> = (0..nb - 1)
            .map(|l| re(&y[l] * q(spins[l] as i64 + 1, 2) * q(spins[l + 1] as i64 + 1, 2)))
            .collect();
        let zeros = vec![Cq::zero(); nb - 1];
        let a_plus = assemble(&offsets, &links, &zeros, &ones);
        let a_minus = assemble(&offsets, &links, &frame2, &zeros);
        let qhat2: Vec4 = std::array::from_fn(|mu| &a_plus[mu] + &a_minus[mu]);
        let r2 = build_r(&s_upper, &qhat2);

        Ok(LadderModel {
            twice_s_min,
            twice_s_max,
            offsets,
            scalars,
            couplings: y,
            s_star,
            s_upper,
            s_lower,
            qhat,
            r,
            qhat2,
            r2,
            a_plus,
            a_minus,
        })
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn blocks(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Rows and columns of every block except the lowest and the highest.
    pub fn interior(&self) -> Range<usize> {
        self.offsets[1]..self.offsets[self.blocks() - 1]
    }

    /// Diagonal matrix of a block scalar.
    pub fn scalar(&self, f: impl Fn(&BlockScalars) -> Q) -> SMat {
        let mut d = Vec::with_capacity(self.dim());
        for (b, sc) in self.scalars.iter().enumerate() {
            let v = re(f(sc));
            for _ in self.offsets[b]..self.offsets[b + 1] {
                d.push(v.clone());
            }
        }
        SMat::diag(d)
    }

    pub fn s_tensor(&self, mu: usize, nu: usize) -> SMat {
        s_tensor(&self.s_upper, mu, nu)
    }
}

/// One named identity: interior and full-matrix residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Measured {
    pub group: &'static str,
    pub name: String,
    pub interior: f64,
    pub full: f64,
}

/// Every identity the ladder realises, evaluated as matrices.
pub fn ladder_residuals(m: &LadderModel) -> Vec<Measured> {
    let n = m.dim();
    let inner = m.interior();
    let mut out = Vec::new();
    let mut push = |group: &'static str, name: String, res: SMat| {
        out.push(Measured { group, name, interior: res.max_norm_on(inner.clone()), full: res.max_norm() });
    };
    let id = SMat::identity(n);
    let beta = m.scalar(|s| s.beta.clone());
    let gamma = m.scalar(|s| s.gamma.clone());
    let s2 = m.scalar(|s| s.s2.clone());
    let alpha = m.scalar(|s| s.alpha.clone());
    let ss = &m.s_star;
    let br = |a: &SMat, b: &SMat| a.commutator(b).scale(&(-i_unit()));
    let g = |mu: usize, nu: usize| -> SMat {
        let v = eta(mu, nu) - i64::from(mu == 0 && nu == 0);
        id.scale(&cq(v, 1))
    };
    let k = |mu: usize, nu: usize| m.s_lower[mu].sym(&m.s_lower[nu]);
    let contract = |a: &Vec4, b: &Vec4| -> SMat {
        let mut acc = SMat::zero(n);
        for mu in 0..4 {
            acc = &acc + &(&a[mu] * &b[mu]).scale(&cq(eta(mu, mu), 1));
        }
        acc
    };

    for (plus, a) in [(true, &m.a_plus), (false, &m.a_minus)] {
        let shift = if plus { 1 } else { -1 };
        let shifted = ss + &id.scale(&cq(shift, 1));
        for (mu, am) in a.iter().enumerate().skip(1) {
            let res = &(am * ss) - &(&shifted * am);
            push("step", format!("A{}_{mu} s* - (s* {} 1) A{}_{mu}", sign(plus), sign(plus), sign(plus)), res);
        }
    }

    let q2 = contract(&m.qhat, &m.qhat);
    push("QhR", "Qhat^2 - (gamma + beta S^2)".into(), &q2 - &(&gamma + &(&beta * &s2)));
    for mu in 0..4 {
        let sq: SMat = (0..4).fold(SMat::zero(n), |acc, nu| &acc + &(&m.s_upper[nu] * &m.qhat[nu]).scale(&cq(eta(nu, nu), 1)));
        if mu == 0 {
            push("QhR", "S.Qhat".into(), sq);
        }
        for nu in 0..4 {
            let st = m.s_tensor(mu, nu);
            push("QhR", format!("(Qhat_{mu},Qhat_{nu}) - beta S_{mu}{nu}"), &br(&m.qhat[mu], &m.qhat[nu]) - &(&beta * &st));
            push("QhR", format!("(R_{mu},R_{nu}) - gamma S_{mu}{nu}"), &br(&m.r[mu], &m.r[nu]) - &(&gamma * &st));
            let rhs = &(&(&gamma * &g(mu, nu)) - &m.qhat[mu].sym(&m.qhat[nu])) + &(&beta * &k(mu, nu));
            push("QhR", format!("(R_{mu},Qhat_{nu}) - rhs"), &br(&m.r[mu], &m.qhat[nu]) - &rhs);
        }
    }

    // Q_μν = α S_μν + ε_{μνρ0} Q̂^ρ
    for mu in 0..4 {
        let mut acc = SMat::zero(n);
        for nu in 0..4 {
            let mut qmn = &alpha * &m.s_tensor(mu, nu);
            for rho in 0..4 {
                let e = eps_lower(mu, nu, rho, 0) * eta(rho, rho);
                if e != 0 {
                    qmn = &qmn + &m.qhat[rho].scale(&cq(e, 1));
                }
            }
            acc = &acc + &qmn.sym(&m.s_upper[nu]);
        }
        push("defR", format!("R_{mu} - Q_{mu}nu S^nu"), &m.r[mu] - &acc);
    }

    let half = cq(1, 2);
    let ihalf = i_unit() * cq(1, 2);
    let (ap, am) = (&m.a_plus, &m.a_minus);
    for mu in 0..4 {
        for nu in 0..4 {
            push("ApAm", format!("(A+_{mu},A+_{nu})"), br(&ap[mu], &ap[nu]));
            push("ApAm", format!("(A-_{mu},A-_{nu})"), br(&am[mu], &am[nu]));
            let gs = (&(&gamma * ss) * &g(mu, nu)).scale(&(-ihalf.clone()));
            let sts = &(&gamma - &beta.scale(&cq(1, 4))) * &m.s_tensor(mu, nu);
            let ks = (&(&beta * ss) * &k(mu, nu)).scale(&(-ihalf.clone()));
            let rhs = &(&gs + &sts.scale(&half)) + &ks;
            push("ApAm", format!("(A+_{mu},A-_{nu}) - rhs"), &br(&ap[mu], &am[nu]) - &rhs);
        }
    }

    push("AA", "A+_mu A+^mu".into(), contract(ap, ap));
    push("AA", "A-_mu A-^mu".into(), contract(am, am));
    for plus in [true, false] {
        let sg = if plus { 1 } else { -1 };
        let (x, yv) = if plus { (ap, am) } else { (am, ap) };
        let one_pm = &id + &ss.scale(&cq(sg, 1));
        let half_mp = &id.scale(&half) - &ss.scale(&cq(sg, 1));
        let half_pm = &id.scale(&half) + &ss.scale(&cq(sg, 1));
        let factor = &one_pm * &(&gamma - &(&beta * &(&half_mp * &half_mp)));
        let pair = if plus { "A+ A-" } else { "A- A+" };
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = &(&x[mu] * &yv[nu]) - &(&x[nu] * &yv[mu]);
                let rhs = (&factor * &m.s_tensor(mu, nu)).scale(&ihalf);
                push("AA", format!("{pair} antisymmetric {mu}{nu} - rhs"), &anti - &rhs);
            }
        }
        let rhs = (&half_pm * &factor).scale(&half);
        push("AA", format!("{pair} trace - rhs"), &contract(x, yv) - &rhs);
    }

    for mu in 1..4 {
        let diff = &ap[mu] - &am[mu];
        let rhs = (&(ss * &diff) + &(&diff * ss)).scale(&ihalf);
        push("QRApm", format!("R_{mu} - (i/2){{s*, A+_{mu} - A-_{mu}}}"), &m.r2[mu] - &rhs);
    }
    out
}

/// `n/2` printed as an integer or a half-integer.
pub fn half(twice: u32) -> String {
    if twice.is_multiple_of(2) {
        (twice / 2).to_string()
    } else {
        format!("{twice}/2")
    }
}

fn sign(plus: bool) -> &'static str {
    if plus {
        "+"
    } else {
        "-"
    }
}

pub const LADDER_ID: &str = "oracle/ladder";
pub const LADDER_ANCHOR: &str = "§6 ladder; (QhR), (ApAm), (AA), (step), (defR): \"an infinite ladder corresponding either to integer or to half-integer values\"";

/// Max interior residual per identity group, in a fixed order.
pub fn group_maxima(ms: &[Measured]) -> BTreeMap<&'static str, (f64, f64)> {
    let mut out: BTreeMap<&'static str, (f64, f64)> = BTreeMap::new();
    for x in ms {
        let e = out.entry(x.group).or_insert((0.0, 0.0));
        e.0 = e.0.max(x.interior);
        e.1 = e.1.max(x.full);
    }
    out
}

/// Oracle parameters; spins are stored doubled.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderParams {
    pub twice_s_min: u32,
    pub twice_s_max: u32,
    pub tol: f64,
    pub casimirs: Casimirs,
}

impl Default for LadderParams {
    fn default() -> Self {
        LadderParams { twice_s_min: 0, twice_s_max: 12, tol: 1e-10, casimirs: Casimirs::default() }
    }
}

/// Builds and checks; a model that cannot be built is an error report.
pub fn run_ladder(p: &LadderParams) -> Report {
    match LadderModel::build(p.twice_s_min, p.twice_s_max, &p.casimirs) {
        Ok(m) => ladder_check(&m, p.tol),
        Err(e) => Report {
            id: LADDER_ID.into(),
            paper_ref: LADDER_ANCHOR.into(),
            status: Status::Error,
            residual: Residual::Exact(e.to_string()),
            ms: Some(0),
            notes: vec![],
        },
    }
}

pub fn ladder_check(m: &LadderModel, tol: f64) -> Report {
    let started = std::time::Instant::now();
    let ms = ladder_residuals(m);
    let groups = group_maxima(&ms);
    let worst = groups.values().fold(0.0f64, |a, (i, _)| a.max(*i));
    let mut notes = vec![format!(
        "s = {}..{}, dimension {}, interior blocks {}..{}",
        half(m.twice_s_min),
        half(m.twice_s_max),
        m.dim(),
        half(m.twice_s_min + 2),
        half(m.twice_s_max - 2)
    )];
    for (g, (i, f)) in &groups {
        notes.push(format!("{g}: interior {i:e}, with boundary blocks {f:e}"));
    }
    let ys: Vec<String> = m.couplings.iter().map(|y| format!("{:.6}", y.to_f64().unwrap_or(f64::NAN))).collect();
    notes.push(format!("upward couplings y_s (downward = 1): {}", ys.join(", ")));
    for x in ms.iter().filter(|x| x.interior > tol) {
        notes.push(format!("failed: {} = {:e}", x.name, x.interior));
    }
    Report {
        id: LADDER_ID.into(),
        paper_ref: LADDER_ANCHOR.into(),
        status: if worst < tol { Status::Pass } else { Status::Fail },
        residual: Residual::Norm(worst),
        ms: Some(started.elapsed().as_millis() as u64),
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_operators_transform_as_vectors() {
        for (ts, tsp) in [(0, 2), (2, 0), (1, 3), (3, 1), (4, 6), (6, 4), (5, 7)] {
            let j = spin_block(ts);
            let jp = spin_block(tsp);
            let (d, dp) = (ts as usize + 1, tsp as usize + 1);
            let n = d + dp;
            let w = interband(ts, tsp);
            let mut t: [SMat; 3] = std::array::from_fn(|_| SMat::zero(n));
            let mut jj: [SMat; 3] = std::array::from_fn(|_| SMat::zero(n));
            for i in 0..3 {
                place(&mut t[i], &w[i], d, 0, &cq(1, 1));
                for (r, c, x) in j[i].entries() {
                    jj[i].set(r, c, x.clone());
                }
                for (r, c, x) in jp[i].entries() {
                    jj[i].set(d + r, d + c, x.clone());
                }
            }
            assert!(!t.iter().all(SMat::is_zero));
            for a in 0..3 {
                for b in 0..3 {
                    let mut rhs = SMat::zero(n);
                    for c in 0..3 {
                        let e = eps_lower(0, a + 1, b + 1, c + 1);
                        if e != 0 {
                            rhs = &rhs + &t[c].scale(&(i_unit() * cq(e, 1)));
                        }
                    }
                    assert_eq!(jj[a].commutator(&t[b]), rhs, "s={ts}/2 -> {tsp}/2, [J_{a},T_{b}]");
                }
            }
        }
    }

    #[test]
    fn spin_blocks_close() {
        for ts in 0..6 {
            let j = spin_block(ts);
            let lhs = j[0].commutator(&j[1]);
            assert_eq!(lhs, j[2].scale(&i_unit()));
        }
    }
}
