//! Identities between derived observables, each checked by reducing a
//! residual to the zero expression for every index instantiation.
//!
//! Identities involving the transverse quadrupole `Q̂` divide by `S²`. They
//! are either multiplied out by `S²` (see [`Kit::qhat_scaled`]) or conjugated
//! by `S²` and expanded into the smaller polynomial relations they reduce to,
//! with the commutation facts that reduction relies on checked in the same
//! entry.

use std::time::Instant;

use super::{contract, dot, eta_e, j, kit, up, Kit, Vec4};
use crate::algebra::metric::{eps_lower, eps_upper, eta, sign};
use crate::algebra::{Expression, Gen, GaussRat};
use crate::report::{Report, Residual, Status};

/// Collects named residuals.
#[derive(Default)]
pub struct Sink {
    items: Vec<(String, Expression)>,
}

impl Sink {
    fn zero(&mut self, label: impl Into<String>, e: Expression) {
        self.items.push((label.into(), e));
    }

    fn eq(&mut self, label: impl Into<String>, a: Expression, b: Expression) {
        self.zero(label, a - b);
    }
}

pub struct Identity {
    pub id: &'static str,
    pub anchor: &'static str,
    run: fn(&Kit, &mut Sink),
}

impl Identity {
    /// Named residuals, all of which must vanish.
    pub fn residuals(&self) -> Vec<(String, Expression)> {
        let mut s = Sink::default();
        (self.run)(kit(), &mut s);
        s.items
    }
}

const MASS_NOTE: &str = "valid only on states with P2 != 0";

fn unit(a: usize) -> [i64; 4] {
    let mut v = [0; 4];
    v[a] = 1;
    v
}

fn add(terms: impl IntoIterator<Item = Expression>) -> Expression {
    Expression::sum(terms)
}

fn m(e: &Expression, k: i32) -> Expression {
    e.times_mass(k)
}

fn hb(e: &Expression, k: i32) -> Expression {
    e.hbar_shift(k)
}

fn ihbar(e: &Expression) -> Expression {
    e.scale(GaussRat::i()).hbar_shift(1)
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|a| (0..4).map(move |b| (a, b)))
}

fn triples() -> impl Iterator<Item = (usize, usize, usize)> {
    pairs().flat_map(|(a, b)| (0..4).map(move |c| (a, b, c)))
}

/// `(J_{μν}, A_ρ) = η_{νρ} A_μ − η_{μρ} A_ν` for all indices.
fn lorentz_vector(k: &Kit, s: &mut Sink, name: &str, a: &Vec4) {
    let _ = k;
    for (mu, nu, r) in triples() {
        if mu < nu {
            let rhs = a[mu].scale_rat(eta(nu, r) as i128, 1) - a[nu].scale_rat(eta(mu, r) as i128, 1);
            s.eq(format!("(J[{mu},{nu}],{name}[{r}])"), j(mu, nu).commutator(&a[r]), rhs);
        }
    }
}

fn pp2(k: &Kit, s: &mut Sink) {
    for mu in 0..4 {
        s.zero(format!("(P[{mu}],P2)"), k.p[mu].commutator(&k.p2));
    }
    for (mu, nu) in pairs().filter(|(a, b)| a < b) {
        s.zero(format!("(J[{mu},{nu}],P2)"), j(mu, nu).commutator(&k.p2));
    }
}

fn pw(k: &Kit, s: &mut Sink) {
    for (mu, r) in pairs() {
        s.zero(format!("(P[{mu}],W[{r}])"), k.p[mu].commutator(&k.w[r]));
    }
    lorentz_vector(k, s, "W", &k.w);
}

fn dw(k: &Kit, s: &mut Sink) {
    for mu in 0..4 {
        s.eq(format!("(D,W[{mu}])"), k.d.commutator(&k.w[mu]), k.w[mu].clone());
        for nu in 0..4 {
            s.zero(format!("(D,S[{mu},{nu}])"), k.d.commutator(&k.st[mu][nu]));
        }
    }
}

fn def_st(k: &Kit, s: &mut Sink) {
    for (mu, nu) in pairs() {
        let ww = k.w[mu].commutator(&k.w[nu]);
        s.eq(format!("(W[{mu}],W[{nu}]) = P2 S"), ww.clone(), m(&k.st[mu][nu], 2));
        let mut eps = Expression::zero();
        for (r, sg) in pairs() {
            let e = eps_lower(mu, nu, r, sg);
            if e != 0 {
                eps.add_scaled(&up(r, &k.w[r]).times(&up(sg, &k.p[sg])), GaussRat::from_int(e as i128));
            }
        }
        s.eq(format!("(W[{mu}],W[{nu}]) = eps W P"), ww, eps);
    }
}

fn trans(k: &Kit, s: &mut Sink) {
    for nu in 0..4 {
        let e = add((0..4).map(|mu| up(mu, &k.p[mu]).times(&k.st[mu][nu])));
        s.zero(format!("P^mu S[mu,{nu}]"), e);
    }
    s.zero("P.W", contract(&k.p, &k.w));
}

fn s2rel(k: &Kit, s: &mut Sink) {
    let half = add(pairs().map(|(mu, nu)| up(mu, &up(nu, &k.st[mu][nu].times(&k.st[nu][mu]))))).scale_rat(1, 2);
    s.eq("S2 = S_mn S^nm / 2", k.s2.clone(), half);
    s.eq("S2 = Svec.Svec", k.s2.clone(), contract(&k.sv, &k.sv));
}

fn s2inv(k: &Kit, s: &mut Sink) {
    for g in Gen::all().filter(|g| !matches!(g.kind(), crate::algebra::GenKind::C(_))) {
        s.zero(format!("({g},S2)"), Expression::gen(g).commutator(&k.s2));
    }
}

fn j_x(k: &Kit, s: &mut Sink) {
    for (mu, nu) in pairs().filter(|(a, b)| a < b) {
        let rhs = k.p[mu].sym(&k.x[nu]) - k.p[nu].sym(&k.x[mu]) + k.st[mu][nu].clone();
        s.eq(format!("J[{mu},{nu}]"), j(mu, nu), rhs);
    }
}

fn d_x(k: &Kit, s: &mut Sink) {
    s.eq("D = P.X", k.d.clone(), dot(&k.p, &k.x));
}

fn def_x(k: &Kit, s: &mut Sink) {
    for mu in 0..4 {
        let rhs = k.p[mu].sym(&k.d) + add((0..4).map(|r| up(r, &k.p[r]).sym(&j(r, mu))));
        s.eq(format!("P2.X[{mu}]"), k.p2.sym(&k.x[mu]), rhs);
    }
}

fn px(k: &Kit, s: &mut Sink) {
    for (mu, nu) in pairs() {
        s.eq(format!("(P[{mu}],X[{nu}])"), k.p[mu].commutator(&k.x[nu]), -eta_e(mu, nu));
    }
    for mu in 0..4 {
        s.eq(format!("(D,X[{mu}])"), k.d.commutator(&k.x[mu]), -k.x[mu].clone());
    }
    lorentz_vector(k, s, "X", &k.x);
}

fn xx(k: &Kit, s: &mut Sink) {
    for (mu, nu) in pairs() {
        s.eq(format!("P2.(X[{mu}],X[{nu}])"), k.p2.sym(&k.x[mu].commutator(&k.x[nu])), k.st[mu][nu].clone());
    }
}

fn cm(k: &Kit, s: &mut Sink) {
    for a in 0..4 {
        let lhs = k.delta(unit(a)).commutator(&k.p2);
        s.eq(format!("(Delta_{a},P2)"), lhs, k.p2.sym(&k.x[a]).scale_rat(2, 1));
    }
}

fn cp(k: &Kit, s: &mut Sink) {
    let px = dot(&k.p, &k.x);
    for (a, nu) in pairs() {
        let lhs = k.delta(unit(a)).commutator(&k.p[nu]);
        let gens = k.d.scale_rat(eta(a, nu) as i128, 1) - j(a, nu);
        s.eq(format!("(Delta_{a},P[{nu}]) generators"), lhs.clone(), gens);
        let geo = px.scale_rat(eta(a, nu) as i128, 1) - k.p[a].sym(&k.x[nu]) + k.x[a].sym(&k.p[nu]) - k.st[a][nu].clone();
        s.eq(format!("(Delta_{a},P[{nu}]) position"), lhs, geo);
    }
}

fn cpx_rhs(k: &Kit, a: usize, mu: usize, nu: usize) -> Expression {
    -k.x[a].scale_rat(eta(mu, nu) as i128, 1) - k.x[nu].scale_rat(eta(a, mu) as i128, 1)
        + k.x[mu].scale_rat(eta(a, nu) as i128, 1)
}

fn cxp(k: &Kit, s: &mut Sink) {
    for a in 0..4 {
        let dl = k.delta(unit(a));
        for (mu, nu) in pairs() {
            let lhs = dl.commutator(&k.x[nu]).commutator(&k.p[mu]);
            let rhs = dl.commutator(&k.p[mu]).commutator(&k.x[nu]);
            s.eq(format!("a={a} mu={mu} nu={nu}"), lhs, rhs);
        }
    }
}

fn cpx(k: &Kit, s: &mut Sink) {
    for a in 0..4 {
        let dl = k.delta(unit(a));
        for (mu, nu) in pairs() {
            let lhs = dl.commutator(&k.p[mu]).commutator(&k.x[nu]);
            s.eq(format!("a={a} mu={mu} nu={nu}"), lhs, cpx_rhs(k, a, mu, nu));
        }
    }
}

fn ext_closure(k: &Kit, s: &mut Sink) {
    for (mu, nu) in pairs() {
        s.zero(format!("(Ext[{mu}],Ext[{nu}])"), k.ext[mu].commutator(&k.ext[nu]));
        let rhs = k.d.scale_rat(-2 * eta(mu, nu) as i128, 1) - j(mu, nu).scale_rat(2, 1);
        s.eq(format!("(P[{mu}],Ext[{nu}])"), k.p[mu].commutator(&k.ext[nu]), rhs);
    }
    for mu in 0..4 {
        s.eq(format!("(D,Ext[{mu}])"), k.d.commutator(&k.ext[mu]), -k.ext[mu].clone());
    }
    lorentz_vector(k, s, "Ext", &k.ext);
}

fn pm(k: &Kit, s: &mut Sink) {
    let mass = Expression::mass(1);
    for mu in 0..4 {
        s.zero(format!("(P[{mu}],M)"), k.p[mu].commutator(&mass));
    }
    for (mu, nu) in pairs().filter(|(a, b)| a < b) {
        s.zero(format!("(J[{mu},{nu}],M)"), j(mu, nu).commutator(&mass));
    }
    s.eq("(D,M)", k.d.commutator(&mass), mass);
}

fn weightless(k: &Kit) -> [(&'static str, &Vec4); 3] {
    [("V", &k.v), ("Svec", &k.sv), ("Q", &k.q)]
}

fn pvector(k: &Kit, s: &mut Sink) {
    for (name, a) in weightless(k) {
        for (mu, r) in pairs() {
            s.zero(format!("(P[{mu}],{name}[{r}])"), k.p[mu].commutator(&a[r]));
        }
        for r in 0..4 {
            s.zero(format!("(D,{name}[{r}])"), k.d.commutator(&a[r]));
        }
        lorentz_vector(k, s, name, a);
    }
}

fn xvector(k: &Kit, s: &mut Sink) {
    for (name, a) in weightless(k) {
        let va = contract(&k.v, a);
        let perp = |mu: usize| &a[mu] - &va.times(&k.v[mu]);
        for (mu, r) in pairs() {
            let rhs = m(&(va.scale_rat(eta(mu, r) as i128, 1) - a[mu].times(&k.v[r])), -1);
            s.eq(format!("(X[{mu}],{name}[{r}])"), k.x[mu].commutator(&a[r]), rhs);
            s.eq(format!("(Svec[{mu}],{name}[{r}])"), k.sv[mu].commutator(&a[r]), k.tensor(a, mu, r));
        }
        for (mu, nu, r) in triples() {
            let proj = |x: usize| eta_e(x, r) - k.v[x].times(&k.v[r]);
            let rhs = proj(nu).times(&perp(mu)) - proj(mu).times(&perp(nu));
            s.eq(format!("(S[{mu},{nu}],{name}[{r}])"), k.st[mu][nu].commutator(&a[r]), rhs);
        }
        for mu in 0..4 {
            let lhs = add((0..4).map(|r| k.st_mixed(mu, r).commutator(&a[r])));
            s.eq(format!("(S[{mu},rho],{name}_rho)"), lhs, perp(mu).scale_rat(2, 1));
            let mut rhs = va.times(&up(mu, &k.v[mu]));
            for (n, (r, sg)) in triples().map(|(n, r, sg)| (n, (r, sg))) {
                let e = eps_upper(mu, n, r, sg);
                if e != 0 {
                    let t = k.tensor(a, n, r).times(&k.v[sg]);
                    rhs.add_scaled(&t, GaussRat::frac(-e as i128, 2));
                }
            }
            s.eq(format!("{name}^{mu} from its tensor"), up(mu, &a[mu]), rhs);
        }
    }
}

fn cx(k: &Kit, s: &mut Sink) {
    for (a, nu) in pairs() {
        let lhs = k.delta(unit(a)).commutator(&k.x[nu]);
        let e = eta(a, nu) as i128;
        let quad = m(&hb(&(k.u.scale_rat(e, 1) - k.v[a].times(&k.q[nu]) - k.v[nu].times(&k.q[a])), 1), -2);
        let rhs = k.x2.scale_rat(e, 2) - k.x[a].sym(&k.x[nu]) + m(&k.sv[a].sym(&k.sv[nu]), -2)
            - m(&k.s2, -2).scale_rat(e, 2)
            - quad;
        s.eq(format!("(Delta_{a},X[{nu}])"), lhs, rhs);
    }
}

fn cs(k: &Kit, s: &mut Sink) {
    let xs = dot(&k.x, &k.sv);
    for (a, nu) in pairs() {
        let lhs = k.delta(unit(a)).commutator(&k.sv[nu]);
        let rhs = xs.scale_rat(eta(a, nu) as i128, 1) - k.sv[a].sym(&k.x[nu]) + m(&hb(&k.tensor(&k.q, a, nu), 1), -1);
        s.eq(format!("(Delta_{a},Svec[{nu}])"), lhs, rhs);
    }
}

/// `{ V·Q S_{μν}/ħ + R_μ·V_ν − R_ν·V_μ }`
fn qq_brace(k: &Kit, mu: usize, nu: usize) -> Expression {
    hb(&k.u.times(&k.st[mu][nu]), -1) + k.r[mu].sym(&k.v[nu]) - k.r[nu].sym(&k.v[mu])
}

fn def_r(k: &Kit, s: &mut Sink) {
    for mu in 0..4 {
        let lhs = k.c[mu].commutator(&k.s2);
        s.eq(format!("(C[{mu}],S2)"), lhs, m(&hb(&k.r[mu], 2), -1).scale_rat(4, 1));
        let mut alt = Expression::zero();
        for (nu, (r, sg)) in triples().map(|(n, r, sg)| (n, (r, sg))) {
            let e = eps_lower(mu, nu, r, sg) * sign(nu) * sign(r) * sign(sg);
            if e != 0 {
                alt.add_scaled(&k.q[r].sym(&k.sv[nu]).times(&k.v[sg]), GaussRat::from_int(e as i128));
            }
        }
        s.eq(format!("R[{mu}] two forms"), k.r[mu].clone(), hb(&alt, -1));
    }
}

fn trans_r(k: &Kit, s: &mut Sink) {
    s.zero("V_mu R^mu", contract(&k.v, &k.r));
    s.zero("R^mu V_mu", contract(&k.r, &k.v));
    s.zero("S_mu R^mu", contract(&k.sv, &k.r));
    s.zero("R^mu S_mu", contract(&k.r, &k.sv));
}

fn qq(k: &Kit, s: &mut Sink) {
    for (mu, nu) in pairs() {
        let lhs = k.q[mu].commutator(&k.q[nu]);
        s.eq(format!("(Q[{mu}],Q[{nu}])"), lhs, qq_brace(k, mu, nu).scale_rat(2, 1));
    }
}

fn cq(k: &Kit, s: &mut Sink) {
    let xq = dot(&k.x, &k.q);
    for (a, nu) in pairs() {
        let lhs = k.delta(unit(a)).commutator(&k.q[nu]);
        let rhs = xq.scale_rat(eta(a, nu) as i128, 1) - k.q[a].sym(&k.x[nu]) + m(&hb(&qq_brace(k, a, nu), 1), -1);
        s.eq(format!("(Delta_{a},Q[{nu}])"), lhs, rhs);
    }
}

fn cs2(k: &Kit, s: &mut Sink) {
    let q2 = contract(&k.q, &k.q).scale_rat(1, 2);
    for mu in 0..4 {
        let base = k.c[mu].commutator(&k.s2);
        s.eq(format!("(C[{mu}],hbar V.Q)"), k.c[mu].commutator(&hb(&k.u, 1)), base.clone());
        s.eq(format!("(C[{mu}],Q2/2)"), k.c[mu].commutator(&q2), base);
        s.zero(format!("(C[{mu}],S.Q)"), k.c[mu].commutator(&k.c2));
    }
}

fn cas(k: &Kit, s: &mut Sink) {
    for (i, c) in [&k.c1, &k.c2, &k.c3].into_iter().enumerate() {
        for g in Gen::all() {
            s.zero(format!("({g},c{})", i + 1), Expression::gen(g).commutator(c));
        }
    }
}

/// `ħ²γ = Q^ρQ_ρ - (V·Q)² - 2(V·Q)S²/ħ`, the polynomial part of `Q̂² - βS²`.
fn gamma_scaled(k: &Kit) -> Expression {
    contract(&k.q, &k.q) - k.u.times(&k.u) - hb(&k.u.times(&k.s2), -1).scale_rat(2, 1)
}

/// Facts used to clear `S²` out of the `Q̂` identities: `S²`, `V·Q`, `V` and
/// `S` commute with each other, `Q` commutes with `V`, `c2` is central, and
/// the contractions that appear when `Q̂² ` is expanded.
fn qhat_premises(k: &Kit, s: &mut Sink, g: &Expression) {
    let t = &k.s2;
    for (mu, nu) in pairs() {
        s.zero(format!("(Q[{mu}],V[{nu}])"), k.q[mu].commutator(&k.v[nu]));
        s.zero(format!("(Svec[{mu}],V[{nu}])"), k.sv[mu].commutator(&k.v[nu]));
        s.zero(format!("(S2,S[{mu},{nu}])"), t.commutator(&k.st[mu][nu]));
    }
    for mu in 0..4 {
        s.zero(format!("(S2,V[{mu}])"), t.commutator(&k.v[mu]));
        s.zero(format!("(S2,Svec[{mu}])"), t.commutator(&k.sv[mu]));
        s.zero(format!("(V.Q,V[{mu}])"), k.u.commutator(&k.v[mu]));
        s.zero(format!("(V.Q,Svec[{mu}])"), k.u.commutator(&k.sv[mu]));
        s.zero(format!("(c2,Q[{mu}])"), k.c2.commutator(&k.q[mu]));
        s.zero(format!("(c2,R[{mu}])"), k.c2.commutator(&k.r[mu]));
    }
    s.zero("(V.Q,S2)", k.u.commutator(t));
    s.zero("(gamma,S2)", g.commutator(t));
    s.eq("Q^r Svec_r", contract(&k.q, &k.sv), k.c2.clone());
    s.eq("Svec^r Q_r", contract(&k.sv, &k.q), k.c2.clone());
    s.eq("Q^r V_r", contract(&k.q, &k.v), k.u.clone());
    s.eq("V^r V_r", contract(&k.v, &k.v), Expression::one());
    s.zero("V^r Svec_r", contract(&k.v, &k.sv));
    s.zero("Svec^r V_r", contract(&k.sv, &k.v));
    s.eq("Svec^r Svec_r", contract(&k.sv, &k.sv), t.clone());
}

/// With `Q̂ = Q - uV - (c2/T)S`, `T = S²`, `u = V·Q`, each relation is
/// conjugated by `T` and split into its `c2`-free part and the rest.
fn qhr(k: &Kit, s: &mut Sink) {
    let t = &k.s2;
    let kk = &k.c2;
    let g = gamma_scaled(k);
    qhat_premises(k, s, &g);
    let uv = |m: usize| k.u.times(&k.v[m]);
    for (mu, nu) in pairs() {
        // (Q̂_μ,Q̂_ν) = βS_μν
        let free = k.q[mu].commutator(&k.q[nu]) - k.q[mu].commutator(&k.u).times(&k.v[nu])
            + k.q[nu].commutator(&k.u).times(&k.v[mu])
            - hb(&k.u.times(&k.st[mu][nu]), -1).scale_rat(2, 1);
        s.zero(format!("(Qh[{mu}],Qh[{nu}]) c2-free"), free);
        let lin = k.q[mu].commutator(t).times(&k.sv[nu]) - k.q[nu].commutator(t).times(&k.sv[mu])
            - (k.q[mu].commutator(&k.sv[nu]) - k.q[nu].commutator(&k.sv[mu])).times(t);
        let quad = k.sv[mu].commutator(&k.sv[nu]) + k.st[mu][nu].clone();
        s.zero(format!("(Qh[{mu}],Qh[{nu}]) c2 part"), lin + kk.times(&quad));

        // (R_μ,R_ν) = γS_μν
        s.eq(format!("(R[{mu}],R[{nu}])"), hb(&k.r[mu].commutator(&k.r[nu]), 2), g.times(&k.st[mu][nu]));

        // (R_μ,Q̂_ν) = ħγ(η - VV) - Q̂·Q̂/ħ + βS·S/ħ
        let proj = eta_e(mu, nu) - k.v[mu].times(&k.v[nu]);
        let lhs = hb(
            &(k.r[mu].commutator(&k.q[nu])
                - k.r[mu].commutator(&k.u).times(&k.v[nu])
                - k.u.times(&k.r[mu].commutator(&k.v[nu]))),
            1,
        );
        let rhs = g.times(&proj) - k.q[mu].sym(&k.q[nu]) + k.q[mu].sym(&uv(nu)) + uv(mu).sym(&k.q[nu])
            - k.u.times(&k.u).times(&k.v[mu]).times(&k.v[nu])
            + hb(&k.u.times(&k.sv[mu].sym(&k.sv[nu])), -1).scale_rat(2, 1);
        s.eq(format!("(R[{mu}],Qh[{nu}]) c2-free"), lhs, rhs);
        let lhs = hb(&(k.r[mu].commutator(t).times(&k.sv[nu]) - k.r[mu].commutator(&k.sv[nu]).times(t)), 1);
        let rhs = add([
            t.times(&k.q[mu]).times(&k.sv[nu]),
            k.sv[nu].times(&k.q[mu]).times(t),
            k.sv[mu].times(&k.q[nu]).times(t),
            t.times(&k.q[nu]).times(&k.sv[mu]),
        ])
        .scale_rat(1, 2)
            - k.u.times(t).times(&(k.v[mu].times(&k.sv[nu]) + k.v[nu].times(&k.sv[mu])))
            - kk.times(&k.sv[mu].sym(&k.sv[nu])).scale_rat(2, 1);
        s.eq(format!("(R[{mu}],Qh[{nu}]) c2 part"), lhs, rhs);
    }
}

fn spin_quadratic(k: &Kit, s: &mut Sink) {
    let (_, rr) = k.qhat_scaled();
    let op = |mu: usize, r: usize| {
        add((0..4).map(|n| k.st_mixed(mu, n).times(&k.st_mixed(n, r)))) - ihbar(&k.st_mixed(mu, r))
            - k.s2.scale_rat((mu == r) as i128, 1)
    };
    for (mu, r) in pairs() {
        let lhs = -k.s2.times(&k.v[mu]).times(&up(r, &k.v[r])) - k.sv[mu].times(&up(r, &k.sv[r]));
        s.eq(format!("operator [{mu},{r}]"), lhs, op(mu, r));
    }
    // the operator is -S² V_μ V^ρ - S_μ S^ρ, so applying it contracts V and S with the operand
    for (name, y) in [("R", &k.r), ("Qh S2", rr)] {
        let (vy, sy) = (contract(&k.v, y), contract(&k.sv, y));
        for mu in 0..4 {
            let applied = -k.s2.times(&k.v[mu]).times(&vy) - k.sv[mu].times(&sy);
            s.zero(format!("applied to {name}, mu={mu}"), applied);
        }
    }
}

fn rotatpol(k: &Kit, s: &mut Sink) {
    let (_, rr) = k.qhat_scaled();
    for (name, y) in [("R", &k.r), ("Qh S2", rr)] {
        for mu in 0..4 {
            let sym = add((0..4).map(|r| k.st_mixed(mu, r).sym(&y[r])));
            let left = add((0..4).map(|r| k.st_mixed(mu, r).times(&y[r]))) - ihbar(&y[mu]);
            let right = add((0..4).map(|r| y[r].times(&k.st_mixed(mu, r)))) + ihbar(&y[mu]);
            s.eq(format!("{name}: left form, mu={mu}"), sym.clone(), left);
            s.eq(format!("{name}: right form, mu={mu}"), sym, right);
        }
    }
}

fn rotated_def(k: &Kit, s: &mut Sink) {
    let (l, rr) = k.qhat_scaled();
    for mu in 0..4 {
        let srot = add((0..4).map(|n| k.st_mixed(mu, n).sym(&rr[n])));
        s.eq(format!("R[{mu}] S2"), k.r[mu].times(&k.s2), -hb(&srot, -1));
        let lhs = hb(&(&l[mu] + &rr[mu]), -1).scale_rat(1, 2);
        let rhs = -add((0..4).map(|n| k.st_mixed(mu, n).sym(&k.r[n])));
        s.eq(format!("S2.Qh[{mu}]/hbar"), lhs, rhs);
    }
}

/// `R_μQ̂_ν - R_νQ̂_μ = -Q̂² S_μν/ħ` times `S²` on the right, and `R·Q̂ = 0`.
fn prod_qr(k: &Kit, s: &mut Sink) {
    let t = &k.s2;
    let kk = &k.c2;
    let g = gamma_scaled(k);
    qhat_premises(k, s, &g);
    let uv = |m: usize| k.u.times(&k.v[m]);
    let q2_free = &g + &hb(&k.u.times(t), -1).scale_rat(2, 1);
    for (mu, nu) in pairs() {
        let free = k.r[mu].times(&k.q[nu]) - k.r[nu].times(&k.q[mu]) - k.r[mu].times(&uv(nu))
            + k.r[nu].times(&uv(mu))
            + hb(&q2_free.times(&k.st[mu][nu]), -1);
        let lin = k.r[mu].times(&k.sv[nu]) - k.r[nu].times(&k.sv[mu]) + hb(&kk.times(&k.st[mu][nu]), -1);
        s.eq(format!("R[{mu}]Qh[{nu}] - R[{nu}]Qh[{mu}]"), free.times(t), kk.times(&lin));
    }
    s.zero("R^r Q_r + Q^r R_r", contract(&k.r, &k.q) + contract(&k.q, &k.r));
    s.zero("R^r V_r", contract(&k.r, &k.v));
    s.zero("V^r R_r", contract(&k.v, &k.r));
    s.zero("R^r Svec_r", contract(&k.r, &k.sv));
    s.zero("Svec^r R_r", contract(&k.sv, &k.r));
}

fn trans_qh(k: &Kit, s: &mut Sink) {
    let (_, rr) = k.qhat_scaled();
    s.zero("V_mu Qh^mu", contract(&k.v, rr));
    s.zero("Qh^mu V_mu", contract(rr, &k.v));
    s.zero("S_mu Qh^mu", contract(&k.sv, rr));
    s.zero("Qh^mu S_mu", contract(rr, &k.sv));
}

macro_rules! identity {
    ($id:expr, $anchor:expr, $f:ident) => {
        Identity { id: $id, anchor: $anchor, run: $f }
    };
}

/// The catalog, in listing order.
pub static CATALOG: &[Identity] = &[
    identity!("PP2", "P2 commutes with momenta and rotations", pp2),
    identity!("PW", "Pauli-Lubanski vector: translation invariant Lorentz vector", pw),
    identity!("DW", "conformal weights of W and of the spin tensor", dw),
    identity!("defSt", "spin tensor from the W commutators", def_st),
    identity!("trans", "spin transverse to momentum", trans),
    identity!("S2rel", "squared spin from W, from the spin tensor, from Svec", s2rel),
    identity!("S2inv", "S2 invariant under Poincare and dilatation", s2inv),
    identity!("J_X", "angular momentum as orbital plus spin", j_x),
    identity!("D_X", "dilatation as P.X", d_x),
    identity!("defX", "defining relation of the position", def_x),
    identity!("PX", "position shifts under translation, dilatation, rotation", px),
    identity!("XX", "position commutators and the spin tensor", xx),
    identity!("CM", "mass redshift", cm),
    identity!("CP", "momentum redshift", cp),
    identity!("CXP", "translation of the position shift, by Jacobi", cxp),
    identity!("CPX", "translation of the position shift, explicit", cpx),
    identity!("ExtConf", "external part of C closes the conformal algebra", ext_closure),
    identity!("PM", "mass operator under Poincare and dilatation", pm),
    identity!("PVector", "weightless vectors V, Svec, Q", pvector),
    identity!("XVector", "weightless vectors against position and spin", xvector),
    identity!("CX", "position shift under acceleration", cx),
    identity!("CS", "spin shift under acceleration", cs),
    identity!("defR", "change of S2 under acceleration and the vector R", def_r),
    identity!("transR", "R transverse to velocity and spin", trans_r),
    identity!("QQ", "quadrupole commutators", qq),
    identity!("CQ", "quadrupole shift under acceleration", cq),
    identity!("CS2", "shifts of hbar V.Q, Q2/2, S2 and S.Q", cs2),
    identity!("cas", "conformal Casimirs c1, c2, c3", cas),
    identity!("QhR", "commutators of R and the transverse quadrupole", qhr),
    identity!("transQh", "transverse quadrupole orthogonal to velocity and spin", trans_qh),
    identity!("spinquad", "quadratic spin-tensor operator, and its kernel", spin_quadratic),
    identity!("rotatpol", "spin tensor acting on R and the transverse quadrupole", rotatpol),
    identity!("rotdef", "R and the transverse quadrupole as rotations of each other", rotated_def),
    identity!("prodQR", "scalar and vector products of R and the transverse quadrupole", prod_qr),
];

pub fn find(id: &str) -> Option<&'static Identity> {
    CATALOG.iter().find(|e| e.id == id)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown identity `{0}`")]
pub struct UnknownIdentity(pub String);

pub fn check_identity(id: &str) -> Result<Report, UnknownIdentity> {
    let entry = find(id).ok_or_else(|| UnknownIdentity(id.to_string()))?;
    Ok(run_entry(entry))
}

fn run_entry(entry: &Identity) -> Report {
    let start = Instant::now();
    let items = entry.residuals();
    let ms = start.elapsed().as_millis() as u64;
    let failing: Vec<&(String, Expression)> = items.iter().filter(|(_, e)| !e.is_zero()).collect();
    let mut notes = vec![format!("{} instances", items.len())];
    if MASS_DEPENDENT.contains(&entry.id) {
        notes.push(MASS_NOTE.to_string());
    }
    notes.extend(failing.iter().map(|(l, _)| format!("nonzero: {l}")));
    let (status, residual) = match failing.first() {
        None => (Status::Pass, "0".to_string()),
        Some((l, e)) => (Status::Fail, format!("{l}: {e}")),
    };
    Report {
        id: entry.id.to_string(),
        paper_ref: entry.anchor.to_string(),
        status,
        residual: Residual::Exact(residual),
        ms: Some(ms),
        notes,
    }
}

/// Entries whose statement involves inverse powers of the mass.
const MASS_DEPENDENT: &[&str] = &[
    "defSt", "trans", "S2rel", "S2inv", "J_X", "D_X", "defX", "PX", "XX", "CM", "CP", "CXP", "CPX", "ExtConf",
    "PM", "PVector", "XVector", "CX", "CS", "defR", "transR", "QQ", "CQ", "CS2", "cas", "QhR", "transQh",
    "spinquad", "rotatpol", "rotdef", "prodQR", "DW",
];

pub fn select(sel: &crate::filter::Selection) -> Vec<&'static Identity> {
    CATALOG.iter().filter(|e| sel.matches(e.id)).collect()
}

/// Run the selected entries on worker threads; reports come back in catalog order.
pub fn check_all(sel: &crate::filter::Selection) -> Vec<Report> {
    let entries = select(sel);
    let _ = kit();
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get()).min(entries.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut out: Vec<Option<Report>> = vec![None; entries.len()];
    let slots = std::sync::Mutex::new(&mut out);
    std::thread::scope(|sc| {
        for _ in 0..workers {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= entries.len() {
                    break;
                }
                let r = run_entry(entries[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_iter().map(|r| r.expect("every entry ran")).collect()
}

/// Ids and anchors in catalog order.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    CATALOG.iter().map(|e| (e.id, e.anchor)).collect()
}
