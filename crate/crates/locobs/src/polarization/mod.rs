//! Noncommutative calculus on the polarisation plane orthogonal to velocity
//! and spin, with coefficients that are functions of the spin number
//! `s* = s + ½`, and the step operators built from it.
//!
//! Vectors are expanded over the eigenvectors `E±` of the spin tensor (see
//! [`expr`]); transport is `A± f(s*) = f(s*±1) A±`, exactly as the step
//! relation `A± s* = (s*±1) A±` reads. On an `s*` eigenvector this makes `A⁺`
//! lower the eigenvalue; "raising" and "lowering" are only labels here.

pub mod expr;
pub mod reduce;
pub mod scalar;

use std::time::Instant;

use crate::report::{Report, Residual, Status};
pub use expr::{Atom, Basis, PolExpression, PolVector, Slot, Word};
pub use reduce::{axioms, Reduced, RuleSet};
pub use scalar::{named, ScalarFn, Var};

use PolVector::{Aminus, Aplus, Qhat, Svec, R, V};
use Slot::{Mu, Nu};

/// A word the relations leave behind where none may remain.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("stuck term: {0}")]
pub struct StuckTerm(pub String);

/// Scalar coefficients moved left, contractions evaluated, and transverse
/// products reduced by the standard relations. A contraction of two
/// transverse vectors that survives is a [`StuckTerm`].
pub fn canonicalize(e: &PolExpression) -> Result<PolExpression, StuckTerm> {
    let r = RuleSet::standard().reduce(e).expr;
    if let Some((w, c)) = r.terms().find(|(w, _)| matches!(w, Word::Dot(..))) {
        return Err(StuckTerm(format!("({c}) {w}")));
    }
    Ok(r)
}

fn v(p: PolVector, s: Slot) -> PolExpression {
    PolExpression::vector(p, s)
}

fn sc(f: ScalarFn) -> PolExpression {
    PolExpression::scalar(f)
}

fn c(n: i64, d: i64) -> ScalarFn {
    ScalarFn::frac(n, d)
}

fn ih() -> ScalarFn {
    &ScalarFn::i() * &ScalarFn::hbar()
}

/// `s = s* - ½`
fn spin() -> ScalarFn {
    &ScalarFn::s() - &c(1, 2)
}

/// Either the identities as written or their image under
/// `A⁺ ↔ A⁻, s* → -s*`.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    pub flipped: bool,
}

impl Frame {
    pub const PLAIN: Frame = Frame { flipped: false };
    pub const FLIPPED: Frame = Frame { flipped: true };

    /// Coefficient written as a function of `s*`.
    fn f(&self, x: ScalarFn) -> ScalarFn {
        if self.flipped {
            x.negate_s()
        } else {
            x
        }
    }

    fn a(&self, plus: bool, s: Slot) -> PolExpression {
        v(if plus != self.flipped { Aplus } else { Aminus }, s)
    }
}

/// Labelled residuals that must canonicalize to zero.
pub type Residuals = Vec<(String, PolExpression)>;

/// Eigen-relations of the spin tensor on `R`, `Q̂` and on the step operators.
pub fn eigen_residuals(fr: Frame) -> Residuals {
    let mut out = Residuals::new();
    if !fr.flipped {
        let s = spin();
        let s1 = &s + &ScalarFn::one();
        let i = ScalarFn::i();
        let y1 = &v(R, Mu) + &v(Qhat, Mu).scale(&(&i * &s));
        let l1 = &y1.rotate() + &y1.scale(&(&ih() * &s));
        let y2 = &v(R, Mu) - &v(Qhat, Mu).scale(&(&i * &s1));
        let l2 = &y2.rotate() - &y2.scale(&(&ih() * &s1));
        out.push(("(S + i hbar s)(R + i s Qhat)".into(), l1));
        out.push(("(S - i hbar (s+1))(R - i (s+1) Qhat)".into(), l2));
        let zero = PolExpression::zero();
        out.push(("eigen lines with R = Qhat = 0".into(), &zero.rotate() + &zero.scale(&(&ih() * &s))));
    }
    // S A∓ = iħ(½ ± s*) A∓ and A∓ S = iħ A∓ (-½ ± s*)
    for (plus, sg) in [(false, 1), (true, -1)] {
        let a = fr.a(plus, Mu);
        let left = fr.f(&ih() * &(&c(1, 2) + &(&ScalarFn::s() * &ScalarFn::int(sg))));
        let right = fr.f(&ih() * &(&c(-1, 2) + &(&ScalarFn::s() * &ScalarFn::int(sg))));
        let name = if plus { "A+" } else { "A-" };
        out.push((format!("S {name}"), &a.rotate() - &a.scale(&left)));
        out.push((format!("{name} S"), &a.rotate_right() - &a.scale_right(&right)));
    }
    out
}

/// Rotation structure of the transverse plane: `R` as the rotated `Q̂`, the
/// rotated relation with `S²`, the quadratic spin-tensor operator, the
/// products of `R` and `Q̂`, transversality.
pub fn rotation_residuals() -> Residuals {
    let h = ScalarFn::hbar();
    let t = named::s2();
    let s = spin();
    let sym_s = |y: &PolExpression| &y.rotate() - &y.scale(&ih());
    let mut out = Residuals::new();
    out.push(("R + (S/hbar).Qhat".into(), &v(R, Mu) + &sym_s(&v(Qhat, Mu)).scale(&h.inv())));
    out.push(("(S2/hbar).Qhat + S.R".into(), &sc(t.div(&h)).sym(&v(Qhat, Mu)) + &sym_s(&v(R, Mu))));
    for (name, y) in [("R", v(R, Mu)), ("Qhat", v(Qhat, Mu))] {
        let z = &y.rotate() - &y.scale(&(&ih() * &(&s + &ScalarFn::one())));
        out.push((format!("(S + i hbar s)(S - i hbar (s+1)) {name}"), &z.rotate() + &z.scale(&(&ih() * &s))));
        out.push((format!("Y S - S Y + 2 i hbar Y, Y = {name}"), &(&y.rotate_right() - &y.rotate()) + &y.scale(&(&ScalarFn::int(2) * &ih()))));
    }
    let q2 = &(&h * &h) * &named::gamma() + &named::beta() * &t;
    let rq = |a: Slot, b: Slot| v(R, a).mul(&v(Qhat, b));
    let cross = &(&rq(Mu, Nu) - &rq(Nu, Mu)) + &PolExpression::atom(Atom::Stensor).scale(&q2.div(&h));
    out.push(("R_mu Qhat_nu - R_nu Qhat_mu + (Qhat2/hbar) S_mu_nu".into(), cross));
    let qr = |a: Slot, b: Slot| v(Qhat, a).mul(&v(R, b));
    let cross2 = &(&qr(Nu, Mu) - &qr(Mu, Nu)) + &PolExpression::atom(Atom::Stensor).scale(&q2.div(&h));
    out.push(("Qhat_nu R_mu - Qhat_mu R_nu + (Qhat2/hbar) S_mu_nu".into(), cross2));
    out.push(("R.Qhat".into(), v(R, Mu).sym(&v(Qhat, Nu)).contract()));
    for (a, an) in [(V, "V"), (Svec, "Svec")] {
        for (b, bn) in [(Qhat, "Qhat"), (R, "R")] {
            out.push((format!("{an}.{bn}"), v(a, Mu).mul(&v(b, Nu)).contract()));
        }
    }
    out
}

/// Definition of the step operators against the eigenbasis, and transport.
pub fn step_residuals(fr: Frame) -> Residuals {
    let mut out = Residuals::new();
    let st = fr.f(ScalarFn::s());
    for plus in [true, false] {
        let name = if plus { "A+" } else { "A-" };
        let a = fr.a(plus, Mu);
        let shifted = fr.f(&ScalarFn::s() + &ScalarFn::int(if plus { 1 } else { -1 }));
        out.push((format!("{name} s* - (s* {}1) {name}", if plus { "+" } else { "-" }), &a.scale_right(&st) - &a.scale(&shifted)));
    }
    if fr.flipped {
        return out;
    }
    let r = named::sqrt_s(0);
    let rinv = r.inv();
    let around = |y: &PolExpression, l: &ScalarFn, rt: &ScalarFn| y.scale(l).scale_right(rt);
    let sq = around(&v(Qhat, Mu), &r, &r);
    let sr = around(&v(R, Mu), &r, &r);
    let half_q = v(Qhat, Mu).scale(&c(1, 2));
    let ir = v(R, Mu).scale(&ScalarFn::i());
    let plus_part = around(&(&half_q + &ir), &rinv, &r);
    let minus_part = around(&(&half_q - &ir), &r, &rinv);
    for (plus, sg) in [(false, 1), (true, -1)] {
        let name = if plus { "A+" } else { "A-" };
        let two_a = v(if plus { Aplus } else { Aminus }, Mu).scale(&ScalarFn::int(2));
        let sgn = ScalarFn::int(sg);
        let line1 = &sq + &plus_part.scale(&sgn);
        let line2 = &sq - &minus_part.scale(&sgn);
        out.push((format!("2{name} - first form"), &two_a - &line1));
        out.push((format!("2{name} - second form"), &two_a - &line2));
        out.push((format!("{name}: first form - second form"), &line1 - &line2));
    }
    let ap = v(Aplus, Mu);
    let am = v(Aminus, Mu);
    out.push(("sqrt(s*) Qhat sqrt(s*) - A+ - A-".into(), &(&sq - &ap) - &am));
    let diff = &ap - &am;
    let is_sym = sc(&ScalarFn::i() * &ScalarFn::s()).sym(&diff);
    out.push(("sqrt(s*) R sqrt(s*) - i s*.(A+ - A-)".into(), &sr - &is_sym));
    out
}

/// `(1 ± s*)(γ - β(½ ∓ s*)²)` as written for the upper sign when `plus`.
fn aa_factor(plus: bool) -> ScalarFn {
    let sg = ScalarFn::int(if plus { 1 } else { -1 });
    let s = ScalarFn::s();
    let one_pm = &ScalarFn::one() + &(&sg * &s);
    let half_mp = &c(1, 2) - &(&sg * &s);
    &one_pm * &(&named::gamma() - &(&named::beta() * &half_mp.powi(2)))
}

/// Brackets and quadratic forms of the step operators.
pub fn step_quadratic_residuals(fr: Frame) -> Residuals {
    let h = ScalarFn::hbar();
    let (beta, gamma, s) = (named::beta(), named::gamma(), ScalarFn::s());
    let st = PolExpression::atom(Atom::Stensor);
    let k = PolExpression::atom(Atom::K);
    let g = PolExpression::g_tensor();
    let mut out = Residuals::new();
    for plus in [true, false] {
        let name = if plus { "A+" } else { "A-" };
        out.push((format!("({name}_mu,{name}_nu)"), fr.a(plus, Mu).bracket(&fr.a(plus, Nu))));
        out.push((format!("{name}_mu {name}^mu"), fr.a(plus, Mu).mul(&fr.a(plus, Nu)).contract()));
    }
    let rhs = {
        let gs = fr.f(&(&(&ih() * &c(-1, 2)) * &gamma) * &s);
        let ss = fr.f(&c(1, 2) * &(&gamma - &(&beta * &c(1, 4))));
        let ks = fr.f(&(&(&ScalarFn::i() * &c(-1, 2)) * &beta) * &s.div(&h));
        &(&g.scale(&gs) + &st.scale(&ss)) + &k.scale(&ks)
    };
    out.push(("(A+_mu,A-_nu) - rhs".into(), &fr.a(true, Mu).bracket(&fr.a(false, Nu)) - &rhs));
    for plus in [true, false] {
        let name = if plus { "A+ A-" } else { "A- A+" };
        let (x, y) = (|s| fr.a(plus, s), |s| fr.a(!plus, s));
        let sg = ScalarFn::int(if plus { 1 } else { -1 });
        let anti = &x(Mu).mul(&y(Nu)) - &x(Nu).mul(&y(Mu));
        let rhs1 = st.scale(&fr.f(&(&ih() * &c(1, 2)) * &aa_factor(plus)));
        out.push((format!("{name} antisymmetric - rhs"), &anti - &rhs1));
        let trace = x(Mu).mul(&y(Nu)).contract();
        let half_pm = &c(1, 2) + &(&sg * &s);
        let rhs2 = fr.f(&(&(&h * &h) * &c(1, 2)) * &(&half_pm * &aa_factor(plus)));
        out.push((format!("{name} trace - rhs"), &trace - &sc(rhs2)));
    }
    out
}

/// Middle-line quadratic forms `A±_μ A^{∓μ}` in canonical form.
pub fn rung_scalar(plus: bool) -> ScalarFn {
    let x = v(if plus { Aplus } else { Aminus }, Mu);
    let y = v(if plus { Aminus } else { Aplus }, Nu);
    let e = canonicalize(&x.mul(&y).contract()).expect("quadratic form reduces to a scalar");
    assert!(e.terms().all(|(w, _)| *w == Word::One), "quadratic form left words: {e}");
    e.coeff(&Word::One)
}

/// `S_μν` coefficient of `A±_μ A∓_ν - A±_ν A∓_μ` in canonical form.
pub fn rung_tensor(plus: bool) -> ScalarFn {
    let x = |s| v(if plus { Aplus } else { Aminus }, s);
    let y = |s| v(if plus { Aminus } else { Aplus }, s);
    let e = canonicalize(&(&x(Mu).mul(&y(Nu)) - &x(Nu).mul(&y(Mu)))).expect("antisymmetric part reduces");
    e.coeff(&Word::Atom(Atom::Stensor))
}

/// `f` at a rational `s*`; `c2 = 0` first when `S²` vanishes there, since
/// `β` has a pole at `s* = ±½` otherwise.
pub fn at_rung(f: &ScalarFn, s_star: (i64, i64)) -> Option<ScalarFn> {
    let f = if s_star.1 == 2 { f.subs(Var::C2, &ScalarFn::zero())? } else { f.clone() };
    f.at_s(&c(s_star.0, s_star.1))
}

/// Rungs where the quadratic forms vanish: the upper sign at `s* = -1, -½`,
/// the lower sign at `s* = 1, ½`; the antisymmetric line at `s* = ∓1`.
pub fn rung_residuals() -> Vec<(String, Option<ScalarFn>)> {
    let mut out = Vec::new();
    for (plus, pts) in [(true, [(-1, 1), (-1, 2)]), (false, [(1, 1), (1, 2)])] {
        let f = rung_scalar(plus);
        let sign = if plus { "A+ A-" } else { "A- A+" };
        for p in pts {
            out.push((format!("{sign} trace at s* = {}/{}", p.0, p.1), at_rung(&f, p)));
        }
        let t = rung_tensor(plus);
        let p = if plus { (-1, 1) } else { (1, 1) };
        out.push((format!("{sign} antisymmetric at s* = {}", p.0), at_rung(&t, p)));
    }
    out
}

/// Position and spin shifts under acceleration, `a^μ` carried by the `μ`
/// slot. `sign` multiplies every quadrupole line; `+1` is the printed form
/// of the position shift, `-1` the one the enveloping algebra confirms.
pub fn final_shift_residuals(sign: i64) -> Residuals {
    final_shift_residuals_with(sign, sign)
}

/// As [`final_shift_residuals`] with separate quadrupole signs for the
/// summary form and for the shift it is composed from.
pub fn final_shift_residuals_with(sign: i64, cx_sign: i64) -> Residuals {
    let h = ScalarFn::hbar();
    let m = ScalarFn::var(Var::M);
    let m2 = m.powi(2);
    let sg = ScalarFn::int(sign);
    let sg_cx = ScalarFn::int(cx_sign);
    let (u, alpha, beta) = (named::u(), named::alpha(), named::beta());
    let eta = PolExpression::atom(Atom::Eta);
    let op = |n| PolExpression::atom(Atom::Opaque(n));
    let classical_x = &(&op("a_nu X^2 / 2") - &op("(a.X).X_nu")) + &(&PolExpression::atom(Atom::K) - &eta.scale(&(&named::s2() * &c(1, 2)))).scale(&m2.inv());
    let cx_line = |q: &PolExpression, qs: &PolExpression, u_val: &ScalarFn| {
        let vmu_qnu = v(V, Mu).sym(qs);
        let vnu_qmu = v(V, Nu).sym(q);
        (&(&eta.scale(u_val) - &vmu_qnu) - &vnu_qmu).scale(&(&sg_cx * &h.div(&m2)))
    };
    let cx = &classical_x + &cx_line(&v(PolVector::Q, Mu), &v(PolVector::Q, Nu), &u);
    let final_line = |ab: &ScalarFn, with_qhat: bool| {
        let vv = v(V, Mu).mul(&v(V, Nu));
        let l1 = (&eta.scale(&c(1, 2)) - &vv).scale(&(&(&h * &h) * ab));
        let sv = &v(Svec, Mu).mul(&v(V, Nu)) + &v(V, Mu).mul(&v(Svec, Nu));
        let l2 = sv.scale(&(&h * &alpha));
        let mut line = &l1 - &l2;
        if with_qhat {
            let qv = &v(Qhat, Mu).mul(&v(V, Nu)) + &v(V, Mu).mul(&v(Qhat, Nu));
            line = &line - &qv.scale(&h);
        }
        line.scale(&sg.div(&m2))
    };
    let fin = &classical_x + &final_line(&(&alpha.powi(2) + &beta), true);
    let mut out = Residuals::new();
    out.push(("position shift: final - (CX with Q decomposed)".into(), &fin - &cx));

    let classical_s = &op("a_nu X.S") - &op("a^mu S_mu.X_nu");
    let cs = &classical_s + &v(PolVector::Q, Mu).tensor_of().scale(&h.div(&m));
    let fin_s = &classical_s + &(&PolExpression::atom(Atom::Stensor).scale(&alpha) + &v(Qhat, Mu).tensor_of()).scale(&h.div(&m));
    out.push(("spin shift: final - (CS with Q decomposed)".into(), &fin_s - &cs));

    // Q̂ = 0 and β = 0: V·Q = ħα²/2, i.e. c1 = ħ²α²/2 - S²
    let c1_flat = &(&(&(&h * &h) * &alpha.powi(2)) * &c(1, 2)) - &named::s2();
    let q_flat = |s| &v(V, s).scale(&u) + &v(Svec, s).scale(&alpha);
    let cx_flat = (&classical_x + &cx_line(&q_flat(Mu), &q_flat(Nu), &u))
        .map_coeffs(|f| f.subs(Var::C1, &c1_flat).expect("c1 substitution"));
    let fin_flat = &classical_x + &final_line(&alpha.powi(2), false);
    out.push(("Qhat = 0, beta = 0: simplified position shift - CX".into(), &fin_flat - &cx_flat));
    let cs_flat = &classical_s + &q_flat(Mu).tensor_of().scale(&h.div(&m));
    let fs_flat = &classical_s + &PolExpression::atom(Atom::Stensor).scale(&(&alpha * &h.div(&m)));
    out.push(("Qhat = 0: simplified spin shift - CS".into(), &fs_flat - &cs_flat));
    out.push(("a = 0".into(), (&fin - &cx).scale(&ScalarFn::zero())));
    out
}

/// A checked group of residuals.
pub struct Outcome {
    failures: Vec<(String, String)>,
    instances: usize,
    axioms: Vec<&'static str>,
    notes: Vec<String>,
}

fn reduce_all(items: Residuals) -> Outcome {
    let rules = RuleSet::standard();
    let mut o = Outcome { failures: Vec::new(), instances: items.len(), axioms: Vec::new(), notes: Vec::new() };
    for (label, e) in items {
        let r = rules.reduce(&e);
        for a in r.axioms {
            if !o.axioms.contains(&a) {
                o.axioms.push(a);
            }
        }
        if !r.expr.is_zero() {
            o.failures.push((label, r.expr.to_string()));
        }
    }
    o
}

pub fn check_eigen() -> Report {
    run("pol/eigen", || reduce_all(eigen_residuals(Frame::PLAIN)))
}

pub fn check_rotations() -> Report {
    run("pol/rotation", || reduce_all(rotation_residuals()))
}

pub fn check_step_operators() -> Report {
    run("pol/step", || reduce_all(step_residuals(Frame::PLAIN)))
}

#[allow(non_snake_case)]
pub fn check_ApAm_AA() -> Report {
    run("pol/ApAm_AA", || {
        let mut o = reduce_all(step_quadratic_residuals(Frame::PLAIN));
        for (label, val) in rung_residuals() {
            o.instances += 1;
            match val {
                Some(f) if f.is_zero() => {}
                Some(f) => o.failures.push((label, f.to_string())),
                None => o.failures.push((label, "pole".into())),
            }
        }
        o.notes.push("rungs: c2 = 0 imposed at s* = +-1/2, where S2 = 0".into());
        o
    })
}

pub fn check_sign_symmetry() -> Report {
    run("pol/sign", || {
        let mut items = eigen_residuals(Frame::FLIPPED);
        items.extend(step_residuals(Frame::FLIPPED));
        items.extend(step_quadratic_residuals(Frame::FLIPPED));
        let mut o = reduce_all(items);
        o.notes.push("gamma taken even in s*".into());
        o
    })
}

pub fn check_final_shifts() -> Report {
    run("pol/final", || {
        let mut o = reduce_all(final_shift_residuals(1));
        let corrected = reduce_all(final_shift_residuals(-1));
        o.instances += corrected.instances;
        o.failures.extend(corrected.failures.into_iter().map(|(l, e)| (format!("{l} [quadrupole sign -1]"), e)));
        o.notes.push("both quadrupole signs composed; the algebra fixes -1 for the position shift".into());
        o
    })
}

struct Entry {
    id: &'static str,
    anchor: &'static str,
}

static ENTRIES: &[Entry] = &[
    Entry { id: "pol/eigen", anchor: "eigenvectors of the spin tensor on R and the transverse quadrupole" },
    Entry { id: "pol/rotation", anchor: "rotation structure of the polarisation plane" },
    Entry { id: "pol/step", anchor: "step operators and their transport rule" },
    Entry { id: "pol/ApAm_AA", anchor: "brackets and quadratic forms of the step operators, ladder rungs" },
    Entry { id: "pol/sign", anchor: "symmetry under A+ <-> A-, s* -> -s*" },
    Entry { id: "pol/final", anchor: "position and spin shifts with the quadrupole decomposed" },
];

/// Ids and anchors of the calculus checks, in listing order.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    ENTRIES.iter().map(|e| (e.id, e.anchor)).collect()
}

/// Every selected check.
pub fn check_all(sel: &crate::filter::Selection) -> Vec<Report> {
    let all: [(&str, fn() -> Report); 6] = [
        ("pol/eigen", check_eigen),
        ("pol/rotation", check_rotations),
        ("pol/step", check_step_operators),
        ("pol/ApAm_AA", check_ApAm_AA),
        ("pol/sign", check_sign_symmetry),
        ("pol/final", check_final_shifts),
    ];
    all.iter().filter(|(id, _)| sel.matches(id)).map(|(_, f)| f()).collect()
}

fn run(id: &'static str, f: impl FnOnce() -> Outcome) -> Report {
    let anchor = ENTRIES.iter().find(|e| e.id == id).map_or("", |e| e.anchor);
    let start = Instant::now();
    let o = f();
    let ms = start.elapsed().as_millis() as u64;
    let mut notes = vec![format!("{} instances", o.instances)];
    if !o.axioms.is_empty() {
        notes.push(format!("relations used: {}", o.axioms.join(", ")));
    }
    notes.extend(o.notes);
    notes.extend(o.failures.iter().map(|(l, _)| format!("nonzero: {l}")));
    let (status, residual) = match o.failures.first() {
        None => (Status::Pass, "0".to_string()),
        Some((l, e)) => (Status::Fail, format!("{l}: {e}")),
    };
    Report { id: id.to_string(), paper_ref: anchor.to_string(), status, residual: Residual::Exact(residual), ms: Some(ms), notes }
}
