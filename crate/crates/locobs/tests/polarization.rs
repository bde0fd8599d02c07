use locobs::polarization::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use PolVector::*;
use Slot::{Mu, Nu};

fn v(p: PolVector, s: Slot) -> PolExpression {
    PolExpression::vector(p, s)
}

fn zero(e: &PolExpression) -> bool {
    canonicalize(e).expect("no stuck term").is_zero()
}

#[test]
fn relations_are_consistent() {
    let rs = RuleSet::standard();
    assert!(rs.inconsistent.is_empty(), "{:?}", rs.inconsistent);
    assert_eq!(rs.rank(), 9);
}

#[test]
fn velocity_is_transverse_to_qhat() {
    assert!(zero(&v(V, Mu).mul(&v(Qhat, Nu)).contract()));
    assert!(zero(&v(Svec, Mu).mul(&v(R, Nu)).contract()));
}

#[test]
fn spin_tensor_on_r_gives_rotated_qhat() {
    // plain product S_μ^ν R_ν, and the symmetrised one
    let t_over_h = named::s2().div(&ScalarFn::hbar());
    let plain = &v(R, Mu).rotate() + &v(Qhat, Mu).scale(&t_over_h);
    assert!(zero(&plain));
    let ih = &ScalarFn::i() * &ScalarFn::hbar();
    let sym = &v(R, Mu).rotate() - &v(R, Mu).scale(&ih);
    assert!(zero(&(&sym + &PolExpression::scalar(t_over_h).sym(&v(Qhat, Mu)))));
}

#[test]
fn r_dot_qhat_vanishes() {
    let e = v(R, Mu).sym(&v(Qhat, Nu)).contract();
    assert!(!e.is_zero(), "needs the relations, not just expansion");
    assert!(zero(&e));
}

#[test]
fn plain_contraction_of_step_operators_is_not_stuck() {
    assert!(canonicalize(&v(Aplus, Mu).mul(&v(Aminus, Nu)).contract()).is_ok());
}

#[test]
fn every_check_passes() {
    for r in check_all(&locobs::filter::Selection::all()) {
        assert!(r.passed(), "{}: {:?} {:?}", r.id, r.residual, r.notes);
    }
}

#[test]
fn eigen_line_with_shifted_spin_fails() {
    let s = &ScalarFn::s() + &ScalarFn::frac(1, 2);
    let ih = &ScalarFn::i() * &ScalarFn::hbar();
    let y = &v(R, Mu) + &v(Qhat, Mu).scale(&(&ScalarFn::i() * &s));
    assert!(!zero(&(&y.rotate() + &y.scale(&(&ih * &s)))));
}

#[test]
fn step_transport_in_the_other_direction_fails() {
    let a = v(Aplus, Mu);
    let wrong = &a.scale_right(&ScalarFn::s()) - &a.scale(&(&ScalarFn::s() - &ScalarFn::one()));
    assert!(!zero(&wrong));
}

#[test]
fn mixed_step_bracket_needs_every_term() {
    let h = ScalarFn::hbar();
    let (beta, gamma, s) = (named::beta(), named::gamma(), ScalarFn::s());
    let i = ScalarFn::i();
    let lhs = v(Aplus, Mu).bracket(&v(Aminus, Nu));
    let g = PolExpression::g_tensor().scale(&(&(&(&i * &h) * &ScalarFn::frac(-1, 2)) * &(&gamma * &s)));
    let st = PolExpression::atom(Atom::Stensor).scale(&(&ScalarFn::frac(1, 2) * &(&gamma - &(&beta * &ScalarFn::frac(1, 4)))));
    let k = PolExpression::atom(Atom::K).scale(&(&(&(&i * &ScalarFn::frac(-1, 2)) * &beta) * &s.div(&h)));
    assert!(zero(&(&lhs - &(&(&g + &st) + &k))));
    assert!(!zero(&(&lhs - &(&g + &st))));
    assert!(!zero(&(&lhs - &(&g + &k))));
    assert!(!zero(&(&lhs - &(&st + &k))));
}

#[test]
fn rungs() {
    let up = rung_scalar(true);
    let lo = rung_scalar(false);
    for p in [(-1, 1), (-1, 2)] {
        assert!(at_rung(&up, p).unwrap().is_zero());
    }
    for p in [(1, 1), (1, 2)] {
        assert!(at_rung(&lo, p).unwrap().is_zero());
    }
    // the upper sign does not vanish at s* = 1
    assert!(!at_rung(&up, (1, 1)).unwrap().is_zero());
    // at S2 = 0 the value exists only once c2 = 0
    assert!(lo.at_s(&ScalarFn::frac(1, 2)).is_none());
}

#[test]
fn mismatched_quadrupole_signs_fail() {
    for sign in [1, -1] {
        assert!(final_shift_residuals(sign).iter().all(|(_, e)| zero(e)));
    }
    let (label, e) = &final_shift_residuals_with(1, -1)[0];
    assert!(!zero(e), "{label}");
}

#[test]
fn sign_flip_leaves_s_free_scalars_alone() {
    let f = &ScalarFn::var(Var::C1) * &ScalarFn::hbar();
    let e = v(V, Mu).scale(&f);
    assert_eq!(e.map_coeffs(ScalarFn::negate_s), e);
}

fn vectors() -> impl Strategy<Value = PolVector> {
    prop_oneof![Just(V), Just(Svec), Just(Qhat), Just(R), Just(Aplus), Just(Aminus)]
}

fn coeff() -> impl Strategy<Value = ScalarFn> {
    (-3i64..=3, 0u32..3, 1i64..4).prop_map(|(a, k, d)| &ScalarFn::frac(a, d) * &ScalarFn::s().powi(k))
}

fn word() -> impl Strategy<Value = PolExpression> {
    (vectors(), vectors(), coeff(), coeff(), any::<bool>()).prop_map(|(a, b, ca, cb, pair)| {
        let x = v(a, Mu).scale(&ca);
        if pair {
            x.mul(&v(b, Nu).scale(&cb))
        } else {
            x.scale_right(&cb)
        }
    })
}

fn runner(cases: u32) -> TestRunner {
    let cfg = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]))
}

#[test]
fn canonicalize_is_idempotent() {
    runner(200)
        .run(&(word(), word()), |(a, b)| {
            let e = &a + &b;
            let once = canonicalize(&e).unwrap();
            let twice = canonicalize(&once).unwrap();
            prop_assert!((&once - &twice).is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn transport_in_one_or_two_steps() {
    runner(50)
        .run(&(prop_oneof![Just(Aplus), Just(Aminus)], coeff()), |(a, c)| {
            let x = v(a, Mu).scale(&c);
            let s = ScalarFn::s();
            let once = x.scale_right(&s.powi(2));
            let twice = x.scale_right(&s).scale_right(&s);
            prop_assert!(canonicalize(&(&once - &twice)).unwrap().is_zero());
            Ok(())
        })
        .unwrap();
}
