use locobs::algebra::engine::normalize_word;
use locobs::algebra::{associator, equals, normal_form, Expression, Gen, GaussRat};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn gen() -> impl Strategy<Value = Gen> {
    (0..Gen::COUNT as u8).prop_map(Gen::from_id)
}

/// A free word of length ≤ 3 with a mass tail in -2..=2 and a small Gaussian coefficient.
fn monomial() -> impl Strategy<Value = Expression> {
    (prop::collection::vec(gen(), 0..=3), -2i32..=2, -3i128..=3, -3i128..=3).prop_map(|(w, k, re, im)| {
        let c = GaussRat::from_int(re) + GaussRat::from_int(im).times_i();
        normalize_word(&w, k).unwrap().scale(c)
    })
}

#[test]
fn product_is_associative() {
    runner(1000, 1)
        .run(&(monomial(), monomial(), monomial()), |(a, b, c)| {
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
            Ok(())
        })
        .unwrap();
}

#[test]
fn normal_form_is_idempotent() {
    runner(300, 2)
        .run(&(monomial(), monomial()), |(a, b)| {
            let e = a.times(&b) + a.commutator(&b);
            let once = normal_form(&e).unwrap();
            prop_assert_eq!(&once, &e);
            prop_assert_eq!(normal_form(&once).unwrap(), once);
            Ok(())
        })
        .unwrap();
}

#[test]
fn associator_law() {
    // A·(B·C) - (A·B)·C = (ħ²/4)(B,(A,C))
    runner(200, 3)
        .run(&(gen(), gen(), gen()), |(a, b, c)| {
            let (a, b, c) = (Expression::gen(a), Expression::gen(b), Expression::gen(c));
            let rhs = b.commutator(&a.commutator(&c)).hbar_shift(2).scale_rat(1, 4);
            prop_assert!(equals(&associator(&a, &b, &c), &rhs));
            Ok(())
        })
        .unwrap();
}

#[test]
fn commutator_lowers_word_length() {
    runner(500, 4)
        .run(&(prop::collection::vec(gen(), 1..=3), prop::collection::vec(gen(), 1..=3)), |(u, v)| {
            let a = normalize_word(&u, 0).unwrap().filter(|m| m.hbar == 0);
            let b = normalize_word(&v, 0).unwrap().filter(|m| m.hbar == 0);
            let bound = a.max_word_len() + b.max_word_len();
            let c = a.commutator(&b);
            prop_assert!(c.is_zero() || c.max_word_len() < bound);
            Ok(())
        })
        .unwrap();
}
