use locobs::algebra::{Gen, Rat};
use locobs::oracles::exact::{cq, q, SMat};
use locobs::oracles::ladder::{self, Casimirs, LadderError, LadderModel, LadderParams};
use locobs::oracles::poisson::{self, classical, dilatation, p_squared, PhaseSpacePoly};
use locobs::oracles::so42::{self, build_so42_rep};
use locobs::report::{Residual, Status};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn so42_commutators_follow_the_table() {
    let rep = build_so42_rep().expect("a convention exists");
    assert_eq!(rep.dimension(), 6);
    let m = |g| *rep.matrix(g);
    let pc = m(Gen::p(0)).commutator(&m(Gen::c(0)));
    assert_eq!(pc, m(Gen::d()).scale(Rat::from(-2)));
    assert!(m(Gen::c(1)).commutator(&m(Gen::c(2))).is_zero());
    assert!(rep.mismatches().is_empty());
}

#[test]
fn so42_images_are_independent() {
    // A degenerate map (e.g. P = C) would satisfy fewer brackets; make sure
    // the fifteen images span a fifteen-dimensional space.
    let rep = build_so42_rep().unwrap();
    let rows: Vec<Vec<Rat>> = Gen::all().map(|g| (0..36).map(|k| rep.matrix(g).entry(k / 6, k % 6)).collect()).collect();
    assert_eq!(rank(rows), 15);
}

fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut r = 0;
    for col in 0..rows[0].len() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col] / rows[r][col];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn so42_report() {
    let r = so42::so42_check(0);
    assert_eq!(r.status, Status::Pass, "{:?}", r.notes);
    assert_eq!(r.residual, Residual::Exact("0".into()));
    let again = so42::so42_check(0);
    assert_eq!((again.residual, again.notes), (r.residual.clone(), r.notes.clone()));
}

#[test]
fn wrong_rotation_sign_breaks_the_table() {
    let rep = build_so42_rep().unwrap();
    let mut conv = rep.convention;
    conv.sigma_d = -conv.sigma_d;
    let pd = conv.image(Gen::d()).commutator(&conv.image(Gen::p(0)));
    assert_ne!(pd, conv.image(Gen::p(0)));
}

#[test]
fn poisson_examples() {
    let d = dilatation();
    assert_eq!(d.poisson(&PhaseSpacePoly::p(2)), PhaseSpacePoly::p(2));
    assert_eq!(classical(Gen::c(0)).poisson(&PhaseSpacePoly::p(0)), d.scale(Rat::from(2)));
    for m in 0..4 {
        let lhs = classical(Gen::c(m)).poisson(&p_squared());
        assert_eq!(lhs, (&p_squared() * &PhaseSpacePoly::x_low(m)).scale(Rat::from(4)));
    }
    // {P_μ, X_ν} = -η_μν
    assert_eq!(PhaseSpacePoly::p(1).poisson(&PhaseSpacePoly::x_low(1)), PhaseSpacePoly::constant(Rat::from(1)));
    assert_eq!(PhaseSpacePoly::p(0).poisson(&PhaseSpacePoly::x_low(0)), PhaseSpacePoly::constant(Rat::from(-1)));
}

#[test]
fn poisson_report() {
    let r = poisson::poisson_check();
    assert_eq!(r.status, Status::Pass, "{:?}", r.notes);
    assert_eq!(poisson::poisson_residuals().len(), 109);
}

#[test]
fn poisson_oracle_catches_a_sign_error() {
    // With C_μ = 2D x_μ + p_μ x² the (P, C) brackets fail.
    let wrong = &(&dilatation() * &PhaseSpacePoly::x_low(0)).scale(Rat::from(2)) + &(&PhaseSpacePoly::p(0) * &poisson::x_squared());
    let lhs = PhaseSpacePoly::p(0).poisson(&wrong);
    assert_ne!(lhs, poisson::table_image(Gen::p(0), Gen::c(0)));
}

fn small_poly() -> impl Strategy<Value = PhaseSpacePoly> {
    prop::collection::vec((prop::array::uniform8(0u8..3), -3i64..=3), 0..5).prop_map(|ts| {
        let mut p = PhaseSpacePoly::zero();
        for (e, c) in ts {
            p.add_term(e, Rat::from(c as i128));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn poisson_bracket_is_antisymmetric(f in small_poly(), g in small_poly()) {
        prop_assert_eq!(f.poisson(&g), -&g.poisson(&f));
    }

    #[test]
    fn poisson_bracket_is_a_derivation(f in small_poly(), g in small_poly(), h in small_poly()) {
        let lhs = f.poisson(&(&g * &h));
        let rhs = &(&f.poisson(&g) * &h) + &(&g * &f.poisson(&h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poisson_bracket_satisfies_jacobi(f in small_poly(), g in small_poly(), h in small_poly()) {
        let j = &(&f.poisson(&g.poisson(&h)) + &g.poisson(&h.poisson(&f))) + &h.poisson(&f.poisson(&g));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn poisson_bracket_is_bilinear(f in small_poly(), g in small_poly(), h in small_poly(), k in -4i64..=4) {
        let k = Rat::from(k as i128);
        prop_assert_eq!(f.poisson(&(&g.scale(k) + &h)), &f.poisson(&g).scale(k) + &f.poisson(&h));
    }
}

fn model(ts_min: u32, ts_max: u32) -> LadderModel {
    LadderModel::build(ts_min, ts_max, &Casimirs::default()).unwrap()
}

#[test]
fn ladder_dimensions_and_spin_number() {
    let m = model(0, 6);
    assert_eq!(m.dim(), 16);
    for b in 0..m.blocks() {
        for k in m.offsets[b]..m.offsets[b + 1] {
            assert_eq!(m.s_star.get(k, k), cq(2 * b as i64 + 1, 2));
        }
    }
    assert_eq!(model(1, 7).dim(), 2 + 4 + 6 + 8);
}

#[test]
fn ladder_spin_vector_closes() {
    let m = model(0, 8);
    // [S^1, S^2] = -i S^3 for S^i = -J_i
    let lhs = m.s_upper[1].commutator(&m.s_upper[2]);
    assert_eq!(lhs, m.s_upper[3].scale(&(-locobs::oracles::exact::i_unit())));
    assert!(m.s_upper[0].is_zero());
}

fn block_of(m: &LadderModel, k: usize) -> usize {
    (0..m.blocks()).find(|b| k < m.offsets[b + 1]).unwrap()
}

#[test]
fn qhat_only_couples_neighbouring_blocks() {
    let m = model(1, 9);
    assert!(m.qhat[0].is_zero());
    for mu in 1..4 {
        assert!(!m.qhat[mu].is_zero());
        for (r, c, _) in m.qhat[mu].entries() {
            assert_eq!(block_of(&m, r).abs_diff(block_of(&m, c)), 1);
        }
    }
}

#[test]
fn zero_c2_gives_zero_alpha_and_transverse_qhat() {
    let m = model(0, 12);
    assert!(m.scalars.iter().all(|s| s.alpha.is_zero()));
    let sq = (1..4).fold(SMat::zero(m.dim()), |acc, i| &acc + &(&m.s_upper[i] * &m.qhat[i]));
    assert!(sq.max_norm_on(m.interior()) < 1e-10);
}

#[test]
fn ladder_interior_residuals_vanish_and_boundary_does_not() {
    let m = model(0, 12);
    let ms = ladder::ladder_residuals(&m);
    let groups = ladder::group_maxima(&ms);
    for g in ["step", "QhR", "ApAm", "AA", "defR", "QRApm"] {
        assert!(groups[g].0 < 1e-10, "{g}: {:?}", groups[g]);
    }
    assert!(groups["QhR"].1 > 1e-3, "truncation must show on the boundary blocks");
    let r = ladder::ladder_check(&m, 1e-10);
    assert_eq!(r.status, Status::Pass, "{:?}", r.notes);
}

#[test]
fn ladder_with_c2_on_the_half_integer_ladder() {
    let c = Casimirs { c1: q(3, 10), c2: q(7, 10), c3: q(-3, 1) };
    let m = LadderModel::build(1, 13, &c).unwrap();
    assert!(m.scalars.iter().all(|s| !s.alpha.is_zero()));
    let r = ladder::ladder_check(&m, 1e-10);
    assert_eq!(r.status, Status::Pass, "{:?}", r.notes);
}

#[test]
fn ladder_residuals_do_not_grow_with_the_truncation() {
    let maxima: Vec<_> = [8, 12, 16].iter().map(|ts| ladder::group_maxima(&ladder::ladder_residuals(&model(0, *ts)))).collect();
    for g in ["step", "QhR", "ApAm", "AA"] {
        for w in maxima.windows(2) {
            assert!(w[1][g].0 <= w[0][g].0, "{g}");
        }
    }
}

#[test]
fn a_wrong_coupling_is_detected() {
    let mut m = model(0, 12);
    // Rebuild Q̂ with one coupling doubled by scaling its upward entries.
    let (lo, hi) = (m.offsets[2], m.offsets[3]);
    for mu in 1..4 {
        let up = m.qhat[mu].filter(|r, c| (hi..m.offsets[4]).contains(&r) && (lo..hi).contains(&c));
        m.qhat[mu] = &m.qhat[mu] + &up;
    }
    let ms = ladder::ladder_residuals(&m);
    let worst = ms.iter().filter(|x| x.group == "QhR").fold(0.0f64, |a, x| a.max(x.interior));
    assert!(worst > 1e-3);
}

#[test]
fn ladder_rejects_bad_inputs() {
    assert_eq!(LadderModel::build(0, 4, &Casimirs::default()).unwrap_err(), LadderError::TooShort);
    assert_eq!(LadderModel::build(2, 12, &Casimirs::default()).unwrap_err(), LadderError::BadBottom);
    let bad = Casimirs { c1: q(0, 1), c2: q(0, 1), c3: q(2, 1) };
    assert!(matches!(LadderModel::build(0, 12, &bad), Err(LadderError::InadmissibleCasimirs(_))));
    let pole = Casimirs { c1: q(0, 1), c2: q(1, 1), c3: q(-3, 1) };
    assert!(matches!(LadderModel::build(0, 12, &pole), Err(LadderError::InadmissibleCasimirs(_))));
    let r = ladder::run_ladder(&LadderParams { casimirs: bad, ..LadderParams::default() });
    assert_eq!(r.status, Status::Error);
}
