//! Named operations on expressions, and the startup check of the mass rules.

use super::coeff::GaussRat;
use super::engine;
use super::expr::Expression;
use super::generator::Gen;
use super::metric::sign;
use super::relations::bracket;
use crate::error::AlgebraError;

/// `(a, b)` straight from the bracket table.
pub fn lie_bracket(a: Gen, b: Gen) -> Expression {
    let mut e = Expression::zero();
    for (g, c) in bracket(a, b) {
        e.add_scaled(&Expression::gen(g), GaussRat::from_int(c as i128));
    }
    e
}

/// Rebuild every term from its letters. Expressions are kept normal, so this
/// is the identity map; it exists to test that claim.
pub fn normal_form(e: &Expression) -> Result<Expression, AlgebraError> {
    let mut out = Expression::zero();
    for (m, c) in e.iter() {
        let w = engine::normalize_word(&m.word, m.mass)?;
        out.add_scaled(&w.hbar_shift(m.hbar), c);
    }
    Ok(out)
}

pub fn sym_product(a: &Expression, b: &Expression) -> Expression {
    a.sym(b)
}

/// `a·(b·c) - (a·b)·c` for the symmetrised product.
pub fn associator(a: &Expression, b: &Expression, c: &Expression) -> Expression {
    a.sym(&b.sym(c)) - a.sym(b).sym(c)
}

/// `((a,b),c) - (a,(b,c)) + (b,(a,c))`.
pub fn jacobi_residual(a: &Expression, b: &Expression, c: &Expression) -> Expression {
    a.commutator(b).commutator(c) - a.commutator(&b.commutator(c)) + b.commutator(&a.commutator(c))
}

pub fn equals(a: &Expression, b: &Expression) -> bool {
    (a - b).is_zero()
}

/// `P^ρ P_ρ` as a polynomial, before any mass tail exists.
fn p_squared_bracket(g: Gen) -> Expression {
    // (g, P^ρ P_ρ) = Σ sign(ρ) [(g,P_ρ) P_ρ + P_ρ (g,P_ρ)]
    let mut e = Expression::zero();
    for rho in 0..4 {
        let p = Expression::gen(Gen::p(rho));
        let b = lie_bracket(g, Gen::p(rho));
        e.add_scaled(&(b.times(&p) + p.times(&b)), GaussRat::from_int(sign(rho) as i128));
    }
    e
}

/// Check the mass exchange rules against the Lie table.
///
/// The rule `(C_μ, M) = X_μM + MX_μ` is applied twice through the product
/// rule and compared with `(C_μ, P²)` from the bracket table; the engine's
/// own `(C_μ, M)` and `(X_μ, M) = P_μ M⁻¹` are compared with the rule.
pub fn validate_mass_rules() -> Result<(), AlgebraError> {
    let m = Expression::mass(1);
    let x = engine::position();
    for mu in 0..4 {
        let bad = AlgebraError::InconsistentMassRule { mu };
        let c = Expression::gen(Gen::c(mu));
        let rule = x[mu].times(&m) + m.times(&x[mu]);
        if !equals(&c.commutator(&m), &rule) {
            return Err(bad);
        }
        let twice = rule.times(&m) + m.times(&rule);
        if !equals(&twice, &p_squared_bracket(Gen::c(mu))) || !equals(&c.commutator(&Expression::mass(2)), &twice) {
            return Err(bad);
        }
        let px = Expression::gen(Gen::p(mu)).times_mass(-1);
        if !equals(&x[mu].commutator(&m), &px) {
            return Err(bad);
        }
    }
    let d = Expression::gen(Gen::d());
    for k in -3..=3 {
        if !equals(&d.commutator(&Expression::mass(k)), &Expression::mass(k).scale_rat(k as i128, 1)) {
            return Err(AlgebraError::InconsistentMassRule { mu: 4 });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: Gen) -> Expression {
        Expression::gen(x)
    }

    fn ihbar() -> Expression {
        Expression::i().times(&Expression::hbar())
    }

    #[test]
    fn bracket_examples() {
        assert!(lie_bracket(Gen::p(1), Gen::p(2)).is_zero());
        assert_eq!(lie_bracket(Gen::d(), Gen::p(3)), g(Gen::p(3)));
        assert_eq!(lie_bracket(Gen::p(0), Gen::c(0)), g(Gen::d()).scale_rat(-2, 1));
        assert_eq!(lie_bracket(Gen::j(1, 2), Gen::p(1)), g(Gen::p(2)));
    }

    #[test]
    fn multiply_examples() {
        let (p0, p1, p2, j12) = (g(Gen::p(0)), g(Gen::p(1)), g(Gen::p(2)), g(Gen::j(1, 2)));
        assert_eq!(p0.times(&j12), j12.times(&p0));
        assert_eq!(p1.times(&j12), j12.times(&p1) - ihbar().times(&p2));
        assert!(Expression::zero().times(&p1).is_zero());
        let w = engine::normalize_word(&[Gen::p(1), Gen::j(1, 2)], 0).unwrap();
        assert_eq!(w, j12.times(&p1) - ihbar().times(&p2));
    }

    #[test]
    fn inverse_mass_past_dilatation() {
        let lhs = Expression::mass(-2).times(&g(Gen::d()));
        let rhs = g(Gen::d()).times_mass(-2) + ihbar().times(&Expression::mass(-2)).scale_rat(2, 1);
        assert_eq!(lhs, rhs);
        assert_eq!(normal_form(&lhs).unwrap(), lhs);
    }

    #[test]
    fn commutator_examples() {
        assert!(g(Gen::p(0)).commutator(&g(Gen::p(0))).is_zero());
        assert_eq!(g(Gen::d()).commutator(&g(Gen::c(2))), -g(Gen::c(2)));
        let (a, b) = (Gen::j(0, 1), Gen::j(0, 2));
        assert_eq!(g(a).commutator(&g(b)), lie_bracket(a, b));
    }

    #[test]
    fn symmetrised_product_examples() {
        let p0 = g(Gen::p(0));
        assert_eq!(sym_product(&p0, &p0), p0.times(&p0));
        let assoc = associator(&g(Gen::c(0)), &p0, &p0);
        assert_eq!(assoc, p0.hbar_shift(2).scale_rat(-1, 2));
        assert!(associator(&p0, &g(Gen::d()), &g(Gen::c(0))).is_zero());
    }

    #[test]
    fn jacobi_and_equality_examples() {
        assert!(jacobi_residual(&g(Gen::p(0)), &g(Gen::c(0)), &g(Gen::d())).is_zero());
        assert!(jacobi_residual(&g(Gen::j(0, 1)), &g(Gen::j(1, 2)), &g(Gen::j(0, 2))).is_zero());
        let e = g(Gen::c(1)).times(&g(Gen::p(2)));
        assert!(equals(&e, &e));
        assert!(equals(&g(Gen::p(0)).times(&g(Gen::j(1, 2))), &g(Gen::j(1, 2)).times(&g(Gen::p(0)))));
        assert!(!equals(&g(Gen::p(0)), &g(Gen::p(1))));
    }

    #[test]
    fn mass_rules_agree_with_the_table() {
        validate_mass_rules().unwrap();
    }

    #[test]
    fn full_table_is_antisymmetric_and_satisfies_jacobi() {
        let gens: Vec<Gen> = Gen::all().collect();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                assert!((lie_bracket(a, b) + lie_bracket(b, a)).is_zero());
            }
        }
        let mut n = 0;
        for (i, &a) in gens.iter().enumerate() {
            for (j, &b) in gens.iter().enumerate().skip(i + 1) {
                for &c in &gens[j + 1..] {
                    assert!(jacobi_residual(&g(a), &g(b), &g(c)).is_zero(), "{a} {b} {c}");
                    n += 1;
                }
            }
        }
        assert_eq!(n, 455);
    }
}
