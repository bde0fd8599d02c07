//! The Lie bracket table `(A,B) = [A,B]/(iħ)` of the conformal algebra, and the
//! exchange rules of generators with powers of the mass operator.

use smallvec::SmallVec;

use super::generator::{j_signed, Gen, GenKind};
use super::metric::eta;

/// A real linear combination of generators, as returned by the bracket table.
pub type LinComb = SmallVec<[(Gen, i64); 4]>;

fn push(out: &mut LinComb, g: Gen, c: i64) {
    if c == 0 {
        return;
    }
    if let Some(e) = out.iter_mut().find(|(h, _)| *h == g) {
        e.1 += c;
    } else {
        out.push((g, c));
    }
    out.retain(|(_, c)| *c != 0);
}

fn push_j(out: &mut LinComb, mu: usize, nu: usize, c: i64) {
    if let Some((s, g)) = j_signed(mu, nu) {
        push(out, g, s * c);
    }
}

/// `(a, b)` for basis generators, linear and of ħ-degree zero.
pub fn bracket(a: Gen, b: Gen) -> LinComb {
    use GenKind::*;
    let mut out = LinComb::new();
    match (a.kind(), b.kind()) {
        (P(_), P(_)) | (C(_), C(_)) | (D, D) => {}
        (J(m, n), P(r)) => {
            push(&mut out, Gen::p(m), eta(n, r));
            push(&mut out, Gen::p(n), -eta(m, r));
        }
        (J(m, n), C(r)) => {
            push(&mut out, Gen::c(m), eta(n, r));
            push(&mut out, Gen::c(n), -eta(m, r));
        }
        (J(m, n), J(r, s)) => {
            push_j(&mut out, m, s, eta(n, r));
            push_j(&mut out, n, r, eta(m, s));
            push_j(&mut out, n, s, -eta(m, r));
            push_j(&mut out, m, r, -eta(n, s));
        }
        (D, P(m)) => push(&mut out, Gen::p(m), 1),
        (D, J(..)) => {}
        (D, C(m)) => push(&mut out, Gen::c(m), -1),
        (P(m), C(n)) => {
            push(&mut out, Gen::d(), -2 * eta(m, n));
            push_j(&mut out, m, n, -2);
        }
        // remaining pairs follow from antisymmetry
        _ => {
            for (g, c) in bracket(b, a) {
                push(&mut out, g, -c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(v: &[(Gen, i64)]) -> Vec<(Gen, i64)> {
        let mut v = v.to_vec();
        v.sort();
        v
    }

    fn sorted(l: LinComb) -> Vec<(Gen, i64)> {
        lc(&l)
    }

    #[test]
    fn table_examples() {
        assert!(bracket(Gen::p(1), Gen::p(2)).is_empty());
        assert_eq!(sorted(bracket(Gen::d(), Gen::p(3))), lc(&[(Gen::p(3), 1)]));
        assert_eq!(sorted(bracket(Gen::p(0), Gen::c(0))), lc(&[(Gen::d(), -2)]));
        // (J_12, P_1) = eta_21 P_1 - eta_11 P_2 = P_2
        assert_eq!(sorted(bracket(Gen::j(1, 2), Gen::p(1))), lc(&[(Gen::p(2), 1)]));
        assert_eq!(sorted(bracket(Gen::d(), Gen::c(2))), lc(&[(Gen::c(2), -1)]));
    }

    #[test]
    fn antisymmetric_on_all_pairs() {
        for a in Gen::all() {
            for b in Gen::all() {
                let mut ab = sorted(bracket(a, b));
                let ba: Vec<_> = sorted(bracket(b, a)).into_iter().map(|(g, c)| (g, -c)).collect();
                ab.sort();
                assert_eq!(ab, lc(&ba), "{a} {b}");
            }
        }
    }
}
