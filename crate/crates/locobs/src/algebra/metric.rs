//! Minkowski metric `diag(1,-1,-1,-1)` and the Levi-Civita symbol with
//! `eps_{0123} = +1`, `eps^{0123} = -1`.

/// `eta_{mu nu}` (equal to `eta^{mu nu}`).
pub fn eta(mu: usize, nu: usize) -> i64 {
    if mu != nu {
        0
    } else if mu == 0 {
        1
    } else {
        -1
    }
}

/// Diagonal entry used to raise or lower a single index.
pub fn sign(mu: usize) -> i64 {
    eta(mu, mu)
}

/// Permutation sign of `(a, b, c, d)`, zero on repeated indices.
fn perm_sign(idx: [usize; 4]) -> i64 {
    let mut v = idx;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if v[i] == v[j] {
                return 0;
            }
        }
    }
    let mut s = 1;
    for i in 0..4 {
        for j in 0..3 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                s = -s;
            }
        }
    }
    s
}

/// `eps_{a b c d}` with all indices down.
pub fn eps_lower(a: usize, b: usize, c: usize, d: usize) -> i64 {
    perm_sign([a, b, c, d])
}

/// `eps^{a b c d}` with all indices up.
pub fn eps_upper(a: usize, b: usize, c: usize, d: usize) -> i64 {
    -perm_sign([a, b, c, d])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_conventions() {
        assert_eq!(eps_lower(0, 1, 2, 3), 1);
        assert_eq!(eps_upper(0, 1, 2, 3), -1);
        assert_eq!(eps_lower(1, 0, 2, 3), -1);
        assert_eq!(eps_lower(0, 1, 3, 2), -1);
        assert_eq!(eps_lower(0, 2, 1, 3), -1);
        assert_eq!(eps_lower(0, 0, 1, 2), 0);
    }

    #[test]
    fn raising_all_indices_flips_sign() {
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let raised = eps_lower(a, b, c, d) * sign(a) * sign(b) * sign(c) * sign(d);
                        assert_eq!(raised, eps_upper(a, b, c, d));
                        assert_eq!(eps_lower(a, b, c, d), -eps_lower(b, a, c, d));
                    }
                }
            }
        }
    }
}
