//! The fifteen conformal generators and their fixed PBW order.
//!
//! Order: `C0..C3 < D < J01,J02,J03,J12,J13,J23 < P0..P3`. The numeric id of a
//! generator is its rank in that order, so sorting ids sorts words.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    C(usize),
    D,
    J(usize, usize),
    P(usize),
}

/// Ordered index pairs of the six independent `J` components.
pub const J_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl Gen {
    pub const COUNT: usize = 15;

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn from_id(id: u8) -> Gen {
        assert!((id as usize) < Gen::COUNT);
        Gen(id)
    }

    pub fn all() -> impl Iterator<Item = Gen> {
        (0..Gen::COUNT as u8).map(Gen)
    }

    pub fn c(mu: usize) -> Gen {
        assert!(mu < 4);
        Gen(mu as u8)
    }

    pub fn d() -> Gen {
        Gen(4)
    }

    pub fn p(mu: usize) -> Gen {
        assert!(mu < 4);
        Gen(11 + mu as u8)
    }

    /// `J(mu, nu)` for `mu < nu`. Use [`j_signed`] for arbitrary order.
    pub fn j(mu: usize, nu: usize) -> Gen {
        let pos = J_PAIRS
            .iter()
            .position(|&p| p == (mu, nu))
            .expect("J indices must satisfy mu < nu < 4");
        Gen(5 + pos as u8)
    }

    pub fn kind(self) -> GenKind {
        match self.0 {
            0..=3 => GenKind::C(self.0 as usize),
            4 => GenKind::D,
            5..=10 => {
                let (a, b) = J_PAIRS[(self.0 - 5) as usize];
                GenKind::J(a, b)
            }
            11..=14 => GenKind::P((self.0 - 11) as usize),
            _ => unreachable!(),
        }
    }

    pub fn is_p(self) -> bool {
        self.0 >= 11
    }
}

/// `J(mu, nu)` with antisymmetry resolved: `Some((sign, gen))`, or `None` when `mu == nu`.
pub fn j_signed(mu: usize, nu: usize) -> Option<(i64, Gen)> {
    use std::cmp::Ordering::*;
    match mu.cmp(&nu) {
        Less => Some((1, Gen::j(mu, nu))),
        Greater => Some((-1, Gen::j(nu, mu))),
        Equal => None,
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            GenKind::C(m) => write!(f, "C[{m}]"),
            GenKind::D => write!(f, "D"),
            GenKind::J(a, b) => write!(f, "J[{a},{b}]"),
            GenKind::P(m) => write!(f, "P[{m}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_distinct_in_order() {
        let all: Vec<_> = Gen::all().collect();
        assert_eq!(all.len(), 15);
        assert_eq!(all[0], Gen::c(0));
        assert_eq!(all[4], Gen::d());
        assert_eq!(all[5], Gen::j(0, 1));
        assert_eq!(all[14], Gen::p(3));
        for g in all {
            let back = match g.kind() {
                GenKind::C(m) => Gen::c(m),
                GenKind::D => Gen::d(),
                GenKind::J(a, b) => Gen::j(a, b),
                GenKind::P(m) => Gen::p(m),
            };
            assert_eq!(back, g);
        }
    }

    #[test]
    fn reversed_j_is_negated() {
        assert_eq!(j_signed(2, 1), Some((-1, Gen::j(1, 2))));
        assert_eq!(j_signed(3, 3), None);
    }
}
