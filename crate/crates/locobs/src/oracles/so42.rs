//! The conformal algebra as rotation generators of a six-dimensional space
//! with metric `diag(1,-1,-1,-1,-1,1)`.
//!
//! The bracket is the plain matrix commutator, so the iħ of `(A,B)` is
//! absorbed and every entry stays rational.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::relations::bracket;
use crate::algebra::{Gen, GenKind, Rat};
use crate::report::{Report, Residual, Status};

const N: usize = 6;
const G6: [i64; N] = [1, -1, -1, -1, -1, 1];

fn r(n: i64) -> Rat {
    Rat::from(n as i128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat6([[Rat; N]; N]);

impl Mat6 {
    pub fn zero() -> Self {
        Mat6([[Rat::zero(); N]; N])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn scale(&self, k: Rat) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|x| *x *= k);
        out
    }

    pub fn entry(&self, r: usize, c: usize) -> Rat {
        self.0[r][c]
    }

    pub fn commutator(&self, o: &Mat6) -> Mat6 {
        *self * *o - *o * *self
    }

    /// Rotation generator `(L_AB)^C_D = δ^C_A g_BD - δ^C_B g_AD`.
    pub fn rotation(a: usize, b: usize) -> Mat6 {
        let mut m = Mat6::zero();
        m.0[a][b] += r(G6[b]);
        m.0[b][a] -= r(G6[a]);
        m
    }
}

impl Add for Mat6 {
    type Output = Mat6;
    fn add(mut self, o: Mat6) -> Mat6 {
        for r in 0..N {
            for c in 0..N {
                self.0[r][c] += o.0[r][c];
            }
        }
        self
    }
}

impl Sub for Mat6 {
    type Output = Mat6;
    fn sub(self, o: Mat6) -> Mat6 {
        self + o.scale(-Rat::one())
    }
}

impl Mul for Mat6 {
    type Output = Mat6;
    fn mul(self, o: Mat6) -> Mat6 {
        let mut out = Mat6::zero();
        for r in 0..N {
            for k in 0..N {
                if self.0[r][k].is_zero() {
                    continue;
                }
                for c in 0..N {
                    out.0[r][c] += self.0[r][k] * o.0[k][c];
                }
            }
        }
        out
    }
}

/// Signs and scales taking rotation generators to `(P, J, D, C)`:
/// `J_μν = σ_J L_μν`, `D = σ_D L_45`, `P_μ = k_P (L_μ5 + ε L_μ4)`,
/// `C_μ = k_C (L_μ5 - ε L_μ4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Convention {
    pub sigma_j: i64,
    pub sigma_d: i64,
    pub epsilon: i64,
    pub k_p: Rat,
    pub k_c: Rat,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J = {}L, D = {}L45, P = {}(L.5 {} L.4), C = {}(L.5 {} L.4)",
            self.sigma_j,
            self.sigma_d,
            self.k_p,
            if self.epsilon > 0 { "+" } else { "-" },
            self.k_c,
            if self.epsilon > 0 { "-" } else { "+" }
        )
    }
}

impl Convention {
    pub fn image(&self, g: Gen) -> Mat6 {
        match g.kind() {
            GenKind::J(m, n) => Mat6::rotation(m, n).scale(r(self.sigma_j)),
            GenKind::D => Mat6::rotation(4, 5).scale(r(self.sigma_d)),
            GenKind::P(m) => (Mat6::rotation(m, 5) + Mat6::rotation(m, 4).scale(r(self.epsilon))).scale(self.k_p),
            GenKind::C(m) => (Mat6::rotation(m, 5) - Mat6::rotation(m, 4).scale(r(self.epsilon))).scale(self.k_c),
        }
    }

    fn candidates() -> impl Iterator<Item = Convention> {
        let scales = [Rat::from(1), Rat::from(-1), Rat::from(2), Rat::from(-2), Rat::new(1, 2), Rat::new(-1, 2)];
        let signs = [1i64, -1];
        signs.into_iter().flat_map(move |sigma_j| {
            signs.into_iter().flat_map(move |sigma_d| {
                signs.into_iter().flat_map(move |epsilon| {
                    scales.into_iter().flat_map(move |k_p| {
                        scales.into_iter().map(move |k_c| Convention { sigma_j, sigma_d, epsilon, k_p, k_c })
                    })
                })
            })
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum So42Error {
    #[error("no sign/scale convention reproduces the bracket table")]
    NoConventionFound,
}

#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub convention: Convention,
    images: Vec<Mat6>,
}

impl MatrixRep {
    pub fn dimension(&self) -> usize {
        N
    }

    pub fn matrix(&self, g: Gen) -> &Mat6 {
        &self.images[g.id() as usize]
    }

    /// Matrix of the table value of `(a, b)`.
    pub fn table_image(&self, a: Gen, b: Gen) -> Mat6 {
        bracket(a, b).iter().fold(Mat6::zero(), |acc, (g, c)| acc + self.matrix(*g).scale(r(*c)))
    }

    /// Pairs `a < b` whose commutator differs from the table image.
    pub fn mismatches(&self) -> Vec<(Gen, Gen)> {
        let gens: Vec<Gen> = Gen::all().collect();
        let mut out = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if self.matrix(*a).commutator(self.matrix(*b)) != self.table_image(*a, *b) {
                    out.push((*a, *b));
                }
            }
        }
        out
    }
}

fn matches_pc(c: &Convention) -> bool {
    (0..4).all(|m| {
        (0..4).all(|n| {
            let lhs = c.image(Gen::p(m)).commutator(&c.image(Gen::c(n)));
            let rhs = bracket(Gen::p(m), Gen::c(n)).iter().fold(Mat6::zero(), |acc, (g, k)| acc + c.image(*g).scale(r(*k)));
            lhs == rhs
        })
    })
}

pub fn build_so42_rep() -> Result<MatrixRep, So42Error> {
    for conv in Convention::candidates().filter(matches_pc) {
        let rep = MatrixRep { convention: conv, images: Gen::all().map(|g| conv.image(g)).collect() };
        if rep.mismatches().is_empty() {
            return Ok(rep);
        }
    }
    Err(So42Error::NoConventionFound)
}

/// Random integer combination of the generators.
fn random_element(rep: &MatrixRep, rng: &mut ChaCha8Rng) -> Mat6 {
    Gen::all().fold(Mat6::zero(), |acc, g| acc + rep.matrix(g).scale(Rat::from(rng.gen_range(-3i128..=3))))
}

pub const SO42_ID: &str = "oracle/so42";
pub const SO42_ANCHOR: &str = "§4 (ConfAlg), (PoincareAlg), (DAlg): \"Conformal invariance can be rigorously established\"";

pub fn so42_check(seed: u64) -> Report {
    let started = std::time::Instant::now();
    let (status, residual, notes) = match build_so42_rep() {
        Err(e) => (Status::Error, e.to_string(), vec![]),
        Ok(rep) => {
            let bad = rep.mismatches();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut jacobi_bad = 0;
            for _ in 0..20 {
                let (x, y, z) = (random_element(&rep, &mut rng), random_element(&rep, &mut rng), random_element(&rep, &mut rng));
                let j = x.commutator(&y.commutator(&z)) + y.commutator(&z.commutator(&x)) + z.commutator(&x.commutator(&y));
                if !j.is_zero() {
                    jacobi_bad += 1;
                }
            }
            let mut notes = vec![format!("convention: {}", rep.convention), format!("{}/105 pairs match", 105 - bad.len())];
            notes.push(format!("Jacobi on 20 random triples: {} failures", jacobi_bad));
            notes.extend(bad.iter().map(|(a, b)| format!("mismatch: ({a},{b})")));
            let ok = bad.is_empty() && jacobi_bad == 0;
            (if ok { Status::Pass } else { Status::Fail }, if ok { "0".into() } else { format!("{} mismatches", bad.len() + jacobi_bad) }, notes)
        }
    };
    Report {
        id: SO42_ID.into(),
        paper_ref: SO42_ANCHOR.into(),
        status,
        residual: Residual::Exact(residual),
        ms: Some(started.elapsed().as_millis() as u64),
        notes,
    }
}
