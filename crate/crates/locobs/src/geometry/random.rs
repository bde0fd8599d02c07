//! Seeded random rays with exactly null rational momenta.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dot, int, Ray, V4};
use crate::oracles::exact::Q;

fn small_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Q {
    Q::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

/// A ray whose spatial direction comes from a Pythagorean quadruple
/// `(m²+n²-p²-q², 2(mq+np), 2(nq-mp); m²+n²+p²+q²)`, scaled by a positive
/// rational energy factor.
pub fn random_ray(rng: &mut ChaCha8Rng) -> Ray {
    loop {
        let [m, n, p, q]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let len = m * m + n * n + p * p + q * q;
        if len == 0 {
            continue;
        }
        let dir = [len, m * m + n * n - p * p - q * q, 2 * (m * q + n * p), 2 * (n * q - m * p)];
        let k = Q::new(rng.gen_range(1..=5).into(), rng.gen_range(1..=3).into());
        let mom: V4 = dir.map(|x| &k * int(x));
        let u: V4 = std::array::from_fn(|_| small_rational(rng, 9, 4));
        let sigma = int(rng.gen_range(-1..=1));
        return Ray::new(mom, u, sigma).expect("Pythagorean quadruples are null");
    }
}

/// Two random rays with non-parallel momenta.
pub fn random_pair(rng: &mut ChaCha8Rng) -> (Ray, Ray) {
    loop {
        let (a, b) = (random_ray(rng), random_ray(rng));
        if !dot(&a.p, &b.p).is_zero() {
            return (a, b);
        }
    }
}

pub fn random_pairs(seed: u64, n: usize) -> Vec<(Ray, Ray)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_pair(&mut rng)).collect()
}
