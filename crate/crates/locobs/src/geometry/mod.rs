//! Classical light rays: transfer variables, two-ray localisation, the spin
//! of a ray pair, and a finite-transformation check of the position shift
//! under acceleration.
//!
//! Vectors are contravariant components `v^μ` in exact rationals; the metric
//! is `diag(1,-1,-1,-1)`. A ray is the null line `x(λ) = u + λp`.

mod random;
mod rayfile;

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::metric::{eps_lower, eps_upper, eta};
pub use crate::oracles::exact::Q;

pub use random::{random_pair, random_pairs, random_ray};
pub use rayfile::{parse_rational, parse_rays};

pub type V4 = [Q; 4];
pub type T4 = [[Q; 4]; 4];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("momentum is not null")]
    NotNull,
    #[error("energy must be positive")]
    NonPositiveEnergy,
    #[error("zero energy")]
    ZeroEnergy,
    #[error("parallel momenta: the pair has zero mass")]
    ParallelRays,
    #[error("parallel spatial directions")]
    ParallelDirections,
    #[error("transformed points coincide")]
    DegenerateTransform,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn v4(xs: [i64; 4]) -> V4 {
    xs.map(int)
}

pub fn zero4() -> V4 {
    std::array::from_fn(|_| Q::zero())
}

pub fn dot(a: &V4, b: &V4) -> Q {
    (0..4).fold(Q::zero(), |acc, m| acc + int(eta(m, m)) * &a[m] * &b[m])
}

pub fn lower(a: &V4) -> V4 {
    std::array::from_fn(|m| int(eta(m, m)) * &a[m])
}

pub fn add(a: &V4, b: &V4) -> V4 {
    std::array::from_fn(|m| &a[m] + &b[m])
}

pub fn sub(a: &V4, b: &V4) -> V4 {
    std::array::from_fn(|m| &a[m] - &b[m])
}

pub fn scale(k: &Q, a: &V4) -> V4 {
    std::array::from_fn(|m| k * &a[m])
}

/// Largest component modulus.
pub fn max_abs(a: &V4) -> Q {
    a.iter().map(|x| x.abs()).fold(Q::zero(), |m, x| if x > m { x } else { m })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ray {
    pub p: V4,
    pub u: V4,
    pub sigma: Q,
}

impl Ray {
    pub fn new(p: V4, u: V4, sigma: Q) -> Result<Ray, GeometryError> {
        if !dot(&p, &p).is_zero() {
            return Err(GeometryError::NotNull);
        }
        if !p[0].is_positive() {
            return Err(GeometryError::NonPositiveEnergy);
        }
        Ok(Ray { p, u, sigma })
    }

    /// Orbital `J_μν = p_μ u_ν - p_ν u_μ`, lower indices.
    pub fn orbital(&self) -> T4 {
        wedge(&self.p, &self.u)
    }

    pub fn dilatation(&self) -> Q {
        dot(&self.p, &self.u)
    }

    /// Classical special conformal generator `2(p·u)u^μ - p^μ u²`; the same
    /// for every point of the ray.
    pub fn conformal(&self) -> V4 {
        sub(&scale(&(int(2) * self.dilatation()), &self.u), &scale(&dot(&self.u, &self.u), &self.p))
    }

    pub fn point(&self, lambda: &Q) -> V4 {
        add(&self.u, &scale(lambda, &self.p))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &V4| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} {} {}", show(&self.p), show(&self.u), self.sigma)
    }
}

/// `a_μ b_ν - a_ν b_μ` for contravariant inputs.
pub fn wedge(a: &V4, b: &V4) -> T4 {
    let (al, bl) = (lower(a), lower(b));
    std::array::from_fn(|m| std::array::from_fn(|n| &al[m] * &bl[n] - &al[n] * &bl[m]))
}

fn t_add(a: &T4, b: &T4) -> T4 {
    std::array::from_fn(|m| std::array::from_fn(|n| &a[m][n] + &b[m][n]))
}

/// `v^ρ T_ρμ`, returned contravariant.
fn contract_first(v: &V4, t: &T4) -> V4 {
    let low: V4 = std::array::from_fn(|m| (0..4).fold(Q::zero(), |acc, r| acc + &v[r] * &t[r][m]));
    lower(&low)
}

/// Transfer variable `U_μ = J_0μ / p_0` of a single ray. Only the part
/// transverse to `p` carries information.
#[derive(Clone, Debug, PartialEq)]
pub struct Transfer {
    pub value: V4,
    /// The direction along which `value` is undefined.
    pub undefined_along: V4,
}

impl Transfer {
    /// Equal up to a multiple of the undefined direction.
    pub fn same_as(&self, other: &Transfer) -> bool {
        let d = sub(&self.value, &other.value);
        parallel(&d, &self.undefined_along)
    }
}

fn parallel(d: &V4, p: &V4) -> bool {
    let Some(k) = (0..4).find(|m| !p[*m].is_zero()) else { return d.iter().all(Zero::is_zero) };
    let lambda = &d[k] / &p[k];
    (0..4).all(|m| d[m] == &lambda * &p[m])
}

/// Orbital only: the helicity part does not enter.
pub fn transfer_variable(r: &Ray) -> Result<Transfer, GeometryError> {
    if r.p[0].is_zero() {
        return Err(GeometryError::ZeroEnergy);
    }
    let value = std::array::from_fn(|m| &r.u[m] - &r.p[m] * &r.u[0] / &r.p[0]);
    Ok(Transfer { value, undefined_along: r.p.clone() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayPairObservables {
    pub p: V4,
    pub p2: Q,
    pub d: Q,
    /// Total angular momentum including both helicity parts, lower indices.
    pub j: T4,
    /// Pauli-Lubanski vector from its definition.
    pub w: V4,
    pub x: V4,
    pub x1: V4,
    pub x2: V4,
    pub dp: V4,
    pub dx: V4,
    pub dsigma: Q,
    pub sigma: Q,
}

/// Helicity part `S_μν = 2 ε_μνρλ p^ρ P^λ σ / P²` of one ray in a pair.
pub fn helicity_tensor(pk: &V4, total: &V4, p2: &Q, sigma: &Q) -> T4 {
    std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let mut acc = Q::zero();
            for r in 0..4 {
                for l in 0..4 {
                    let e = eps_lower(m, n, r, l);
                    if e != 0 {
                        acc += int(e) * &pk[r] * &total[l];
                    }
                }
            }
            int(2) * acc * sigma / p2
        })
    })
}

/// `W^μ = -½ ε^{μνρσ} J_νρ P_σ`
pub fn pauli_lubanski(j: &T4, p: &V4) -> V4 {
    let pl = lower(p);
    std::array::from_fn(|m| {
        let mut acc = Q::zero();
        for n in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let e = eps_upper(m, n, r, s);
                    if e != 0 {
                        acc += int(e) * &j[n][r] * &pl[s];
                    }
                }
            }
        }
        -acc / int(2)
    })
}

pub fn pair_observables(r1: &Ray, r2: &Ray) -> Result<RayPairObservables, GeometryError> {
    let p = add(&r1.p, &r2.p);
    let p2 = dot(&p, &p);
    if p2.is_zero() {
        return Err(GeometryError::ParallelRays);
    }
    let d = r1.dilatation() + r2.dilatation();
    let j1 = t_add(&r1.orbital(), &helicity_tensor(&r1.p, &p, &p2, &r1.sigma));
    let j2 = t_add(&r2.orbital(), &helicity_tensor(&r2.p, &p, &p2, &r2.sigma));
    let j = t_add(&j1, &j2);
    let w = pauli_lubanski(&j, &p);
    // ½P² X^(k) = P^λ J^(k)_λμ + p^(k)_μ D
    let xk = |jk: &T4, pk: &V4| -> V4 {
        let v = add(&contract_first(&p, jk), &scale(&d, pk));
        scale(&(int(2) / &p2), &v)
    };
    let x1 = xk(&j1, &r1.p);
    let x2 = xk(&j2, &r2.p);
    let x = scale(&(p2.recip()), &add(&scale(&d, &p), &contract_first(&p, &j)));
    Ok(RayPairObservables {
        dp: sub(&r2.p, &r1.p),
        dx: sub(&x2, &x1),
        dsigma: &r2.sigma - &r1.sigma,
        sigma: &r1.sigma + &r2.sigma,
        p,
        p2,
        d,
        j,
        w,
        x,
        x1,
        x2,
    })
}

impl RayPairObservables {
    /// `P·ΔP, P·ΔX, ΔP·ΔX, ΔP² + P²`
    pub fn triad_residuals(&self) -> [Q; 4] {
        [dot(&self.p, &self.dp), dot(&self.p, &self.dx), dot(&self.dp, &self.dx), dot(&self.dp, &self.dp) + &self.p2]
    }

    /// `W_μ = -½ ε_μνλρ P^ν ΔP^λ ΔX^ρ + ΔP_μ Δσ`, returned contravariant.
    pub fn triad_spin(&self) -> V4 {
        let dpl = lower(&self.dp);
        let low: V4 = std::array::from_fn(|m| {
            let mut acc = Q::zero();
            for n in 0..4 {
                for l in 0..4 {
                    for r in 0..4 {
                        let e = eps_lower(m, n, l, r);
                        if e != 0 {
                            acc += int(e) * &self.p[n] * &self.dp[l] * &self.dx[r];
                        }
                    }
                }
            }
            -acc / int(2) + &dpl[m] * &self.dsigma
        });
        lower(&low)
    }

    /// `J_μν - (P_μ X_ν - P_ν X_μ)`
    pub fn spin_tensor(&self) -> T4 {
        let orb = wedge(&self.p, &self.x);
        std::array::from_fn(|m| std::array::from_fn(|n| &self.j[m][n] - &orb[m][n]))
    }
}

/// Both forms of the pair's spin vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPhotonSpin {
    pub from_definition: V4,
    pub from_triad: V4,
}

pub fn two_photon_spin(r1: &Ray, r2: &Ray) -> Result<TwoPhotonSpin, GeometryError> {
    let o = pair_observables(r1, r2)?;
    Ok(TwoPhotonSpin { from_triad: o.triad_spin(), from_definition: o.w })
}

/// A foot of the common perpendicular: the time at which the ray passes
/// through the spatial point.
#[derive(Clone, Debug, PartialEq)]
pub struct Foot {
    pub t: Q,
    pub x: [Q; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct Perpendicular {
    pub foot1: Foot,
    pub foot2: Foot,
    pub midpoint: [Q; 3],
}

fn dot3(a: &[Q; 3], b: &[Q; 3]) -> Q {
    (0..3).fold(Q::zero(), |acc, i| acc + &a[i] * &b[i])
}

fn spatial(v: &V4) -> [Q; 3] {
    std::array::from_fn(|i| v[i + 1].clone())
}

/// Common perpendicular of the two spatial trajectories in the frame the
/// components are given in.
pub fn common_perpendicular(r1: &Ray, r2: &Ray) -> Result<Perpendicular, GeometryError> {
    let (n1, n2) = (spatial(&r1.p), spatial(&r2.p));
    let w = std::array::from_fn::<Q, 3, _>(|i| &r1.u[i + 1] - &r2.u[i + 1]);
    let (a, b, c) = (dot3(&n1, &n1), dot3(&n1, &n2), dot3(&n2, &n2));
    let (d, e) = (dot3(&n1, &w), dot3(&n2, &w));
    let den = &a * &c - &b * &b;
    if den.is_zero() {
        return Err(GeometryError::ParallelDirections);
    }
    let l1 = (&b * &e - &c * &d) / &den;
    let l2 = (&a * &e - &b * &d) / &den;
    let (f1, f2) = (r1.point(&l1), r2.point(&l2));
    let mid = std::array::from_fn(|i| (&f1[i + 1] + &f2[i + 1]) / int(2));
    Ok(Perpendicular {
        foot1: Foot { t: f1[0].clone(), x: spatial(&f1) },
        foot2: Foot { t: f2[0].clone(), x: spatial(&f2) },
        midpoint: mid,
    })
}

/// The space-time line crossing both rays at right angles in the Minkowski
/// metric: points `X1`, `X2` on the rays with `p1·(X1-X2) = p2·(X1-X2) = 0`.
/// Returns the two feet and their midpoint.
pub fn spacetime_perpendicular(r1: &Ray, r2: &Ray) -> Result<(V4, V4, V4), GeometryError> {
    // p_k·p_k = 0 leaves one unknown per equation.
    let pp = dot(&r1.p, &r2.p);
    if pp.is_zero() {
        return Err(GeometryError::ParallelRays);
    }
    let w = sub(&r2.u, &r1.u);
    let l1 = dot(&r2.p, &w) / &pp;
    let l2 = -dot(&r1.p, &w) / &pp;
    let (f1, f2) = (r1.point(&l1), r2.point(&l2));
    let mid = scale(&Q::new(1.into(), 2.into()), &add(&f1, &f2));
    Ok((f1, f2, mid))
}

/// Lorentz boost along spatial axis `axis` (1..=3) with rapidity
/// parameter `t`: `cosh = (1+t²)/(1-t²)`, `sinh = 2t/(1-t²)`.
pub fn boost(v: &V4, axis: usize, t: &Q) -> V4 {
    let one = Q::one();
    let den = &one - t * t;
    let ch = (&one + t * t) / &den;
    let sh = int(2) * t / &den;
    let mut out = v.clone();
    out[0] = &ch * &v[0] + &sh * &v[axis];
    out[axis] = &sh * &v[0] + &ch * &v[axis];
    out
}

pub fn boost_ray(r: &Ray, axis: usize, t: &Q) -> Ray {
    Ray { p: boost(&r.p, axis, t), u: boost(&r.u, axis, t), sigma: r.sigma.clone() }
}

pub fn translate_ray(r: &Ray, v: &V4) -> Ray {
    Ray { p: r.p.clone(), u: add(&r.u, v), sigma: r.sigma.clone() }
}

/// Finite special conformal map `x ↦ (x - b x²)/(1 - 2b·x + b²x²)`. To first
/// order in `b` it is `x + 2(b·x)x - b x²`, and it maps null lines to null
/// lines exactly.
pub fn special_conformal(x: &V4, b: &V4) -> Option<V4> {
    let x2 = dot(x, x);
    let den = Q::one() - int(2) * dot(b, x) + dot(b, b) * &x2;
    if den.is_zero() {
        return None;
    }
    Some(scale(&den.recip(), &sub(x, &scale(&x2, b))))
}

/// The image ray through the images of `u` and `u + p`.
pub fn conformal_ray(r: &Ray, b: &V4) -> Result<Ray, GeometryError> {
    let a = special_conformal(&r.u, b).ok_or(GeometryError::DegenerateTransform)?;
    let c = special_conformal(&r.point(&Q::one()), b).ok_or(GeometryError::DegenerateTransform)?;
    let mut d = sub(&c, &a);
    if d.iter().all(Zero::is_zero) {
        return Err(GeometryError::DegenerateTransform);
    }
    if d[0].is_negative() {
        d = scale(&int(-1), &d);
    }
    Ray::new(d, a, Q::zero())
}

/// Classical value of the position shift under acceleration with parameter
/// `a`: the position line, the spin line and the quadrupole line, with the
/// quadrupole read off from the rays' conformal generators. Helicities are
/// dropped.
pub fn classical_shift(r1: &Ray, r2: &Ray, a: &V4) -> Result<V4, GeometryError> {
    let (r1, r2) = (Ray { sigma: Q::zero(), ..r1.clone() }, Ray { sigma: Q::zero(), ..r2.clone() });
    let o = pair_observables(&r1, &r2)?;
    let (x, p, p2, w) = (&o.x, &o.p, &o.p2, &o.w);
    let p4 = p2 * p2;
    let w2 = dot(w, w);
    // External part 2D X - P X² + 2 X^ρ S_ρμ - P S²/P², with S² = W²/P².
    let xs = contract_first(x, &o.spin_tensor());
    let ext = sub(
        &add(&sub(&scale(&(int(2) * &o.d), x), &scale(&dot(x, x), p)), &scale(&int(2), &xs)),
        &scale(&(&w2 / &p4), p),
    );
    let c = add(&r1.conformal(), &r2.conformal());
    // 2ħQ/M = C - external; q = ħQ/M.
    let q = scale(&Q::new(1.into(), 2.into()), &sub(&c, &ext));
    let (ax, aw, ap, aq) = (dot(a, x), dot(a, w), dot(a, p), dot(a, &q));
    let pq = dot(p, &q);
    Ok(std::array::from_fn(|n| {
        let mut v = &a[n] * dot(x, x) / int(2) - &ax * &x[n];
        v += &aw * &w[n] / &p4 - &a[n] * &w2 / (int(2) * &p4);
        // quadrupole line, with the sign the enveloping algebra confirms
        v -= (&a[n] * &pq - &ap * &q[n] - &p[n] * &aq) / p2;
        v
    }))
}

/// `max |(X(ε) - X(0))/ε + 2·shift|` with `b = εa`; the factor `-2` relates
/// `(Δ_a, X)` with `Δ_a = a^μ C_μ / 2` to the point map.
pub fn redshift_residual(r1: &Ray, r2: &Ray, a: &V4, eps: &Q) -> Result<Q, GeometryError> {
    let x0 = pair_observables(r1, r2)?.x;
    let shift = classical_shift(r1, r2, a)?;
    let b = scale(eps, a);
    let (m1, m2) = (conformal_ray(r1, &b)?, conformal_ray(r2, &b)?);
    let xe = pair_observables(&m1, &m2)?.x;
    let diff: V4 = std::array::from_fn(|m| (&xe[m] - &x0[m]) / eps + int(2) * &shift[m]);
    Ok(max_abs(&diff))
}

/// Residuals for each `ε` and the ratios of consecutive residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct Convergence {
    pub residuals: Vec<f64>,
    pub ratios: Vec<f64>,
}

impl Convergence {
    /// Every ratio within `[1.8, 2.2]`, i.e. halving ε halves the residual
    /// within 10%.
    pub fn first_order(&self) -> bool {
        !self.ratios.is_empty() && self.ratios.iter().all(|r| (1.8..=2.2).contains(r))
    }

    /// Every residual vanishes: the shift is reproduced with no ε error.
    pub fn is_exact(&self) -> bool {
        !self.residuals.is_empty() && self.residuals.iter().all(|r| *r == 0.0)
    }
}

pub fn redshift_consistency(r1: &Ray, r2: &Ray, a: &V4, eps: &[Q]) -> Result<Convergence, GeometryError> {
    let mut residuals = Vec::new();
    for e in eps {
        residuals.push(redshift_residual(r1, r2, a, e)?.to_f64().unwrap_or(f64::NAN));
    }
    let ratios = residuals.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(Convergence { residuals, ratios })
}

pub mod suite;
