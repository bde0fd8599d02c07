//! Seeded geometry checks over random ray pairs.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::filter::Selection;
use crate::report::{Report, Residual, Status};

#[derive(Clone, Debug, PartialEq)]
pub struct GeometryParams {
    pub seed: u64,
    pub pairs: usize,
    /// Pairs used for the convergence measurement.
    pub redshift_pairs: usize,
    pub accel: V4,
    pub eps: Vec<Q>,
}

impl Default for GeometryParams {
    fn default() -> Self {
        GeometryParams {
            seed: 0,
            pairs: 1000,
            redshift_pairs: 100,
            accel: v4([0, 0, 0, 1]),
            eps: (8..=10).map(|k| Q::new(1.into(), num_bigint::BigInt::from(1) << k)).collect(),
        }
    }
}

pub const ENTRIES: &[(&str, &str)] = &[
    ("geometry/triad", "Appendix C: \"a triad of orthogonal vectors\", P·ΔP = P·ΔX = ΔP·ΔX = 0, ΔP² = −P²"),
    ("geometry/localisation", "Appendix C (trans2), (position2): \"half the sum of these two variables\"; r⊥ \"crosses these two rays at right angle\""),
    ("geometry/spin", "Appendix C: \"the spatial angular momentum of the two non-intersecting rays\"; (PW)"),
    ("geometry/covariance", "(PX) classical analogue; Lorentz covariance of (defX)"),
    ("geometry/redshift", "(CX): \"shifts expected from classical relativity\""),
];

fn report(id: &str, started: Instant, bad: usize, total: usize, notes: Vec<String>) -> Report {
    let anchor = ENTRIES.iter().find(|e| e.0 == id).map_or("", |e| e.1);
    Report {
        id: id.to_string(),
        paper_ref: anchor.to_string(),
        status: if bad == 0 { Status::Pass } else { Status::Fail },
        residual: Residual::Exact(if bad == 0 { "0".into() } else { format!("{bad}/{total} failed") }),
        ms: Some(started.elapsed().as_millis() as u64),
        notes,
    }
}

fn check_triad(pairs: &[(Ray, Ray)]) -> Report {
    let t = Instant::now();
    let mut bad = 0;
    for (a, b) in pairs {
        let o = pair_observables(a, b).expect("random pairs have mass");
        if !o.triad_residuals().iter().all(Zero::is_zero) {
            bad += 1;
        }
    }
    report("geometry/triad", t, bad, pairs.len(), vec![format!("{} pairs", pairs.len())])
}

fn check_localisation(pairs: &[(Ray, Ray)]) -> Report {
    let t = Instant::now();
    let (mut bad, mut spatial_agree, mut simultaneous) = (0, 0, 0);
    for (a, b) in pairs {
        let o = pair_observables(a, b).expect("random pairs have mass");
        let (f1, f2, mid) = spacetime_perpendicular(a, b).expect("random pairs have mass");
        let halves = scale(&Q::new(1.into(), 2.into()), &add(&o.x1, &o.x2));
        if o.x != mid || o.x1 != f1 || o.x2 != f2 || o.x != halves {
            bad += 1;
        }
        if let Ok(sp) = common_perpendicular(a, b) {
            let same_time = sp.foot1.t == sp.foot2.t;
            simultaneous += usize::from(same_time);
            if sp.midpoint == spatial(&o.x) && sp.foot1.t == o.x1[0] && sp.foot2.t == o.x2[0] {
                spatial_agree += 1;
            }
        }
    }
    let notes = vec![
        format!("{} pairs: X, X(1), X(2) against the space-time common perpendicular", pairs.len()),
        format!(
            "lab-frame spatial perpendicular agrees on {spatial_agree} pairs; its feet are simultaneous on {simultaneous}"
        ),
    ];
    report("geometry/localisation", t, bad, pairs.len(), notes)
}

fn check_spin(pairs: &[(Ray, Ray)]) -> Report {
    let t = Instant::now();
    let mut bad = 0;
    for (a, b) in pairs {
        let w = two_photon_spin(a, b).expect("random pairs have mass");
        if w.from_definition != w.from_triad {
            bad += 1;
        }
    }
    report("geometry/spin", t, bad, pairs.len(), vec![format!("{} pairs", pairs.len())])
}

fn check_covariance(pairs: &[(Ray, Ray)], seed: u64) -> Report {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6765_6f6d);
    let mut bad = 0;
    for (a, b) in pairs {
        let x = pair_observables(a, b).expect("random pairs have mass").x;
        let axis = rng.gen_range(1..=3);
        let tb = Q::new(rng.gen_range(1..=4).into(), rng.gen_range(5..=9).into());
        let boosted = pair_observables(&boost_ray(a, axis, &tb), &boost_ray(b, axis, &tb)).expect("mass is invariant").x;
        let v: V4 = std::array::from_fn(|_| Q::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into()));
        let moved = pair_observables(&translate_ray(a, &v), &translate_ray(b, &v)).expect("mass is invariant").x;
        if boosted != boost(&x, axis, &tb) || moved != add(&x, &v) {
            bad += 1;
        }
    }
    report("geometry/covariance", t, bad, pairs.len(), vec![format!("{} pairs, one boost and one translation each", pairs.len())])
}

fn check_redshift(pairs: &[(Ray, Ray)], p: &GeometryParams) -> Report {
    let t = Instant::now();
    let (mut good, mut exact) = (0, 0);
    let mut notes = Vec::new();
    for (k, (a, b)) in pairs.iter().enumerate() {
        match redshift_consistency(a, b, &p.accel, &p.eps) {
            Ok(c) if c.first_order() => good += 1,
            Ok(c) if c.is_exact() => exact += 1,
            Ok(c) => notes.push(format!("pair {k}: ratios {:?}", c.ratios)),
            Err(e) => notes.push(format!("pair {k}: {e}")),
        }
    }
    let n = pairs.len();
    notes.insert(0, format!("{good}/{n} pairs with every residual ratio in [1.8, 2.2]"));
    if exact > 0 {
        notes.insert(1, format!("{exact}/{n} pairs with every residual exactly zero"));
    }
    let good = good + exact;
    let mut r = report("geometry/redshift", t, 0, n, notes);
    // At least 95% of the pairs must show first-order convergence.
    if good * 100 < 95 * n {
        r.status = Status::Fail;
    }
    r.residual = Residual::Exact(format!("{}/{n} not first order", n - good));
    r
}

pub fn catalog() -> Vec<(&'static str, &'static str)> {
    ENTRIES.to_vec()
}

pub fn check_all(sel: &Selection, p: &GeometryParams) -> Vec<Report> {
    let wanted = |id: &str| sel.matches(id);
    if !ENTRIES.iter().any(|e| wanted(e.0)) {
        return vec![];
    }
    check_pairs(sel, &random_pairs(p.seed, p.pairs), p)
}

/// The selected checks on given pairs. Redshift uses the first
/// `redshift_pairs` of them.
pub fn check_pairs(sel: &Selection, pairs: &[(Ray, Ray)], p: &GeometryParams) -> Vec<Report> {
    let wanted = |id: &str| sel.matches(id);
    let mut out = Vec::new();
    if wanted("geometry/triad") {
        out.push(check_triad(pairs));
    }
    if wanted("geometry/localisation") {
        out.push(check_localisation(pairs));
    }
    if wanted("geometry/spin") {
        out.push(check_spin(pairs));
    }
    if wanted("geometry/covariance") {
        out.push(check_covariance(pairs, p.seed));
    }
    if wanted("geometry/redshift") {
        let n = p.redshift_pairs.min(pairs.len());
        out.push(check_redshift(&pairs[..n], p));
    }
    out
}
