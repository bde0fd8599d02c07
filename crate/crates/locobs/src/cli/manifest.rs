//! JSON run manifests.

use std::path::PathBuf;

use serde::Deserialize;
use thiserror::Error;

use crate::filter::Selection;
use crate::geometry::suite::GeometryParams;
use crate::geometry::{parse_rational, Q};
use crate::oracles::ladder::{Casimirs, LadderParams};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// A number, or a string holding an integer, a fraction `n/d` or a decimal.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    pub fn exact(&self) -> Option<Q> {
        match self {
            Number::Int(n) => Some(Q::from_integer((*n).into())),
            // shortest round-trip decimal, so 0.3 reads as 3/10
            Number::Float(x) if x.is_finite() => parse_rational(&format!("{x}")),
            Number::Float(_) => None,
            Number::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LadderSection {
    #[serde(default = "zero")]
    pub s_min: Number,
    #[serde(default = "six")]
    pub s_max: Number,
    #[serde(default = "tol")]
    pub tol: f64,
    pub c1: Option<Number>,
    pub c2: Option<Number>,
    pub c3: Option<Number>,
}

fn zero() -> Number {
    Number::Int(0)
}

fn six() -> Number {
    Number::Int(6)
}

fn tol() -> f64 {
    1e-10
}

impl Default for LadderSection {
    fn default() -> Self {
        LadderSection { s_min: zero(), s_max: six(), tol: tol(), c1: None, c2: None, c3: None }
    }
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub pairs: Option<usize>,
    pub eps: Option<Vec<Number>>,
    pub accel: Option<[Number; 4]>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default = "all_suites")]
    pub suites: Vec<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub ladder: LadderSection,
    #[serde(default)]
    pub geometry: GeometrySection,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

fn all_suites() -> Vec<String> {
    vec!["*".into()]
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            suites: all_suites(),
            seed: 0,
            ladder: LadderSection::default(),
            geometry: GeometrySection::default(),
            output: None,
            format: Format::Text,
        }
    }
}

/// Everything a run needs, validated.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub selection: Selection,
    pub seed: u64,
    pub ladder: LadderParams,
    pub geometry: GeometryParams,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub timings: bool,
}

fn twice_spin(n: &Number, what: &str) -> Result<u32, ConfigError> {
    let s = n.exact().ok_or_else(|| invalid(format!("ladder.{what}: not a number")))?;
    let t = s * Q::from_integer(2.into());
    if !t.is_integer() || t < Q::from_integer(0.into()) {
        return Err(invalid(format!("ladder.{what}: spins are non-negative multiples of 1/2")));
    }
    u32::try_from(t.to_integer()).map_err(|_| invalid(format!("ladder.{what}: too large")))
}

fn casimir(n: &Option<Number>, default: Q, what: &str) -> Result<Q, ConfigError> {
    match n {
        None => Ok(default),
        Some(n) => n.exact().ok_or_else(|| invalid(format!("ladder.{what}: not a number"))),
    }
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Manifest, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let selection = Selection::new(&self.suites).map_err(|e| invalid(format!("suites: {e}")))?;
        let d = Casimirs::default();
        let l = &self.ladder;
        let ladder = LadderParams {
            twice_s_min: twice_spin(&l.s_min, "s_min")?,
            twice_s_max: twice_spin(&l.s_max, "s_max")?,
            tol: l.tol,
            casimirs: Casimirs {
                c1: casimir(&l.c1, d.c1, "c1")?,
                c2: casimir(&l.c2, d.c2, "c2")?,
                c3: casimir(&l.c3, d.c3, "c3")?,
            },
        };
        if ladder.tol.is_nan() || ladder.tol <= 0.0 {
            return Err(invalid("ladder.tol must be positive"));
        }
        check_ladder_shape(&ladder)?;
        let mut geometry = GeometryParams { seed: self.seed, ..GeometryParams::default() };
        let g = &self.geometry;
        if let Some(n) = g.pairs {
            if n == 0 {
                return Err(invalid("geometry.pairs must be positive"));
            }
            geometry.pairs = n;
        }
        if let Some(eps) = &g.eps {
            geometry.eps = exact_list(eps, "geometry.eps")?;
            check_eps(&geometry.eps)?;
        }
        if let Some(a) = &g.accel {
            let v = exact_list(a, "geometry.accel")?;
            geometry.accel = std::array::from_fn(|k| v[k].clone());
        }
        Ok(RunConfig {
            selection,
            seed: self.seed,
            ladder,
            geometry,
            output: self.output.clone(),
            format: self.format,
            timings: false,
        })
    }
}

fn exact_list(xs: &[Number], what: &str) -> Result<Vec<Q>, ConfigError> {
    xs.iter().map(|x| x.exact().ok_or_else(|| invalid(format!("{what}: not a number")))).collect()
}

/// Two or more distinct positive step sizes.
pub fn check_eps(eps: &[Q]) -> Result<(), ConfigError> {
    if eps.len() < 2 {
        return Err(invalid("geometry.eps needs at least two step sizes"));
    }
    if eps.iter().any(|e| *e <= Q::from_integer(0.into())) {
        return Err(invalid("geometry.eps values must be positive"));
    }
    Ok(())
}

/// The ladder needs one interior block away from each boundary.
pub fn check_ladder_shape(p: &LadderParams) -> Result<(), ConfigError> {
    if p.twice_s_min > 1 {
        return Err(invalid("ladder.s_min must be 0 or 1/2"));
    }
    if p.twice_s_max % 2 != p.twice_s_min % 2 {
        return Err(invalid("ladder.s_min and ladder.s_max must both be integers or both half-integers"));
    }
    if p.twice_s_max < p.twice_s_min + 6 {
        return Err(invalid("ladder.s_max must leave interior blocks: s_max >= s_min + 3"));
    }
    Ok(())
}
