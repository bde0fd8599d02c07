//! Ray lists as text: one ray per line, `p0 p1 p2 p3 u0 u1 u2 u3 sigma`.
//! Numbers are integers, `num/den` or finite decimals; `#` starts a comment.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::{GeometryError, Ray};
use crate::oracles::exact::Q;

/// Exact value of `7`, `-3/4` or `0.125`.
pub fn parse_rational(s: &str) -> Option<Q> {
    if let Some((n, d)) = s.split_once('/') {
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n.parse().ok()?, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" { BigInt::zero() } else { whole.parse().ok()? };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f: BigInt = frac.parse().ok()?;
        let mag = whole.magnitude().clone().into();
        let v = Q::new(mag, BigInt::from(1)) + Q::new(f, scale);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

pub fn parse_rays(text: &str) -> Result<Vec<Ray>, GeometryError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GeometryError::Parse { line: k + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 9 {
            return Err(err(format!("expected 9 numbers, found {}", fields.len())));
        }
        let mut xs = Vec::with_capacity(9);
        for f in fields {
            xs.push(parse_rational(f).ok_or_else(|| err(format!("not a rational number: {f:?}")))?);
        }
        let p = std::array::from_fn(|i| xs[i].clone());
        let u = std::array::from_fn(|i| xs[4 + i].clone());
        out.push(Ray::new(p, u, xs[8].clone()).map_err(|e| err(e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4"), Some(Q::new((-3).into(), 4.into())));
        assert_eq!(parse_rational("0.125"), Some(Q::new(1.into(), 8.into())));
        assert_eq!(parse_rational("-0.5"), Some(Q::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("12"), Some(Q::from_integer(12.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1."), None);
    }

    #[test]
    fn ray_lines() {
        let rays = parse_rays("# two rays\n1 1 0 0  0 0 0 0  0\n\n5 3 4 0 1/2 0 0 0 1 # helicity 1\n").unwrap();
        assert_eq!(rays.len(), 2);
        assert_eq!(rays[1].u[0], Q::new(1.into(), 2.into()));
        assert_eq!(parse_rays("1 1 1 0 0 0 0 0 0").unwrap_err(), GeometryError::Parse { line: 1, msg: "momentum is not null".into() });
        assert!(matches!(parse_rays("\n1 1 0 0 0 0 0 0"), Err(GeometryError::Parse { line: 2, .. })));
    }
}
