use num::{BigInt, Num, Zero};
use serde::{Deserialize, Serialize};

use super::{PolyhedralCone, Rational, Vector};
use crate::error::{Error, Result};

/// Wire form of a cone: rationals as `"p/q"` or integer strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(default)]
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub normals: Vec<Vec<String>>,
}

/// `p/q` in lowest terms, or the plain integer when `q = 1`.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Accepts `p/q`, plain integers and finite decimals such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str_radix(p.trim(), 10).map_err(|_| bad())?;
        let q = BigInt::from_str_radix(q.trim(), 10).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer = BigInt::from_str_radix(&digits, 10).map_err(|_| bad())?;
    let denom = num::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn format_family(vs: &[Vector]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.iter().map(format_rational).collect()).collect()
}

fn parse_family(vs: &[Vec<String>]) -> Result<Vec<Vector>> {
    vs.iter().map(|v| v.iter().map(|s| parse_rational(s)).collect()).collect()
}

impl PolyhedralCone {
    pub fn to_json(&self) -> ConeJson {
        ConeJson {
            dim: self.dim,
            generators: format_family(&self.generators),
            normals: format_family(&self.normals),
        }
    }

    /// Builds from whichever description is present. When both are given they
    /// must describe the same cone.
    pub fn from_json(json: &ConeJson) -> Result<Self> {
        let generators = parse_family(&json.generators)?;
        let normals = parse_family(&json.normals)?;
        match (generators.is_empty(), normals.is_empty()) {
            (false, true) => Self::from_generators(json.dim, &generators),
            (true, false) => Self::from_normals(json.dim, &normals),
            (true, true) => Err(Error::Parse(
                "cone needs generators or normals (the zero cone is not a valid regulator cone)".into(),
            )),
            (false, false) => {
                let from_g = Self::from_generators(json.dim, &generators)?;
                let from_h = Self::from_normals(json.dim, &normals)?;
                if from_g.same_cone(&from_h)? {
                    Ok(from_g)
                } else {
                    Err(Error::Parse("generators and normals describe different cones".into()))
                }
            }
        }
    }
}
