//! Upper sets `A ⊆ M` with `A = cl co(A + K_M)`, stored as support values.
//!
//! An [`UpperSet`] records `h(u) = inf { u·z : z ∈ A }` for every direction
//! `u` of a shared [`DirectionGrid`] and represents the polyhedron
//! `∩_u { z : u·z ≥ h(u) }`. All grid directions lie in `K_M⁺`, so every
//! represented set is automatically closed under adding `K_M`.
//!
//! Comparisons are made per grid direction. They are exact for polyhedral
//! sets whose facet normals belong to the grid and an outer approximation
//! otherwise.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpOutcome, LpProblem, DEFAULT_TOLERANCE};

/// Default tolerance for inclusion tests between upper sets.
pub const INCLUSION_TOLERANCE: f64 = 1e-7;

/// Default number of grid directions.
pub const DEFAULT_GRID_DENSITY: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionGrid {
    m: usize,
    directions: Vec<Vec<f64>>,
    generator_count: usize,
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
}

impl DirectionGrid {
    /// Unit directions covering the dual cone `K_M⁺`: its generators first,
    /// then a deterministic refinement up to roughly `density` directions.
    pub fn new(k_m_plus: &PolyhedralCone, density: usize) -> Result<Self> {
        let m = k_m_plus.dim();
        if k_m_plus.is_zero() {
            return Err(Error::DegenerateCone("K_M⁺ = {0}: no direction can scalarize upper sets".into()));
        }
        let generators: Vec<Vec<f64>> = k_m_plus.generators_f64().iter().map(|g| normalize(g)).collect();
        let mut directions = generators.clone();
        let extra = match m {
            1 => Vec::new(),
            2 => angular_refinement(&generators, density),
            _ => barycentric_refinement(&generators, density),
        };
        for v in extra {
            if !directions.iter().any(|d| close(d, &v)) {
                directions.push(v);
            }
        }
        let grid = Self { m, directions, generator_count: generators.len() };
        for d in &grid.directions {
            if !in_cone_f64(k_m_plus, d) {
                return Err(Error::Evaluation(format!("grid direction {d:?} left the dual cone")));
            }
        }
        Ok(grid)
    }

    /// A grid with explicit directions. Vectors already of unit length (to
    /// 1e-12) are kept bit for bit; others are normalized.
    pub fn from_directions(m: usize, directions: Vec<Vec<f64>>) -> Result<Self> {
        if directions.is_empty() {
            return Err(Error::Dimension("empty direction grid".into()));
        }
        for d in &directions {
            if d.len() != m {
                return Err(Error::Dimension(format!("direction {d:?} is not in ℝ^{m}")));
            }
            if d.iter().all(|&x| x == 0.0) || d.iter().any(|x| !x.is_finite()) {
                return Err(Error::Dimension(format!("invalid direction {d:?}")));
            }
        }
        let generator_count = directions.len();
        Ok(Self {
            m,
            directions: directions
                .into_iter()
                .map(|d| {
                    let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if (norm - 1.0).abs() <= 1e-12 {
                        d
                    } else {
                        normalize(&d)
                    }
                })
                .collect(),
            generator_count,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    /// The leading directions that are the (normalized) generators of `K_M⁺`.
    pub fn generator_directions(&self) -> &[Vec<f64>] {
        &self.directions[..self.generator_count]
    }

    /// True when every direction lies in the cone (within 1e-12 per normal).
    pub fn lies_in(&self, cone: &PolyhedralCone) -> bool {
        cone.dim() == self.m && self.directions.iter().all(|d| in_cone_f64(cone, d))
    }
}

pub(crate) fn in_cone_f64(cone: &PolyhedralCone, d: &[f64]) -> bool {
    cone.normals_f64().iter().all(|a| {
        let s: f64 = a.iter().zip(d).map(|(x, y)| x * y).sum();
        let scale: f64 = a.iter().map(|x| x.abs()).sum();
        s >= -1e-12 * scale
    })
}

fn angular_refinement(generators: &[Vec<f64>], density: usize) -> Vec<Vec<f64>> {
    if generators.len() < 2 {
        return Vec::new();
    }
    let mut angles: Vec<f64> = generators.iter().map(|g| g[1].atan2(g[0])).collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    // The cone is the complement of the widest angular gap.
    let k = angles.len();
    let gap = |i: usize| {
        let next = if i + 1 < k { angles[i + 1] } else { angles[0] + 2.0 * PI };
        next - angles[i]
    };
    let widest = (0..k).max_by(|&a, &b| gap(a).total_cmp(&gap(b))).unwrap_or(0);
    let ordered: Vec<f64> = (1..=k)
        .map(|s| {
            let i = (widest + s) % k;
            if i <= widest {
                angles[i] + 2.0 * PI
            } else {
                angles[i]
            }
        })
        .collect();
    let span = ordered[k - 1] - ordered[0];
    if span <= 0.0 {
        return Vec::new();
    }
    let budget = density.saturating_sub(k);
    let mut out = Vec::new();
    for w in ordered.windows(2) {
        let width = w[1] - w[0];
        let count = ((budget as f64) * width / span).round() as usize;
        for t in 1..=count {
            let theta = w[0] + width * t as f64 / (count + 1) as f64;
            out.push(vec![theta.cos(), theta.sin()]);
        }
    }
    out
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn barycentric_refinement(generators: &[Vec<f64>], density: usize) -> Vec<Vec<f64>> {
    let k = generators.len();
    if k < 2 {
        return Vec::new();
    }
    let mut level = 1;
    while binomial(level + k, k - 1) <= density {
        level += 1;
    }
    let mut weights = Vec::new();
    compositions(level, k, &mut Vec::new(), &mut weights);
    let m = generators[0].len();
    weights
        .into_iter()
        .map(|w| {
            let mut v = vec![0.0; m];
            for (a, g) in w.iter().zip(generators) {
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi += *a as f64 * gi;
                }
            }
            normalize(&v)
        })
        .collect()
}

/// `inf { u·z : dirs[k]·z ≥ values[k] }`, via the dual program
/// `max Σ λ_k values[k]  s.t.  Σ λ_k dirs[k] = u, λ ≥ 0`.
///
/// Returns `+∞` for an empty polyhedron and `−∞` when unbounded below.
/// Constraints with value `−∞` are vacuous; any `+∞` value makes the set empty.
pub fn polyhedral_support(dirs: &[Vec<f64>], values: &[f64], u: &[f64]) -> Result<f64> {
    if values.iter().any(|&v| v == f64::INFINITY) {
        return Ok(f64::INFINITY);
    }
    let active: Vec<usize> = (0..dirs.len()).filter(|&k| values[k].is_finite()).collect();
    if active.is_empty() {
        return Ok(if u.iter().all(|&x| x == 0.0) { 0.0 } else { f64::NEG_INFINITY });
    }
    let m = u.len();
    let mut dual = LpProblem::new(active.iter().map(|&k| -values[k]).collect());
    for j in 0..active.len() {
        dual.set_nonnegative(j);
    }
    for i in 0..m {
        dual.push_eq(active.iter().map(|&k| dirs[k][i]).collect(), u[i]);
    }
    match solve_lp(&dual, DEFAULT_TOLERANCE)? {
        LpOutcome::Optimal { value, .. } => Ok(-value),
        LpOutcome::Unbounded { .. } => Ok(f64::INFINITY),
        LpOutcome::Infeasible => {
            // u is outside the cone of normals: unbounded below unless empty.
            let mut primal = LpProblem::new(vec![0.0; m]);
            for &k in &active {
                primal.push_ge(dirs[k].clone(), values[k]);
            }
            match solve_lp(&primal, DEFAULT_TOLERANCE)? {
                LpOutcome::Infeasible => Ok(f64::INFINITY),
                _ => Ok(f64::NEG_INFINITY),
            }
        }
    }
}

/// Operations on upper sets sharing one grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Combine {
    MinkowskiSum,
    Intersect,
    Scale(f64),
    ConvexComb(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpperSet {
    grid: Arc<DirectionGrid>,
    support: Vec<f64>,
    empty: bool,
}

impl UpperSet {
    /// Any `+∞` entry makes the whole set empty.
    pub fn from_support(grid: Arc<DirectionGrid>, support: Vec<f64>) -> Result<Self> {
        if support.len() != grid.len() {
            return Err(Error::Dimension(format!(
                "{} support values for {} directions",
                support.len(),
                grid.len()
            )));
        }
        if support.iter().any(|v| v.is_nan()) {
            return Err(Error::Evaluation("NaN support value".into()));
        }
        if support.contains(&f64::INFINITY) {
            return Ok(Self::empty(grid));
        }
        Ok(Self { grid, support, empty: false })
    }

    pub fn empty(grid: Arc<DirectionGrid>) -> Self {
        let support = vec![f64::INFINITY; grid.len()];
        Self { grid, support, empty: true }
    }

    /// All of `M`.
    pub fn whole_space(grid: Arc<DirectionGrid>) -> Self {
        let support = vec![f64::NEG_INFINITY; grid.len()];
        Self { grid, support, empty: false }
    }

    /// The grid representation of `{z ∈ M : u·z ≥ c}`.
    pub fn from_halfspace(u: &[f64], c: f64, grid: Arc<DirectionGrid>) -> Result<Self> {
        if u.len() != grid.m() {
            return Err(Error::Dimension(format!(
                "halfspace normal of length {} in ℝ^{}",
                u.len(),
                grid.m()
            )));
        }
        if u.iter().all(|&x| x == 0.0) {
            return Err(Error::InvalidConfig("halfspace normal is zero".into()));
        }
        let normal = [u.to_vec()];
        let support = grid
            .directions()
            .iter()
            .map(|v| polyhedral_support(&normal, &[c], v))
            .collect::<Result<Vec<_>>>()?;
        Self::from_support(grid, support)
    }

    /// `cl K_M` for members, `∅` otherwise.
    pub fn indicator(member: bool, grid: Arc<DirectionGrid>) -> Self {
        if member {
            let support = vec![0.0; grid.len()];
            Self { grid, support, empty: false }
        } else {
            Self::empty(grid)
        }
    }

    pub fn grid(&self) -> &Arc<DirectionGrid> {
        &self.grid
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    fn check_grid(&self, other: &UpperSet) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Support value in an arbitrary direction, by LP over the represented polyhedron.
    pub fn support_in(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.grid.m() {
            return Err(Error::Dimension(format!("direction of length {} in ℝ^{}", u.len(), self.grid.m())));
        }
        if self.empty {
            return Ok(f64::INFINITY);
        }
        polyhedral_support(self.grid.directions(), &self.support, u)
    }

    /// The tightest table describing the same polyhedron.
    pub fn canonicalize(&self) -> Result<Self> {
        if self.empty {
            return Ok(self.clone());
        }
        let support = self
            .grid
            .directions()
            .iter()
            .map(|v| polyhedral_support(self.grid.directions(), &self.support, v))
            .collect::<Result<Vec<_>>>()?;
        Self::from_support(self.grid.clone(), support)
    }

    /// True when no grid constraint can be tightened by more than `tol`,
    /// i.e. the table is consistent with a superadditive support function.
    pub fn is_canonical(&self, tol: f64) -> Result<bool> {
        let canon = self.canonicalize()?;
        Ok(canon.empty == self.empty
            && canon.support.iter().zip(&self.support).all(|(c, h)| c == h || c - h <= tol))
    }

    pub fn combine(&self, op: Combine, other: Option<&UpperSet>) -> Result<Self> {
        let need = |o: Option<&UpperSet>| -> Result<UpperSet> {
            let b = o.ok_or_else(|| Error::InvalidConfig(format!("{op:?} needs two operands")))?;
            self.check_grid(b)?;
            Ok(b.clone())
        };
        match op {
            Combine::Scale(lambda) => {
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(Error::InvalidConfig(format!("scale factor {lambda} must be positive")));
                }
                if self.empty {
                    return Ok(self.clone());
                }
                let support = self.support.iter().map(|h| lambda * h).collect();
                Self::from_support(self.grid.clone(), support)
            }
            Combine::MinkowskiSum => {
                let b = need(other)?;
                if self.empty || b.empty {
                    return Ok(Self::empty(self.grid.clone()));
                }
                let support = self.support.iter().zip(&b.support).map(|(x, y)| x + y).collect();
                Self::from_support(self.grid.clone(), support)
            }
            Combine::ConvexComb(lambda) => {
                if !(0.0..=1.0).contains(&lambda) {
                    return Err(Error::InvalidConfig(format!("weight {lambda} outside [0, 1]")));
                }
                let b = need(other)?;
                if self.empty || b.empty {
                    return Ok(Self::empty(self.grid.clone()));
                }
                let scaled = |w: f64, h: f64| if w == 0.0 { 0.0 } else { w * h };
                let support = self
                    .support
                    .iter()
                    .zip(&b.support)
                    .map(|(x, y)| scaled(lambda, *x) + scaled(1.0 - lambda, *y))
                    .collect();
                Self::from_support(self.grid.clone(), support)
            }
            Combine::Intersect => {
                let b = need(other)?;
                if self.empty || b.empty {
                    return Ok(Self::empty(self.grid.clone()));
                }
                let support = self.support.iter().zip(&b.support).map(|(x, y)| x.max(*y)).collect();
                Self::from_support(self.grid.clone(), support)?.canonicalize()
            }
        }
    }

    /// `self ⊇ other` at grid resolution: `h_self ≤ h_other + tol` everywhere.
    pub fn includes(&self, other: &UpperSet, tol: f64) -> Result<bool> {
        self.check_grid(other)?;
        if other.empty {
            return Ok(true);
        }
        if self.empty {
            return Ok(false);
        }
        Ok(self.support.iter().zip(&other.support).all(|(a, b)| a <= b || a - b <= tol))
    }

    /// Largest violation of `self ⊇ other` over the grid (≤ 0 when included).
    pub fn inclusion_gap(&self, other: &UpperSet) -> Result<f64> {
        self.check_grid(other)?;
        if other.empty {
            return Ok(f64::NEG_INFINITY);
        }
        if self.empty {
            return Ok(f64::INFINITY);
        }
        Ok(self
            .support
            .iter()
            .zip(&other.support)
            .map(|(a, b)| if a == b { 0.0 } else { a - b })
            .fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn contains_point(&self, z: &[f64], tol: f64) -> bool {
        !self.empty
            && self
                .grid
                .directions()
                .iter()
                .zip(&self.support)
                .all(|(u, h)| u.iter().zip(z).map(|(a, b)| a * b).sum::<f64>() >= h - tol)
    }

    pub fn to_json(&self) -> UpperSetJson {
        UpperSetJson {
            grid: self.grid.directions().to_vec(),
            support: self.support.iter().map(|&v| SupportValue::from(v)).collect(),
            empty: self.empty,
        }
    }

    pub fn from_json(json: &UpperSetJson) -> Result<Self> {
        let m = json.grid.first().map_or(0, Vec::len);
        let grid = DirectionGrid::from_directions(m, json.grid.clone())?;
        let support = json.support.iter().map(SupportValue::to_f64).collect::<Result<Vec<_>>>()?;
        let set = Self::from_support(Arc::new(grid), support)?;
        if set.empty != json.empty {
            return Err(Error::Parse("emptiness flag disagrees with support values".into()));
        }
        Ok(set)
    }
}

/// A support value on the wire: a number or `"-inf"` / `"+inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SupportValue {
    Finite(f64),
    Infinite(String),
}

impl From<f64> for SupportValue {
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            SupportValue::Infinite("+inf".into())
        } else if v == f64::NEG_INFINITY {
            SupportValue::Infinite("-inf".into())
        } else {
            SupportValue::Finite(v)
        }
    }
}

impl SupportValue {
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            SupportValue::Finite(v) => Ok(*v),
            SupportValue::Infinite(s) if s == "+inf" => Ok(f64::INFINITY),
            SupportValue::Infinite(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
            SupportValue::Infinite(s) => Err(Error::Parse(format!("bad support value {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperSetJson {
    pub grid: Vec<Vec<f64>>,
    pub support: Vec<SupportValue>,
    pub empty: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_grid() -> Arc<DirectionGrid> {
        let k = PolyhedralCone::orthant(1).unwrap();
        Arc::new(DirectionGrid::new(&k, DEFAULT_GRID_DENSITY).unwrap())
    }

    fn plane_grid(density: usize) -> Arc<DirectionGrid> {
        let k = PolyhedralCone::orthant(2).unwrap();
        Arc::new(DirectionGrid::new(&k, density).unwrap())
    }

    fn ray(lo: f64) -> UpperSet {
        UpperSet::from_support(line_grid(), vec![lo]).unwrap()
    }

    #[test]
    fn grids_cover_the_dual_cone() {
        assert_eq!(line_grid().directions(), &[vec![1.0]]);
        let g = plane_grid(64);
        assert_eq!(g.len(), 64);
        assert_eq!(g.generator_directions().len(), 2);
        assert!(g.lies_in(&PolyhedralCone::orthant(2).unwrap()));
        let k3 = PolyhedralCone::orthant(3).unwrap();
        let g3 = DirectionGrid::new(&k3, 64).unwrap();
        assert!(g3.len() <= 64 && g3.len() > 3);
        assert!(g3.lies_in(&k3));
        for d in g3.directions() {
            let norm: f64 = d.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_for_halfplane_dual() {
        use crate::cone::rvec;
        // K_M⁺ = {u : u₁ ≥ 0}, a half plane with lineality.
        let k = PolyhedralCone::from_normals(2, &[rvec(&[1, 0])]).unwrap();
        let g = DirectionGrid::new(&k, 16).unwrap();
        assert!(g.lies_in(&k));
        assert!(g.directions().iter().any(|d| close(d, &[1.0, 0.0])));
    }

    #[test]
    fn halfspace_representation() {
        let set = UpperSet::from_halfspace(&[1.0], 2.0, line_grid()).unwrap();
        assert_eq!(set.support(), &[2.0]);

        let g = plane_grid(8);
        let set = UpperSet::from_halfspace(&[1.0, 0.0], 0.0, g.clone()).unwrap();
        let e1 = g.directions().iter().position(|d| close(d, &[1.0, 0.0])).unwrap();
        let e2 = g.directions().iter().position(|d| close(d, &[0.0, 1.0])).unwrap();
        assert_eq!(set.support()[e1], 0.0);
        assert_eq!(set.support()[e2], f64::NEG_INFINITY);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let set = UpperSet::from_halfspace(&[s, s], 0.0, g).unwrap();
        assert_eq!(set.support()[e1], f64::NEG_INFINITY);

        assert!(UpperSet::from_halfspace(&[0.0], 1.0, line_grid()).is_err());
    }

    #[test]
    fn arithmetic_on_support_values() {
        let sum = ray(0.0).combine(Combine::MinkowskiSum, Some(&ray(2.0))).unwrap();
        assert_eq!(sum.support(), &[2.0]);
        let meet = ray(1.0).combine(Combine::Intersect, Some(&ray(3.0))).unwrap();
        assert_eq!(meet.support(), &[3.0]);
        let half = ray(4.0).combine(Combine::Scale(0.5), None).unwrap();
        assert_eq!(half.support(), &[2.0]);
        let mix = ray(4.0).combine(Combine::ConvexComb(0.25), Some(&ray(0.0))).unwrap();
        assert_eq!(mix.support(), &[1.0]);
        let none = UpperSet::empty(line_grid());
        assert!(ray(1.0).combine(Combine::MinkowskiSum, Some(&none)).unwrap().is_empty());
        assert!(ray(1.0).combine(Combine::ConvexComb(0.0), Some(&none)).unwrap().is_empty());
        assert!(ray(1.0).combine(Combine::Scale(0.0), None).is_err());
        assert!(ray(1.0).combine(Combine::ConvexComb(1.5), Some(&ray(0.0))).is_err());
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let a = UpperSet::indicator(true, plane_grid(8));
        let b = UpperSet::indicator(true, plane_grid(16));
        assert_eq!(a.includes(&b, 0.0), Err(Error::GridMismatch));
        assert!(a.combine(Combine::MinkowskiSum, Some(&b)).is_err());
    }

    #[test]
    fn inclusion() {
        assert!(ray(1.0).includes(&ray(2.0), 0.0).unwrap());
        assert!(!ray(2.0).includes(&ray(1.0), 0.0).unwrap());
        assert!(ray(2.0).includes(&ray(2.0), 0.0).unwrap());
        let none = UpperSet::empty(line_grid());
        assert!(ray(5.0).includes(&none, 0.0).unwrap());
        assert!(!none.includes(&ray(5.0), 0.0).unwrap());
        let all = UpperSet::whole_space(line_grid());
        assert!(all.includes(&ray(-3.0), 0.0).unwrap());
    }

    #[test]
    fn indicator_sets() {
        let k = UpperSet::indicator(true, line_grid());
        assert_eq!(k.support(), &[0.0]);
        assert!(UpperSet::indicator(false, line_grid()).is_empty());
        let g = plane_grid(32);
        assert!(UpperSet::indicator(true, g).support().iter().all(|&h| h == 0.0));
    }

    #[test]
    fn intersection_is_recanonicalized() {
        // {z₁ ≥ 1} ∩ {z₂ ≥ 2} has support u₁ + 2u₂ in every direction.
        let g = plane_grid(16);
        let a = UpperSet::from_halfspace(&[1.0, 0.0], 1.0, g.clone()).unwrap();
        let b = UpperSet::from_halfspace(&[0.0, 1.0], 2.0, g.clone()).unwrap();
        let meet = a.combine(Combine::Intersect, Some(&b)).unwrap();
        for (u, h) in g.directions().iter().zip(meet.support()) {
            assert!((h - (u[0] + 2.0 * u[1])).abs() < 1e-9);
        }
        assert!(meet.is_canonical(1e-9).unwrap());
        assert!(meet.contains_point(&[1.0, 2.0], 1e-9));
        assert!(meet.contains_point(&[3.0, 2.5], 1e-9));
        assert!(!meet.contains_point(&[0.5, 2.5], 1e-9));
        assert!((meet.support_in(&[2.0, 1.0]).unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn sum_with_the_cone_is_identity() {
        let g = plane_grid(16);
        let a = UpperSet::from_halfspace(&[1.0, 0.0], 1.0, g.clone())
            .unwrap()
            .combine(
                Combine::Intersect,
                Some(&UpperSet::from_halfspace(&[0.0, 1.0], -2.0, g.clone()).unwrap()),
            )
            .unwrap();
        let k = UpperSet::indicator(true, g);
        assert_eq!(a.combine(Combine::MinkowskiSum, Some(&k)).unwrap(), a);
    }

    #[test]
    fn json_roundtrip_with_infinities() {
        let g = plane_grid(8);
        let set = UpperSet::from_halfspace(&[1.0, 0.0], -1.5, g).unwrap();
        let text = serde_json::to_string(&set.to_json()).unwrap();
        assert!(text.contains("\"-inf\""));
        let back = UpperSet::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.support(), set.support());
        assert_eq!(back.grid().directions(), set.grid().directions());
        let empty = UpperSet::empty(line_grid());
        let text = serde_json::to_string(&empty.to_json()).unwrap();
        assert!(text.contains("\"+inf\""));
        assert!(UpperSet::from_json(&serde_json::from_str(&text).unwrap()).unwrap().is_empty());
    }
}
