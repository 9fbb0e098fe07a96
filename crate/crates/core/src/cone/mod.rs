//! Exact polyhedral cones and the orders they induce.
//!
//! A [`PolyhedralCone`] keeps both a generator list (V-representation) and a
//! facet-normal list (H-representation, `x ∈ K ⇔ a·x ≥ 0` for every normal
//! `a`). All arithmetic is exact over [`BigRational`]; floating point data
//! enters through [`PolyhedralCone::contains_f64`], which uses a filtered
//! predicate that falls back to exact arithmetic near the boundary.

mod dd;
mod json;

use std::cmp::Ordering;

use num::{BigRational, FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpProblem, LpStatus};

pub use dd::{dd_convert, dd_convert_with_cap, DEFAULT_DIMENSION_CAP};
pub use json::{format_rational, parse_rational, ConeJson};

pub type Rational = BigRational;
pub type Vector = Vec<Rational>;

/// Integer vector as exact rationals.
pub fn rvec(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Exact rational image of a float vector. Panics on non-finite input.
pub fn rational_from_f64(xs: &[f64]) -> Vector {
    xs.iter().map(|&x| Rational::from_f64(x).expect("finite value")).collect()
}

/// How a cone `K ⊆ ℝ^d` is lifted to the data space `ℝ^{d×n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeLiftMode {
    /// `{(z₁1ₙ, …, z_d1ₙ) : z ∈ K}`: every observation equals the same `z ∈ K`.
    Constant,
    /// Every observation column lies in `K`.
    #[default]
    Columnwise,
}

/// The coordinate subspace spanned by the first `m` of `d` instruments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceM {
    d: usize,
    m: usize,
}

impl SubspaceM {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if m == 0 || m > d {
            return Err(Error::InvalidConfig(format!(
                "subspace dimension m = {m} must satisfy 1 ≤ m ≤ d = {d}"
            )));
        }
        Ok(Self { d, m })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// First `m` coordinates.
    pub fn project<'a, T>(&self, x: &'a [T]) -> &'a [T] {
        &x[..self.m]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    dim: usize,
    generators: Vec<Vector>,
    normals: Vec<Vector>,
    normals_f64: Vec<Vec<f64>>,
    generators_f64: Vec<Vec<f64>>,
}

impl PolyhedralCone {
    fn assemble(dim: usize, generators: Vec<Vector>, normals: Vec<Vector>) -> Self {
        let to_f64 = |vs: &[Vector]| {
            vs.iter().map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect()
        };
        Self { dim, normals_f64: to_f64(&normals), generators_f64: to_f64(&generators), generators, normals }
    }

    /// The conic hull of `generators`. Redundant generators are dropped.
    pub fn from_generators(dim: usize, generators: &[Vector]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("cone of dimension 0".into()));
        }
        let normals = dd_convert(generators, dim)?;
        let generators = dd_convert(&normals, dim)?;
        Ok(Self::assemble(dim, generators, normals))
    }

    /// `{x : a·x ≥ 0 for every a in normals}`. Redundant normals are dropped.
    pub fn from_normals(dim: usize, normals: &[Vector]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("cone of dimension 0".into()));
        }
        let generators = dd_convert(normals, dim)?;
        let normals = dd_convert(&generators, dim)?;
        Ok(Self::assemble(dim, generators, normals))
    }

    /// `ℝ^d₊`.
    pub fn orthant(dim: usize) -> Result<Self> {
        let basis: Vec<Vector> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self::from_generators(dim, &basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn generators_f64(&self) -> &[Vec<f64>] {
        &self.generators_f64
    }

    pub fn normals_f64(&self) -> &[Vec<f64>] {
        &self.normals_f64
    }

    /// True for the trivial cone `{0}`.
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_orthant(&self) -> bool {
        Self::orthant(self.dim).map(|o| o == *self).unwrap_or(false)
    }

    /// `K⁺ = {u : u·v ≥ 0 for all v ∈ K}`. The facet normals of `K` generate
    /// `K⁺` and the generators of `K` are its facet normals.
    pub fn dual(&self) -> PolyhedralCone {
        Self::assemble(self.dim, self.normals.clone(), self.generators.clone())
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::Dimension(format!(
                "vector of length {len} against a cone in dimension {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// Exact membership through the facet normals.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        self.check_dim(x.len())?;
        Ok(self.normals.iter().all(|a| !dd::dot(a, x).is_negative()))
    }

    /// Exact membership as an LP feasibility question: is `x` a conic
    /// combination of the generators? Independent of the H-representation.
    pub fn contains_lp(&self, x: &[Rational]) -> Result<bool> {
        self.check_dim(x.len())?;
        if x.iter().all(|v| v.is_zero()) {
            return Ok(true);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        let k = self.generators.len();
        let mut lp = LpProblem::new(vec![Rational::zero(); k]);
        for j in 0..k {
            lp.set_nonnegative(j);
        }
        for i in 0..self.dim {
            let row = self.generators.iter().map(|g| g[i].clone()).collect();
            lp.push_eq(row, x[i].clone());
        }
        let out = solve_lp(&lp, 1.0)?;
        Ok(out.status() == LpStatus::Optimal)
    }

    /// Exact membership of a float vector. The float dot product decides
    /// whenever it clears its rounding error bound.
    pub fn contains_f64(&self, x: &[f64]) -> Result<bool> {
        self.check_dim(x.len())?;
        Ok(self
            .normals
            .iter()
            .zip(&self.normals_f64)
            .all(|(a, af)| exact_dot_sign(a, af, x) != Ordering::Less))
    }

    /// Membership of a float vector in the dual cone `K⁺`, exact.
    pub fn dual_contains_f64(&self, u: &[f64]) -> Result<bool> {
        self.check_dim(u.len())?;
        Ok(self
            .generators
            .iter()
            .zip(&self.generators_f64)
            .all(|(g, gf)| exact_dot_sign(g, gf, u) != Ordering::Less))
    }

    /// `a ≤_K b ⇔ b − a ∈ K`.
    pub fn leq(&self, a: &[Rational], b: &[Rational]) -> Result<bool> {
        self.check_dim(a.len())?;
        let diff: Vector = b.iter().zip(a).map(|(x, y)| x - y).collect();
        self.contains(&diff)
    }

    pub fn leq_f64(&self, a: &[f64], b: &[f64]) -> Result<bool> {
        self.check_dim(a.len())?;
        self.check_dim(b.len())?;
        let diff: Vector =
            rational_from_f64(b).into_iter().zip(rational_from_f64(a)).map(|(x, y)| x - y).collect();
        self.contains(&diff)
    }

    /// `self ⊆ other`, decided by LP on each generator of `self`.
    pub fn is_subset_of(&self, other: &PolyhedralCone) -> Result<bool> {
        for g in &self.generators {
            if !other.contains_lp(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mutual inclusion via LP.
    pub fn same_cone(&self, other: &PolyhedralCone) -> Result<bool> {
        Ok(self.dim == other.dim && self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Checks that the two stored descriptions describe one cone: every
    /// generator satisfies every normal, and the generators of the H-cone are
    /// conic combinations of the stored generators.
    pub fn check_representations(&self) -> Result<bool> {
        for g in &self.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        let h_cone = Self::assemble(self.dim, dd_convert(&self.normals, self.dim)?, Vec::new());
        h_cone.is_subset_of(&Self::assemble(self.dim, self.generators.clone(), Vec::new()))
    }

    /// `K_M = K ∩ M` as a cone in `ℝ^m` together with its dual inside `M`.
    pub fn restrict(&self, subspace: &SubspaceM) -> Result<(PolyhedralCone, PolyhedralCone)> {
        if subspace.d() != self.dim {
            return Err(Error::Dimension(format!(
                "subspace of ℝ^{} against a cone in ℝ^{}",
                subspace.d(),
                self.dim
            )));
        }
        let m = subspace.m();
        let sliced: Vec<Vector> = self.normals.iter().map(|a| a[..m].to_vec()).collect();
        let k_m = Self::from_normals(m, &sliced)?;
        if k_m.is_zero() {
            return Err(Error::DegenerateCone("K ∩ M = {0}, so normalization of ϱ(0) is vacuous".into()));
        }
        let k_m_plus = k_m.dual();
        Ok((k_m, k_m_plus))
    }

    /// Membership of a data matrix in the lifted cone `K1ₙ`.
    pub fn lift_contains(&self, mode: ConeLiftMode, x: &DataMatrix) -> Result<bool> {
        self.check_dim(x.d())?;
        match mode {
            ConeLiftMode::Columnwise => {
                for h in 0..x.n() {
                    if !self.contains_f64(&x.column(h))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            ConeLiftMode::Constant => {
                let first = x.column(0);
                let constant = (1..x.n()).all(|h| x.column(h) == first);
                Ok(constant && self.contains_f64(&first)?)
            }
        }
    }

    /// Membership of `Y` in the dual of the lifted cone.
    ///
    /// Constant mode: `Σ_h Y_h ∈ K⁺`. Columnwise mode: every `Y_h ∈ K⁺`.
    pub fn lifted_dual_contains(&self, mode: ConeLiftMode, y: &DataMatrix) -> Result<bool> {
        self.check_dim(y.d())?;
        match mode {
            ConeLiftMode::Constant => self.dual_contains_f64(&y.column_sums()),
            ConeLiftMode::Columnwise => {
                for h in 0..y.n() {
                    if !self.dual_contains_f64(&y.column(h))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Checks the standing assumptions on a regulator cone.
    pub fn validate_regulator(&self) -> Result<RegulatorConeReport> {
        let d = self.dim;
        let orthant = Self::orthant(d)?;
        let contains_orthant = orthant
            .generators()
            .iter()
            .map(|e| self.contains_lp(e))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        let mut normals = self.normals.clone();
        normals.extend(orthant.generators().iter().map(|e| e.iter().map(|x| -x).collect()));
        let meet = dd_convert(&normals, d)?;
        Ok(RegulatorConeReport {
            contains_orthant,
            meets_nonpositive_orthant_only_at_origin: meet.is_empty(),
        })
    }
}

/// Outcome of [`PolyhedralCone::validate_regulator`].
///
/// The second check asks for `K ∩ ℝ^d₋ = {0}`; an empty intersection is
/// impossible since both sets contain the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegulatorConeReport {
    pub contains_orthant: bool,
    pub meets_nonpositive_orthant_only_at_origin: bool,
}

impl RegulatorConeReport {
    pub fn passed(&self) -> bool {
        self.contains_orthant && self.meets_nonpositive_orthant_only_at_origin
    }
}

/// Sign of `a·x` for exact `a` and float `x`, exact.
pub(crate) fn exact_dot_sign(a: &[Rational], a_f64: &[f64], x: &[f64]) -> Ordering {
    let mut sum = 0.0_f64;
    let mut mag = 0.0_f64;
    let mut exact_floats = true;
    for (&ai, &xi) in a_f64.iter().zip(x) {
        let p = ai * xi;
        sum += p;
        mag += p.abs();
        exact_floats &= ai.is_finite() && ai.abs() < 9.0e15;
    }
    let bound = (a_f64.len() as f64 + 2.0) * f64::EPSILON * mag;
    if exact_floats && sum.is_finite() && sum.abs() > bound {
        return if sum > 0.0 { Ordering::Greater } else { Ordering::Less };
    }
    let exact = dd::dot(a, &rational_from_f64(x));
    exact.cmp(&Rational::zero())
}
