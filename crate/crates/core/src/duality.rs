//! Dual pairs, conjugate penalties and the biconjugate reconstruction.
//!
//! A dual pair `(Y, u)` scores a position by the halfspace
//! `{z ∈ M : ⟨X, Y⟩ ≤ u·z}`. Its penalty is the conjugate
//! `β(Y, u) = inf_X [ h_{ϱ(X)}(u) − ⟨X, Y⟩ ]`, either a finite number or
//! `−∞` (the whole of `M`). Intersecting `{z : u·z ≥ β + ⟨X ∧ 0, Y⟩}` over
//! pairs rebuilds an outer approximation of `ϱ(X)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{ConeLiftMode, PolyhedralCone, SubspaceM};
use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::risk::{RiskConfig, RiskEvaluator};
use crate::upper_set::{polyhedral_support, DirectionGrid, UpperSet, INCLUSION_TOLERANCE};

use std::sync::Arc;

/// Why a matrix `Y` does not index a dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// `Y` has a positive entry.
    SignViolation,
    /// `−Y` is not in the dual of the lifted cone.
    NotInDualCone,
    /// The induced `u` vanishes on `M`.
    ZeroU,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::SignViolation => "Y has a positive entry",
            Rejection::NotInDualCone => "-Y is outside the dual of the lifted cone",
            Rejection::ZeroU => "u = -colsum(Y) vanishes on M",
        })
    }
}

/// An admissible `(Y, u)`. Only [`admissible_pair`] builds one, so `u`
/// always equals the `M`-part of `−Σ_h Y_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPair {
    y: DataMatrix,
    u: Vec<f64>,
}

impl DualPair {
    pub fn y(&self) -> &DataMatrix {
        &self.y
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// `⟨X, Y⟩`, the sum of entrywise products.
    pub fn pairing(&self, x: &DataMatrix) -> Result<f64> {
        x.inner(&self.y)
    }
}

/// Checks `Y` and derives `u`.
///
/// Columnwise lifting asks every column of `−Y` to lie in `K⁺`; constant
/// lifting asks `Y ≤ 0` entrywise and `−Σ_h Y_h ∈ K⁺`. Since `K⁺` sits inside
/// the nonnegative orthant, a positive entry is reported as a sign violation
/// in both modes.
pub fn admissible_pair(
    y: &DataMatrix,
    cone: &PolyhedralCone,
    subspace: &SubspaceM,
    mode: ConeLiftMode,
) -> Result<DualPair> {
    if y.d() != cone.dim() || subspace.d() != cone.dim() {
        return Err(Error::Dimension(format!("Y has {} rows, cone lives in ℝ^{}", y.d(), cone.dim())));
    }
    if y.values().iter().any(|&v| v > 0.0) {
        return Err(Error::Inadmissible(Rejection::SignViolation));
    }
    let neg = y.scale(-1.0);
    if !cone.lifted_dual_contains(mode, &neg)? {
        return Err(Error::Inadmissible(Rejection::NotInDualCone));
    }
    // The M-part of a vector of K⁺ is automatically in K_M⁺.
    let u: Vec<f64> = subspace.project(&neg.column_sums()).to_vec();
    if u.iter().all(|&v| v == 0.0) {
        return Err(Error::Inadmissible(Rejection::ZeroU));
    }
    Ok(DualPair { y: y.clone(), u })
}

/// The two outcomes of classifying a candidate `Y`.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Admissible(Vec<f64>),
    FullSpace(Rejection),
}

/// `FullSpace` exactly when [`admissible_pair`] rejects.
pub fn classify_candidate(
    y: &DataMatrix,
    cone: &PolyhedralCone,
    subspace: &SubspaceM,
    mode: ConeLiftMode,
) -> Result<Classification> {
    match admissible_pair(y, cone, subspace, mode) {
        Ok(pair) => Ok(Classification::Admissible(pair.u)),
        Err(Error::Inadmissible(r)) => Ok(Classification::FullSpace(r)),
        Err(e) => Err(e),
    }
}

/// `{z ∈ M : ⟨X, Y⟩ ≤ u·z}` on the grid.
pub fn support_halfspace(pair: &DualPair, x: &DataMatrix, grid: Arc<DirectionGrid>) -> Result<UpperSet> {
    UpperSet::from_halfspace(&pair.u, pair.pairing(x)?, grid)
}

/// The conjugate value of a pair: a finite `β` or the whole subspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "beta", rename_all = "snake_case")]
pub enum PenaltyValue {
    Finite(f64),
    FullSpace,
}

impl PenaltyValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            PenaltyValue::Finite(b) => Some(*b),
            PenaltyValue::FullSpace => None,
        }
    }
}

/// Where and how densely the conjugate infimum is searched.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchBox {
    /// Entries range over `[−radius, radius]`.
    pub radius: f64,
    /// Number of low-discrepancy points on top of the center, axis points and corners.
    pub samples: usize,
    /// Values below this count as a certificate of unboundedness.
    pub floor: f64,
    /// Extra points always evaluated, e.g. the position under study.
    pub anchors: Vec<DataMatrix>,
}

/// Corners are enumerated only up to this many data entries.
const MAX_CORNER_DIM: usize = 12;

impl SearchBox {
    pub fn new(radius: f64) -> Self {
        Self { radius, samples: 256, floor: -1e9, anchors: Vec::new() }
    }

    /// Box symmetric around 0 with radius four times the largest data entry
    /// (at least 4), anchored at `x` itself.
    pub fn around(x: &DataMatrix) -> Self {
        let scale = x.values().iter().fold(1.0_f64, |a, v| a.max(v.abs()));
        let mut search = Self::new(4.0 * scale);
        search.anchors.push(x.clone());
        search
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_anchor(mut self, x: DataMatrix) -> Self {
        self.anchors.push(x);
        self
    }

    fn points(&self, d: usize, blocks: &[usize]) -> Vec<Vec<f64>> {
        let len = d * blocks.iter().sum::<usize>();
        let r = self.radius;
        let mut points = vec![vec![0.0; len]];
        for a in &self.anchors {
            if a.d() == d && a.blocks() == blocks {
                points.push(a.values().to_vec());
            }
        }
        for k in 0..len {
            for s in [r, -r] {
                let mut p = vec![0.0; len];
                p[k] = s;
                points.push(p);
            }
        }
        if len <= MAX_CORNER_DIM {
            for mask in 0u32..(1 << len) {
                points.push((0..len).map(|k| if mask >> k & 1 == 1 { r } else { -r }).collect());
            }
        }
        let primes = first_primes(len);
        for i in 1..=self.samples {
            points.push(primes.iter().map(|&p| (2.0 * halton(i, p) - 1.0) * r).collect());
        }
        points
    }
}

fn first_primes(count: usize) -> Vec<usize> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2;
    while primes.len() < count {
        if primes.iter().all(|p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Radical inverse of `i` in base `b`.
fn halton(mut i: usize, b: usize) -> f64 {
    let mut f = 1.0;
    let mut out = 0.0;
    while i > 0 {
        f /= b as f64;
        out += f * (i % b) as f64;
        i /= b;
    }
    out
}

/// Conjugate value of an arbitrary candidate `Y`. Inadmissible candidates
/// return `FullSpace` without any search.
pub fn conjugate_support(
    risk: &dyn RiskEvaluator,
    y: &DataMatrix,
    search: &SearchBox,
) -> Result<PenaltyValue> {
    let cfg = risk.config();
    match admissible_pair(y, cfg.cone(), cfg.subspace(), cfg.mode()) {
        Ok(pair) => conjugate_of_pair(risk, &pair, search),
        Err(Error::Inadmissible(_)) => Ok(PenaltyValue::FullSpace),
        Err(e) => Err(e),
    }
}

/// `inf_X [ h_{ϱ(X)}(u) − ⟨X, Y⟩ ]` by deterministic sampling of the box.
///
/// When the best sample is negative the search follows its ray outward by
/// doubling; crossing the floor certifies `FullSpace`.
pub fn conjugate_of_pair(
    risk: &dyn RiskEvaluator,
    pair: &DualPair,
    search: &SearchBox,
) -> Result<PenaltyValue> {
    let d = pair.y.d();
    let blocks = pair.y.blocks().to_vec();
    let objective = |values: Vec<f64>| -> Result<f64> {
        let x = DataMatrix::new(d, blocks.clone(), values)?;
        Ok(risk.support(&x, &pair.u)? - pair.pairing(&x)?)
    };
    let points = search.points(d, &blocks);
    let values = points.par_iter().map(|p| objective(p.clone())).collect::<Result<Vec<_>>>()?;
    // Lowest value, earliest index on ties.
    let (best, mut value) =
        values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    if value == f64::NEG_INFINITY {
        return Ok(PenaltyValue::FullSpace);
    }
    let tol = INCLUSION_TOLERANCE;
    if value < -tol {
        let mut scale = 1.0;
        for _ in 0..64 {
            scale *= 2.0;
            let next = objective(points[best].iter().map(|v| v * scale).collect())?;
            if next >= value {
                break;
            }
            value = next;
            if value < search.floor {
                return Ok(PenaltyValue::FullSpace);
            }
        }
    }
    Ok(PenaltyValue::Finite(value))
}

/// `∩_k {z : u_k·z ≥ β_k + ⟨X ∧ 0, Y_k⟩}` on the evaluator's grid.
/// Pairs with a `FullSpace` penalty impose nothing; no pairs gives `M`.
pub fn biconjugate(
    risk: &dyn RiskEvaluator,
    x: &DataMatrix,
    pairs: &[DualPair],
    penalties: &[PenaltyValue],
) -> Result<UpperSet> {
    if pairs.len() != penalties.len() {
        return Err(Error::Dimension(format!("{} pairs but {} penalties", pairs.len(), penalties.len())));
    }
    let wedged = risk.config().wedge(x)?;
    let mut normals = Vec::new();
    let mut values = Vec::new();
    for (pair, penalty) in pairs.iter().zip(penalties) {
        if let PenaltyValue::Finite(beta) = penalty {
            normals.push(pair.u.clone());
            values.push(beta + pair.pairing(&wedged)?);
        }
    }
    let grid = risk.grid().clone();
    let support = grid
        .directions()
        .iter()
        .map(|v| polyhedral_support(&normals, &values, v))
        .collect::<Result<Vec<_>>>()?;
    UpperSet::from_support(grid, support)
}

/// `h_{ϱ(X∧0)}(u) − ⟨X ∧ 0, Y⟩ − β`; nonnegative up to tolerance by weak duality.
pub fn weak_duality_gap(risk: &dyn RiskEvaluator, x: &DataMatrix, pair: &DualPair, beta: f64) -> Result<f64> {
    let wedged = risk.config().wedge(x)?;
    Ok(risk.support(&wedged, &pair.u)? - pair.pairing(&wedged)? - beta)
}

/// Extreme points of `{q : 0 ≤ q_h ≤ w_h/α, Σ q_h = 1}`, the densities
/// AV@R at level `α` puts on observations with weights `w`.
///
/// Exponential in `n`; intended for small samples.
pub fn extreme_densities(weights: &[f64], alpha: f64) -> Vec<Vec<f64>> {
    let n = weights.len();
    let caps: Vec<f64> = weights.iter().map(|w| w / alpha).collect();
    let mut out: Vec<Vec<f64>> = Vec::new();
    // Every vertex has at most one coordinate strictly between its bounds.
    for free in (0..n).map(Some).chain(std::iter::once(None)) {
        let others: Vec<usize> = (0..n).filter(|&h| Some(h) != free).collect();
        for mask in 0u64..(1 << others.len()) {
            let mut q = vec![0.0; n];
            for (bit, &h) in others.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    q[h] = caps[h];
                }
            }
            let rest = 1.0 - q.iter().sum::<f64>();
            let ok = match free {
                Some(h) => {
                    q[h] = rest;
                    rest >= -1e-12 && rest <= caps[h] + 1e-12
                }
                None => rest.abs() <= 1e-12,
            };
            if ok {
                let q: Vec<f64> = q.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
                if !out.iter().any(|p| p.iter().zip(&q).all(|(a, b)| (a - b).abs() < 1e-12)) {
                    out.push(q);
                }
            }
        }
    }
    out
}

/// Random admissible pairs `Y = −w qᵀ` with `w` a random point of `K⁺`
/// and `q` a random extreme density of AV@R at the configured level.
pub fn sample_dual_pairs(cfg: &RiskConfig, x: &DataMatrix, count: usize, seed: u64) -> Result<Vec<DualPair>> {
    let weights = cfg.observation_weights(x)?;
    let caps: Vec<f64> = weights.iter().map(|w| w / cfg.alpha()).collect();
    let dual_generators = cfg.cone().dual().generators_f64().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(count);
    let mut attempts = 0;
    while pairs.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let mut w = vec![0.0; cfg.d()];
        for g in &dual_generators {
            let c: f64 = rng.gen();
            for (wi, gi) in w.iter_mut().zip(g) {
                *wi += c * gi;
            }
        }
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.shuffle(&mut rng);
        let mut q = vec![0.0; weights.len()];
        let mut left = 1.0_f64;
        for h in order {
            q[h] = caps[h].min(left);
            left -= q[h];
        }
        let values: Vec<f64> =
            (0..cfg.d()).flat_map(|i| q.iter().map(move |qh| (i, qh))).map(|(i, qh)| -w[i] * qh).collect();
        let y = DataMatrix::new(cfg.d(), x.blocks().to_vec(), values)?;
        match admissible_pair(&y, cfg.cone(), cfg.subspace(), cfg.mode()) {
            Ok(pair) => pairs.push(pair),
            Err(Error::Inadmissible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(pairs)
}

/// One line of a dual-check report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualCheckEntry {
    #[serde(rename = "Y")]
    pub y: Vec<Vec<f64>>,
    pub u: Vec<f64>,
    pub status: String,
    pub beta: Option<f64>,
    pub weak_duality_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualCheckReport {
    pub pairs: Vec<DualCheckEntry>,
    /// Smallest weak duality gap over finite pairs (should be ≥ −tolerance).
    pub min_weak_duality_gap: Option<f64>,
    /// Largest `h_bicon − h_primal` over the grid (≤ tolerance when the
    /// biconjugate contains the primal set).
    pub outer_bound_violation: f64,
    pub passed: bool,
}

/// Penalties, weak duality and the biconjugate outer bound for a pair sample.
pub fn dual_check(
    risk: &dyn RiskEvaluator,
    x: &DataMatrix,
    pairs: &[DualPair],
    search: &SearchBox,
    tolerance: f64,
) -> Result<DualCheckReport> {
    let wedged = risk.config().wedge(x)?;
    let search = search.clone().with_anchor(wedged);
    let mut entries = Vec::with_capacity(pairs.len());
    let mut penalties = Vec::with_capacity(pairs.len());
    let mut min_gap: Option<f64> = None;
    for pair in pairs {
        let penalty = conjugate_of_pair(risk, pair, &search)?;
        let gap = match penalty {
            PenaltyValue::Finite(beta) => Some(weak_duality_gap(risk, x, pair, beta)?),
            PenaltyValue::FullSpace => None,
        };
        if let Some(g) = gap {
            min_gap = Some(min_gap.map_or(g, |m| m.min(g)));
        }
        entries.push(DualCheckEntry {
            y: (0..pair.y.d()).map(|i| pair.y.row(i).to_vec()).collect(),
            u: pair.u.clone(),
            status: match penalty {
                PenaltyValue::Finite(_) => "finite".into(),
                PenaltyValue::FullSpace => "full_space".into(),
            },
            beta: penalty.finite(),
            weak_duality_gap: gap,
        });
        penalties.push(penalty);
    }
    let bicon = biconjugate(risk, x, pairs, &penalties)?;
    let primal = risk.evaluate(x)?;
    let violation = bicon.inclusion_gap(&primal)?;
    let violation = if violation.is_finite() {
        violation
    } else if violation > 0.0 {
        f64::MAX
    } else {
        0.0
    };
    let passed = min_gap.map_or(true, |g| g >= -tolerance) && violation <= tolerance;
    Ok(DualCheckReport {
        pairs: entries,
        min_weak_duality_gap: min_gap,
        outer_bound_violation: violation,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::rvec;
    use crate::risk::AvarLoss;

    fn line_cfg(alpha: f64) -> RiskConfig {
        let k = PolyhedralCone::orthant(1).unwrap();
        RiskConfig::new(alpha, k, 1, ConeLiftMode::Columnwise, None, 8).unwrap()
    }

    fn row(xs: &[f64]) -> DataMatrix {
        DataMatrix::single_block(vec![xs.to_vec()]).unwrap()
    }

    fn pair(y: &[f64]) -> Result<DualPair> {
        let cfg = line_cfg(0.5);
        admissible_pair(&row(y), cfg.cone(), cfg.subspace(), cfg.mode())
    }

    #[test]
    fn admissibility_examples() {
        assert_eq!(pair(&[-0.5, -0.5]).unwrap().u(), &[1.0]);
        assert_eq!(pair(&[0.5, -1.5]).unwrap_err(), Error::Inadmissible(Rejection::SignViolation));
        assert_eq!(pair(&[0.0, 0.0]).unwrap_err(), Error::Inadmissible(Rejection::ZeroU));
    }

    #[test]
    fn dual_cone_rejection_and_constant_mode() {
        let k = PolyhedralCone::from_normals(2, &[rvec(&[2, 1]), rvec(&[1, 2])]).unwrap();
        let m = SubspaceM::new(2, 2).unwrap();
        let y = DataMatrix::single_block(vec![vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        // Columns (−1, 0) and (0, −1) are not in −K⁺ = −cone{(2,1),(1,2)}.
        assert_eq!(
            admissible_pair(&y, &k, &m, ConeLiftMode::Columnwise).unwrap_err(),
            Error::Inadmissible(Rejection::NotInDualCone)
        );
        // Their sum (−1, −1) is.
        let p = admissible_pair(&y, &k, &m, ConeLiftMode::Constant).unwrap();
        assert_eq!(p.u(), &[1.0, 1.0]);
        // u only sees M.
        let m1 = SubspaceM::new(2, 1).unwrap();
        let y = DataMatrix::single_block(vec![vec![0.0], vec![-1.0]]).unwrap();
        let orthant = PolyhedralCone::orthant(2).unwrap();
        assert_eq!(
            admissible_pair(&y, &orthant, &m1, ConeLiftMode::Columnwise).unwrap_err(),
            Error::Inadmissible(Rejection::ZeroU)
        );
    }

    #[test]
    fn classification_mirrors_admissibility() {
        let cfg = line_cfg(0.5);
        let c = |y: &[f64]| classify_candidate(&row(y), cfg.cone(), cfg.subspace(), cfg.mode()).unwrap();
        assert_eq!(c(&[-0.5, -0.5]), Classification::Admissible(vec![1.0]));
        assert_eq!(c(&[0.1, -1.1]), Classification::FullSpace(Rejection::SignViolation));
        assert_eq!(c(&[0.0, 0.0]), Classification::FullSpace(Rejection::ZeroU));
    }

    #[test]
    fn halfspace_examples() {
        let grid = line_cfg(0.5).grid().clone();
        let p = pair(&[-1.0, 0.0]).unwrap();
        let s = support_halfspace(&p, &row(&[3.0, 4.0]), grid.clone()).unwrap();
        assert_eq!(s.support(), &[-3.0]);
        let s = support_halfspace(&p, &row(&[0.0, 0.0]), grid.clone()).unwrap();
        assert_eq!(s.support(), &[0.0]);
        let p = pair(&[-0.5, -0.5]).unwrap();
        let s = support_halfspace(&p, &row(&[-1.0, -3.0]), grid).unwrap();
        assert_eq!(s.support(), &[2.0]);
    }

    #[test]
    fn conjugate_examples() {
        let risk = AvarLoss::new(line_cfg(0.5));
        let search = SearchBox::new(4.0);
        let beta = conjugate_support(&risk, &row(&[-0.5, -0.5]), &search).unwrap();
        assert_eq!(beta, PenaltyValue::Finite(0.0));
        let beta = conjugate_support(&risk, &row(&[-1.0, 0.0, 0.0]), &search).unwrap();
        assert_eq!(beta, PenaltyValue::FullSpace);
        let beta = conjugate_support(&risk, &row(&[0.5, -1.5]), &search).unwrap();
        assert_eq!(beta, PenaltyValue::FullSpace);
    }

    #[test]
    fn biconjugate_recovers_the_maximal_loss() {
        let risk = AvarLoss::new(line_cfg(1.0 / 3.0));
        let x = row(&[-1.0, -2.0, -3.0]);
        let pairs: Vec<DualPair> = extreme_densities(&[1.0 / 3.0; 3], 1.0 / 3.0)
            .iter()
            .map(|q| {
                let y: Vec<f64> = q.iter().map(|v| -v).collect();
                let cfg = risk.config();
                admissible_pair(&row(&y), cfg.cone(), cfg.subspace(), cfg.mode()).unwrap()
            })
            .collect();
        assert_eq!(pairs.len(), 3);
        let search = SearchBox::around(&x);
        let penalties: Vec<PenaltyValue> =
            pairs.iter().map(|p| conjugate_of_pair(&risk, p, &search).unwrap()).collect();
        let bicon = biconjugate(&risk, &x, &pairs, &penalties).unwrap();
        assert!((bicon.support()[0] - 3.0).abs() < 1e-9);
        let none = biconjugate(&risk, &x, &[], &[]).unwrap();
        assert_eq!(none.support(), &[f64::NEG_INFINITY]);
        assert!(biconjugate(&risk, &x, &pairs, &penalties[..1]).is_err());
    }

    #[test]
    fn extreme_densities_of_capped_simplex() {
        // Caps 2/3 on three points: vertices are the six permutations of (2/3, 1/3, 0).
        let q = extreme_densities(&[1.0 / 3.0; 3], 0.5);
        assert_eq!(q.len(), 6);
        for v in &q {
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(v.iter().all(|&x| (-1e-12..=2.0 / 3.0 + 1e-12).contains(&x)));
        }
        assert_eq!(extreme_densities(&[0.25; 4], 1.0), vec![vec![0.25; 4]]);
    }

    #[test]
    fn dual_check_report() {
        let k = PolyhedralCone::orthant(2).unwrap();
        let cfg = RiskConfig::new(0.5, k, 2, ConeLiftMode::Columnwise, None, 16).unwrap();
        let risk = AvarLoss::new(cfg.clone());
        let x = DataMatrix::single_block(vec![vec![-1.0, 2.0, -3.0], vec![0.5, -2.0, 1.0]]).unwrap();
        let pairs = sample_dual_pairs(&cfg, &x, 8, 3).unwrap();
        assert_eq!(pairs.len(), 8);
        let report = dual_check(&risk, &x, &pairs, &SearchBox::around(&x).with_samples(64), 1e-6).unwrap();
        assert!(report.passed, "{report:?}");
        let json = serde_json::to_value(&report).unwrap();
        for key in ["Y", "u", "status", "beta", "weak_duality_gap"] {
            assert!(json["pairs"][0].get(key).is_some(), "missing {key}");
        }
    }
}
