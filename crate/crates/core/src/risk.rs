//! Set-valued risk statistics evaluated on data matrices.
//!
//! The main evaluator is [`AvarLoss`], the regulator-based average value at
//! risk. With `L = −(X ∧ 0)` restricted to the first `m` instruments it
//! scalarizes as
//!
//! ```text
//! h(u) = inf_{z ∈ ℝ^m}  u·( (1/α) Σ_h w_h (L_h + z)⁺ − z )
//! ```
//!
//! The program separates by coordinate, so its value is `u·c` where `c` is
//! the vector of per-instrument CVaR values of the losses. The risk set is
//! `(c + K_M) ∩ K_M`; the intersection with `K_M` keeps every value inside
//! the cone of acceptable deposits.

use std::sync::Arc;

use rayon::prelude::*;

use crate::axioms::{Axiom, Claims};
use crate::cone::{ConeLiftMode, PolyhedralCone, SubspaceM};
use crate::data::{wedge_zero, DataMatrix, ScenarioWeights};
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpOutcome, LpProblem, DEFAULT_TOLERANCE};
use crate::upper_set::{in_cone_f64, polyhedral_support, DirectionGrid, UpperSet};

/// Everything an evaluator needs besides the data.
#[derive(Debug, Clone)]
pub struct RiskConfig {
    alpha: f64,
    cone: PolyhedralCone,
    subspace: SubspaceM,
    mode: ConeLiftMode,
    weights: Option<ScenarioWeights>,
    k_m: PolyhedralCone,
    k_m_plus: PolyhedralCone,
    grid: Arc<DirectionGrid>,
}

impl RiskConfig {
    /// `alpha` may equal 1 (the plain expected loss). Weights default to
    /// uniform over observations when `None`.
    pub fn new(
        alpha: f64,
        cone: PolyhedralCone,
        m: usize,
        mode: ConeLiftMode,
        weights: Option<ScenarioWeights>,
        grid_density: usize,
    ) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        let report = cone.validate_regulator()?;
        if !report.passed() {
            return Err(Error::InvalidConfig(format!("cone is not a regulator cone: {report:?}")));
        }
        let subspace = SubspaceM::new(cone.dim(), m)?;
        let (k_m, k_m_plus) = cone.restrict(&subspace)?;
        let grid = Arc::new(DirectionGrid::new(&k_m_plus, grid_density)?);
        Ok(Self { alpha, cone, subspace, mode, weights, k_m, k_m_plus, grid })
    }

    /// Same cone, subspace and grid with a different level.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        Ok(Self { alpha, ..self.clone() })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cone(&self) -> &PolyhedralCone {
        &self.cone
    }

    pub fn subspace(&self) -> &SubspaceM {
        &self.subspace
    }

    pub fn d(&self) -> usize {
        self.subspace.d()
    }

    pub fn m(&self) -> usize {
        self.subspace.m()
    }

    pub fn mode(&self) -> ConeLiftMode {
        self.mode
    }

    pub fn weights(&self) -> Option<&ScenarioWeights> {
        self.weights.as_ref()
    }

    /// `K ∩ M` as a cone in `ℝ^m`.
    pub fn k_m(&self) -> &PolyhedralCone {
        &self.k_m
    }

    pub fn k_m_plus(&self) -> &PolyhedralCone {
        &self.k_m_plus
    }

    pub fn grid(&self) -> &Arc<DirectionGrid> {
        &self.grid
    }

    pub fn observation_weights(&self, x: &DataMatrix) -> Result<Vec<f64>> {
        match &self.weights {
            Some(w) => w.observation_weights(x.blocks()),
            None => ScenarioWeights::uniform(x.blocks()).observation_weights(x.blocks()),
        }
    }

    pub fn wedge(&self, x: &DataMatrix) -> Result<DataMatrix> {
        wedge_zero(x, &self.cone, self.mode)
    }

    pub fn lift_contains(&self, x: &DataMatrix) -> Result<bool> {
        self.cone.lift_contains(self.mode, x)
    }

    fn check_data(&self, x: &DataMatrix) -> Result<()> {
        if x.d() != self.d() {
            return Err(Error::Dimension(format!(
                "data has {} instruments, configuration expects {}",
                x.d(),
                self.d()
            )));
        }
        Ok(())
    }

    fn check_direction(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.m() {
            return Err(Error::Dimension(format!("direction of length {} in ℝ^{}", u.len(), self.m())));
        }
        if u.iter().all(|&x| x == 0.0) || !in_cone_f64(&self.k_m_plus, u) {
            return Err(Error::InvalidConfig(format!("direction {u:?} is not a nonzero element of K_M⁺")));
        }
        Ok(())
    }
}

/// A map from data matrices to upper sets on a fixed grid.
pub trait RiskEvaluator: Sync {
    fn name(&self) -> &str;

    fn config(&self) -> &RiskConfig;

    fn grid(&self) -> &Arc<DirectionGrid> {
        self.config().grid()
    }

    fn evaluate(&self, x: &DataMatrix) -> Result<UpperSet>;

    /// Support value of `evaluate(x)` in an arbitrary direction of `K_M⁺`.
    fn support(&self, x: &DataMatrix, u: &[f64]) -> Result<f64> {
        self.evaluate(x)?.support_in(u)
    }

    /// Which properties the evaluator asserts, and which it is known to violate.
    fn claims(&self) -> Claims;
}

/// The regulator-based average value at risk.
#[derive(Debug, Clone)]
pub struct AvarLoss {
    cfg: RiskConfig,
}

impl AvarLoss {
    pub fn new(cfg: RiskConfig) -> Self {
        Self { cfg }
    }

    /// Per-instrument CVaR of the losses `−(X ∧ 0)` on the first `m` rows,
    /// one LP per instrument.
    pub fn cvar_vector(&self, x: &DataMatrix) -> Result<Vec<f64>> {
        let (losses, weights) = self.losses(x)?;
        losses.iter().map(|row| cvar_lp(row, &weights, self.cfg.alpha)).collect()
    }

    fn losses(&self, x: &DataMatrix) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
        self.cfg.check_data(x)?;
        let weights = self.cfg.observation_weights(x)?;
        let wedged = self.cfg.wedge(x)?;
        let losses = (0..self.cfg.m()).map(|i| wedged.row(i).iter().map(|v| -v).collect()).collect();
        Ok((losses, weights))
    }

    /// The scalarized program in direction `u`, solved as a single LP over
    /// `z ∈ ℝ^m` and `t_h ∈ ℝ^m₊`. Returns `−∞` if the program is unbounded.
    pub fn scalar_support(&self, x: &DataMatrix, u: &[f64]) -> Result<f64> {
        self.cfg.check_direction(u)?;
        let (losses, weights) = self.losses(x)?;
        let m = self.cfg.m();
        let n = weights.len();
        let alpha = self.cfg.alpha;
        // Variables: z_0..z_{m-1}, then t_{h,i} at m + h·m + i.
        let mut objective = vec![0.0; m + n * m];
        for i in 0..m {
            objective[i] = -u[i];
            for h in 0..n {
                objective[m + h * m + i] = u[i] * weights[h] / alpha;
            }
        }
        let mut lp = LpProblem::new(objective);
        for h in 0..n {
            for i in 0..m {
                let mut row = vec![0.0; m + n * m];
                row[i] = -1.0;
                row[m + h * m + i] = 1.0;
                lp.push_ge(row, losses[i][h]);
                lp.set_nonnegative(m + h * m + i);
            }
        }
        match solve_lp(&lp, DEFAULT_TOLERANCE)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Unbounded { .. } => Ok(f64::NEG_INFINITY),
            LpOutcome::Infeasible => Err(Error::Evaluation("scalarized program is infeasible".into())),
        }
    }

    fn set_constraints(&self, c: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
        let normals = self.cfg.k_m.normals_f64();
        let mut dirs = Vec::with_capacity(2 * normals.len());
        let mut values = Vec::with_capacity(2 * normals.len());
        for a in normals {
            dirs.push(a.clone());
            values.push(a.iter().zip(c).map(|(x, y)| x * y).sum());
            dirs.push(a.clone());
            values.push(0.0);
        }
        (dirs, values)
    }

    fn checked_cvar(&self, x: &DataMatrix) -> Result<Vec<f64>> {
        let c = self.cvar_vector(x)?;
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::Evaluation(format!(
                "unbounded scalarization (cvar vector {c:?}); check the cone and alpha"
            )));
        }
        Ok(c)
    }
}

/// `inf_z (1/α) Σ_h w_h (L_h + z)⁺ − z` as an LP in `z` and `t ≥ 0`.
fn cvar_lp(losses: &[f64], weights: &[f64], alpha: f64) -> Result<f64> {
    let n = losses.len();
    let mut objective = vec![-1.0];
    objective.extend(weights.iter().map(|w| w / alpha));
    let mut lp = LpProblem::new(objective);
    for h in 0..n {
        let mut row = vec![0.0; n + 1];
        row[0] = -1.0;
        row[h + 1] = 1.0;
        lp.push_ge(row, losses[h]);
        lp.set_nonnegative(h + 1);
    }
    match solve_lp(&lp, DEFAULT_TOLERANCE)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Unbounded { .. } => Ok(f64::NEG_INFINITY),
        LpOutcome::Infeasible => Err(Error::Evaluation("cvar program is infeasible".into())),
    }
}

impl RiskEvaluator for AvarLoss {
    fn name(&self) -> &str {
        "avar-loss"
    }

    fn config(&self) -> &RiskConfig {
        &self.cfg
    }

    fn evaluate(&self, x: &DataMatrix) -> Result<UpperSet> {
        let c = self.checked_cvar(x)?;
        let (dirs, values) = self.set_constraints(&c);
        let support = self
            .cfg
            .grid
            .directions()
            .par_iter()
            .map(|v| polyhedral_support(&dirs, &values, v))
            .collect::<Result<Vec<_>>>()?;
        UpperSet::from_support(self.cfg.grid.clone(), support)
    }

    fn support(&self, x: &DataMatrix, u: &[f64]) -> Result<f64> {
        self.cfg.check_direction(u)?;
        let c = self.checked_cvar(x)?;
        let (dirs, values) = self.set_constraints(&c);
        polyhedral_support(&dirs, &values, u)
    }

    fn claims(&self) -> Claims {
        Claims::new(
            &[
                Axiom::P0,
                Axiom::P1,
                Axiom::P2,
                Axiom::P3,
                Axiom::P4,
                Axiom::A0,
                Axiom::A1,
                Axiom::A3,
                Axiom::A4,
                Axiom::A5,
                Axiom::CashSubadditivity,
            ],
            &[Axiom::A2],
        )
    }
}

/// Scalarized AV@R in direction `u`, without the final intersection with `K_M`.
pub fn avar_scalar_support(x: &DataMatrix, cfg: &RiskConfig, u: &[f64]) -> Result<f64> {
    AvarLoss::new(cfg.clone()).scalar_support(x, u)
}

pub fn avar_loss(x: &DataMatrix, cfg: &RiskConfig) -> Result<UpperSet> {
    AvarLoss::new(cfg.clone()).evaluate(x)
}

/// The same statistic on a single observation of `d·n` stacked entries.
/// `cfg_tilde` lives in `ℝ^{d·n}`; the wedge is taken against its cone.
pub fn evaluate_flattened(x: &[f64], cfg_tilde: &RiskConfig) -> Result<UpperSet> {
    avar_loss(&flattened_matrix(x)?, cfg_tilde)
}

/// A flattened vector as a one-column data matrix.
pub fn flattened_matrix(x: &[f64]) -> Result<DataMatrix> {
    DataMatrix::new(x.len(), vec![1], x.to_vec())
}

/// Classical translative AV@R: `c(X) + K_M` with no wedge and no floor.
///
/// Not regulator-based; useful as a contrast for the axiom harness.
#[derive(Debug, Clone)]
pub struct TranslativeAvar {
    cfg: RiskConfig,
}

impl TranslativeAvar {
    pub fn new(cfg: RiskConfig) -> Self {
        Self { cfg }
    }

    fn cvar_vector(&self, x: &DataMatrix) -> Result<Vec<f64>> {
        self.cfg.check_data(x)?;
        let weights = self.cfg.observation_weights(x)?;
        (0..self.cfg.m())
            .map(|i| {
                let losses: Vec<f64> = x.row(i).iter().map(|v| -v).collect();
                cvar_lp(&losses, &weights, self.cfg.alpha)
            })
            .collect()
    }
}

impl RiskEvaluator for TranslativeAvar {
    fn name(&self) -> &str {
        "translative-avar"
    }

    fn config(&self) -> &RiskConfig {
        &self.cfg
    }

    fn evaluate(&self, x: &DataMatrix) -> Result<UpperSet> {
        let c = self.cvar_vector(x)?;
        let dirs = self.cfg.k_m.normals_f64().to_vec();
        let values: Vec<f64> = dirs.iter().map(|a| a.iter().zip(&c).map(|(p, q)| p * q).sum()).collect();
        let support = self
            .cfg
            .grid
            .directions()
            .iter()
            .map(|v| polyhedral_support(&dirs, &values, v))
            .collect::<Result<Vec<_>>>()?;
        UpperSet::from_support(self.cfg.grid.clone(), support)
    }

    fn claims(&self) -> Claims {
        Claims::new(&[Axiom::A0, Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5], &[Axiom::P3])
    }
}

/// The constant map `X ↦ K_M`. Every `z ∈ K_M` already lies in `K_M`, so
/// cash cover holds trivially; translation is what it ignores.
#[derive(Debug, Clone)]
pub struct ConstantCone {
    cfg: RiskConfig,
}

impl ConstantCone {
    pub fn new(cfg: RiskConfig) -> Self {
        Self { cfg }
    }
}

impl RiskEvaluator for ConstantCone {
    fn name(&self) -> &str {
        "constant-cone"
    }

    fn config(&self) -> &RiskConfig {
        &self.cfg
    }

    fn evaluate(&self, x: &DataMatrix) -> Result<UpperSet> {
        self.cfg.check_data(x)?;
        Ok(UpperSet::indicator(true, self.cfg.grid.clone()))
    }

    fn claims(&self) -> Claims {
        Claims::new(
            &[
                Axiom::P0,
                Axiom::P1,
                Axiom::P2,
                Axiom::P3,
                Axiom::P4,
                Axiom::A0,
                Axiom::A1,
                Axiom::A3,
                Axiom::A4,
                Axiom::A5,
            ],
            &[Axiom::A2],
        )
    }
}
