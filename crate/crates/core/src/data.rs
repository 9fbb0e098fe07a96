//! Portfolio data matrices `X ∈ ℝ^{d×n}` with scenario blocks.
//!
//! Row `i` holds instrument `i`; columns are observations, grouped into `l`
//! consecutive scenario blocks of sizes `n_1, …, n_l`. Indices are zero-based
//! throughout the API: observation `(j, h)` is the `h`-th column of block `j`.

use serde::{Deserialize, Serialize};

use crate::cone::{ConeLiftMode, PolyhedralCone};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataMatrix {
    d: usize,
    blocks: Vec<usize>,
    /// Row-major, `d × n`.
    values: Vec<f64>,
}

impl DataMatrix {
    pub fn new(d: usize, blocks: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dimension("data matrix needs at least one instrument".into()));
        }
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Dimension(format!("scenario blocks must be nonempty, got {blocks:?}")));
        }
        let n: usize = blocks.iter().sum();
        if values.len() != d * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {d}×{n} matrix, got {}",
                d * n,
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Dimension(format!("non-finite entry {bad}")));
        }
        Ok(Self { d, blocks, values })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>, blocks: Vec<usize>) -> Result<Self> {
        let d = rows.len();
        let n: usize = blocks.iter().sum();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!("row of length {} but blocks sum to {n}", r.len())));
        }
        Self::new(d, blocks, rows.concat())
    }

    /// All observations in one scenario.
    pub fn single_block(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        Self::from_rows(rows, vec![n])
    }

    pub fn zeros(d: usize, blocks: Vec<usize>) -> Result<Self> {
        let n: usize = blocks.iter().sum();
        Self::new(d, blocks, vec![0.0; d * n])
    }

    /// Same shape as `self`, fresh entries.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.d, self.blocks.clone(), values)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.values.len() / self.d
    }

    pub fn l(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, instrument: usize, column: usize) -> f64 {
        self.values[instrument * self.n() + column]
    }

    pub fn row(&self, instrument: usize) -> &[f64] {
        let n = self.n();
        &self.values[instrument * n..(instrument + 1) * n]
    }

    pub fn column(&self, column: usize) -> Vec<f64> {
        let n = self.n();
        (0..self.d).map(|i| self.values[i * n + column]).collect()
    }

    /// Column index of observation `h` in scenario `j`.
    pub fn column_index(&self, j: usize, h: usize) -> Result<usize> {
        if j >= self.blocks.len() {
            return Err(Error::IndexOutOfRange(format!("scenario {j} of {}", self.blocks.len())));
        }
        if h >= self.blocks[j] {
            return Err(Error::IndexOutOfRange(format!(
                "observation {h} of {} in scenario {j}",
                self.blocks[j]
            )));
        }
        Ok(self.blocks[..j].iter().sum::<usize>() + h)
    }

    /// The cross-instrument observation `X^j_h ∈ ℝ^d`.
    pub fn observation(&self, j: usize, h: usize) -> Result<Vec<f64>> {
        Ok(self.column(self.column_index(j, h)?))
    }

    /// `Σ_h X_h ∈ ℝ^d`.
    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.d).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Entries in instrument-major order: all of `X_1` (scenario by scenario),
    /// then `X_2`, and so on.
    pub fn flatten(&self) -> Vec<f64> {
        self.values.clone()
    }

    pub fn unflatten(d: usize, blocks: Vec<usize>, flat: Vec<f64>) -> Result<Self> {
        Self::new(d, blocks, flat)
    }

    pub fn same_shape(&self, other: &DataMatrix) -> bool {
        self.d == other.d && self.blocks == other.blocks
    }

    fn check_shape(&self, other: &DataMatrix) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::Dimension(format!(
                "{}×{:?} against {}×{:?}",
                self.d, self.blocks, other.d, other.blocks
            )));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn add(&self, other: &DataMatrix) -> Result<DataMatrix> {
        self.check_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        self.with_values(values)
    }

    pub fn sub(&self, other: &DataMatrix) -> Result<DataMatrix> {
        self.check_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        self.with_values(values)
    }

    pub fn scale(&self, lambda: f64) -> DataMatrix {
        Self {
            d: self.d,
            blocks: self.blocks.clone(),
            values: self.values.iter().map(|v| lambda * v).collect(),
        }
    }

    /// `λ·self + (1 − λ)·other`.
    pub fn convex_combination(&self, lambda: f64, other: &DataMatrix) -> Result<DataMatrix> {
        self.check_shape(other)?;
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect();
        self.with_values(values)
    }

    /// `X + z1ₙ`: adds `z ∈ ℝ^d` to every observation.
    pub fn translate(&self, z: &[f64]) -> Result<DataMatrix> {
        if z.len() != self.d {
            return Err(Error::Dimension(format!("translation of length {} for d = {}", z.len(), self.d)));
        }
        let n = self.n();
        let values = self.values.iter().enumerate().map(|(k, v)| v + z[k / n]).collect();
        self.with_values(values)
    }

    /// `⟨X, Y⟩ = Σ_{i,h} x_{i,h} y_{i,h}`.
    pub fn inner(&self, other: &DataMatrix) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum())
    }
}

/// `X ∧_{K1ₙ} 0`: the zero matrix when `X` lies in the lifted cone, otherwise
/// `X` itself. All-or-nothing, not an entrywise minimum.
pub fn wedge_zero(x: &DataMatrix, cone: &PolyhedralCone, mode: ConeLiftMode) -> Result<DataMatrix> {
    if cone.lift_contains(mode, x)? {
        DataMatrix::zeros(x.d(), x.blocks.clone())
    } else {
        Ok(x.clone())
    }
}

/// Scenario probabilities; observations within a scenario share its weight
/// equally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioWeights {
    per_scenario: Vec<f64>,
}

impl ScenarioWeights {
    pub fn new(per_scenario: Vec<f64>) -> Result<Self> {
        if per_scenario.is_empty() {
            return Err(Error::InvalidConfig("no scenario weights".into()));
        }
        if per_scenario.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidConfig(format!(
                "scenario weights must be nonnegative, got {per_scenario:?}"
            )));
        }
        let total: f64 = per_scenario.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!("scenario weights sum to {total}, expected 1")));
        }
        Ok(Self { per_scenario })
    }

    /// Weight `n_j / n` per scenario, i.e. `1/n` per observation.
    pub fn uniform(blocks: &[usize]) -> Self {
        let n: usize = blocks.iter().sum();
        Self { per_scenario: blocks.iter().map(|&b| b as f64 / n as f64).collect() }
    }

    pub fn per_scenario(&self) -> &[f64] {
        &self.per_scenario
    }

    /// One weight per column of a matrix with the given blocks.
    pub fn observation_weights(&self, blocks: &[usize]) -> Result<Vec<f64>> {
        if blocks.len() != self.per_scenario.len() {
            return Err(Error::Dimension(format!(
                "{} scenario weights for {} scenarios",
                self.per_scenario.len(),
                blocks.len()
            )));
        }
        Ok(blocks
            .iter()
            .zip(&self.per_scenario)
            .flat_map(|(&b, &w)| std::iter::repeat(w / b as f64).take(b))
            .collect())
    }
}
