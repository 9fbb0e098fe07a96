use std::path::{Path, PathBuf};

use regrisk::cone::ConeJson;
use regrisk::{ConeLiftMode, PolyhedralCone, RiskConfig, ScenarioWeights};
use serde::Deserialize;

use crate::CliError;

/// A named cone or an explicit one.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ConeSpec {
    Preset(String),
    Explicit(ConeJson),
}

fn default_m() -> usize {
    1
}

fn default_density() -> usize {
    regrisk::upper_set::DEFAULT_GRID_DENSITY
}

fn default_dual_samples() -> usize {
    16
}

fn default_trials() -> usize {
    200
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub cone: ConeSpec,
    /// Ambient dimension for the `"orthant"` preset when no data is given.
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub lift_mode: ConeLiftMode,
    #[serde(default)]
    pub scenario_weights: Option<Vec<f64>>,
    #[serde(default = "default_density")]
    pub grid_density: usize,
    #[serde(default = "default_dual_samples")]
    pub dual_samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Subspace dimension for `flatten-avar`; defaults to `m·n`.
    #[serde(default)]
    pub m_flat: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}:{}:{}: {}", path.display(), e.line(), e.column(), e)))
    }

    /// The configured cone in dimension `d` (from the data when present).
    pub fn cone(&self, d: Option<usize>) -> Result<PolyhedralCone, CliError> {
        match &self.cone {
            ConeSpec::Preset(name) if name == "orthant" => {
                let dim = d.or(self.d).ok_or_else(|| {
                    CliError::Validation("the orthant preset needs \"d\" or a data file".into())
                })?;
                Ok(PolyhedralCone::orthant(dim)?)
            }
            ConeSpec::Preset(name) => Err(CliError::Validation(format!("unknown cone preset {name:?}"))),
            ConeSpec::Explicit(json) => {
                let cone = PolyhedralCone::from_json(json)?;
                if let Some(d) = d {
                    if cone.dim() != d {
                        return Err(CliError::Validation(format!(
                            "cone lives in ℝ^{} but the data has {d} instruments",
                            cone.dim()
                        )));
                    }
                }
                Ok(cone)
            }
        }
    }

    pub fn alpha(&self) -> Result<f64, CliError> {
        self.alpha.ok_or_else(|| CliError::Validation("\"alpha\" is required for this command".into()))
    }

    pub fn risk_config(&self, cone: PolyhedralCone, m: usize) -> Result<RiskConfig, CliError> {
        let weights = match &self.scenario_weights {
            Some(w) => Some(ScenarioWeights::new(w.clone())?),
            None => None,
        };
        Ok(RiskConfig::new(self.alpha()?, cone, m, self.lift_mode, weights, self.grid_density)?)
    }
}
