//! Set-valued risk statistics for multi-asset portfolios observed as
//! scenario data.
//!
//! A position is a `d × n` [`DataMatrix`] of instrument values across
//! observations. A risk statistic maps it to an upper set of deposits in the
//! first `m` instruments, represented by support values on a grid of
//! directions ([`UpperSet`]). The crate provides exact polyhedral cones, a
//! small simplex solver, the regulator-based AV@R, conjugate duality tools
//! and a randomized axiom harness.

pub mod axioms;
pub mod cone;
pub mod data;
pub mod duality;
pub mod error;
pub mod lp;
pub mod risk;
pub mod upper_set;

pub use axioms::{check_axioms, check_cash_subadditivity, Axiom, AxiomReport, HarnessOptions, Verdict};
pub use cone::{ConeLiftMode, PolyhedralCone, SubspaceM};
pub use data::{wedge_zero, DataMatrix, ScenarioWeights};
pub use duality::{
    admissible_pair, biconjugate, classify_candidate, conjugate_support, DualPair, PenaltyValue, SearchBox,
};
pub use error::{Error, Result};
pub use risk::{avar_loss, avar_scalar_support, evaluate_flattened, AvarLoss, RiskConfig, RiskEvaluator};
pub use upper_set::{Combine, DirectionGrid, UpperSet};
