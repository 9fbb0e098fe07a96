//! Dense linear programming.
//!
//! Every scalarized computation in the crate (cone membership, support values,
//! the AV@R program) reduces to a small program of the form
//!
//! ```text
//! minimize c·x  subject to  a_i·x ≥ b_i,  e_k·x = v_k
//! ```
//!
//! solved by a two-phase tableau simplex with Bland's rule. The solver is
//! generic over [`LpScalar`] so the same code runs on `f64` (with a tolerance)
//! and on exact [`BigRational`](num::BigRational) values.

mod simplex;

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use simplex::solve_lp;

/// Default tolerance for floating point solves.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Pivot budget shared by both simplex phases.
pub const ITERATION_CAP: usize = 10_000;

/// Number types the simplex can pivot on.
pub trait LpScalar: Clone + fmt::Debug + PartialOrd + Num + Signed + Send + Sync {
    /// Sign of the value, treating `|self| <= tol` as zero. Exact types ignore `tol`.
    fn sign_tol(&self, tol: f64) -> Ordering;

    fn to_f64(&self) -> f64;

    /// True when the type carries no rounding error.
    fn is_exact() -> bool;
}

impl LpScalar for f64 {
    fn sign_tol(&self, tol: f64) -> Ordering {
        if *self > tol {
            Ordering::Greater
        } else if *self < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }
}

impl LpScalar for BigRational {
    fn sign_tol(&self, _tol: f64) -> Ordering {
        self.cmp(&BigRational::zero())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        true
    }
}

/// A linear constraint `normal·x (≥ or =) bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub normal: Vec<T>,
    pub bound: T,
}

/// `minimize objective·x` over inequality and equality constraints.
///
/// Variables are free unless flagged in `nonnegative`; the flag avoids the
/// free-variable split for sign-constrained variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem<T> {
    pub objective: Vec<T>,
    /// `normal·x ≥ bound`
    pub inequalities: Vec<Constraint<T>>,
    /// `normal·x = bound`
    pub equalities: Vec<Constraint<T>>,
    pub nonnegative: Vec<bool>,
}

impl<T: LpScalar> LpProblem<T> {
    pub fn new(objective: Vec<T>) -> Self {
        let n = objective.len();
        Self { objective, inequalities: Vec::new(), equalities: Vec::new(), nonnegative: vec![false; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn ge(mut self, normal: Vec<T>, bound: T) -> Self {
        self.inequalities.push(Constraint { normal, bound });
        self
    }

    pub fn eq(mut self, normal: Vec<T>, bound: T) -> Self {
        self.equalities.push(Constraint { normal, bound });
        self
    }

    pub fn push_ge(&mut self, normal: Vec<T>, bound: T) {
        self.inequalities.push(Constraint { normal, bound });
    }

    pub fn push_eq(&mut self, normal: Vec<T>, bound: T) {
        self.equalities.push(Constraint { normal, bound });
    }

    pub fn set_nonnegative(&mut self, var: usize) {
        self.nonnegative[var] = true;
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if n == 0 {
            return Err(LpError::Dimension("program has no variables".into()));
        }
        if self.nonnegative.len() != n {
            return Err(LpError::Dimension(format!(
                "nonnegativity flags have length {}, expected {n}",
                self.nonnegative.len()
            )));
        }
        for (kind, list) in [("inequality", &self.inequalities), ("equality", &self.equalities)] {
            for (i, c) in list.iter().enumerate() {
                if c.normal.len() != n {
                    return Err(LpError::Dimension(format!(
                        "{kind} {i} has {} coefficients, expected {n}",
                        c.normal.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Status of a solved program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Dual multipliers certifying an optimal value.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate<T> {
    /// One nonnegative multiplier per inequality.
    pub inequality: Vec<T>,
    /// One free multiplier per equality.
    pub equality: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal {
        x: Vec<T>,
        value: T,
        duals: DualCertificate<T>,
    },
    /// `ray` is a feasible recession direction with `objective·ray < 0`.
    Unbounded {
        ray: Vec<T>,
    },
    Infeasible,
}

impl<T> LpOutcome<T> {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
            LpOutcome::Infeasible => LpStatus::Infeasible,
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn optimizer(&self) -> Option<&[T]> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Dimension(String),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("numerically indeterminate: iteration cap of {0} pivots reached")]
    IterationCap(usize),
    #[error("numerically indeterminate: {0}")]
    Indeterminate(String),
}

/// Inner product of two equal-length slices.
pub(crate) fn dot<T: LpScalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
