//! Candidate quotients, their verification, and recalibration.

mod candidate;
mod recalibrate;
mod solve;
mod verify;

pub use candidate::{Candidate, Failure, FailureKind};
pub use recalibrate::{
    expand, expansion_subsets, recalibrate, CyclicSchedule, Expansion, RecalibrationPolicy, Recalibrated,
};
pub use solve::{solve_closed_set, solve_with, QuotientSolution, Solver, SolverConfig, Step, TraceEvent};
pub use verify::{
    least_failure, n_verify, n_verify_exhaustive, p_verify, verify, NVerification, SearchLimits, TransitionAlgebra,
    TransitionRecord,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::games::GameError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{what} budget of {limit} exceeded{}", frontier.as_ref().map(|f| format!(" at {f}")).unwrap_or_default())]
    Budget {
        what: &'static str,
        limit: usize,
        frontier: Option<String>,
    },
    #[error("time limit exceeded{}", frontier.as_ref().map(|f| format!(" at {f}")).unwrap_or_default())]
    Deadline { frontier: Option<String> },
    #[error("recalibration stuck at failure {failure} after {attempts} attempts ({oversized} over size limits)")]
    Stuck {
        failure: String,
        attempts: usize,
        oversized: usize,
    },
    #[error("invalid candidate: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Game(#[from] GameError),
}

impl SolverError {
    /// Budget and time-limit errors, as opposed to bugs or bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            SolverError::Budget { .. } | SolverError::Deadline { .. } | SolverError::Stuck { .. }
        )
    }
}
