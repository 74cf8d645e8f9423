//! The reduction algorithm: induced problems, single steps, canonical forms,
//! isomorphism testing, decomposition and idempotent splitting.

mod canon;
mod idempotent;
mod induce;
mod step;

use thiserror::Error;

use crate::problem::ProblemError;
use crate::weyr::WeyrError;

pub use canon::{
    canonical_form, decompose, default_step_cap, is_isomorphic, reduce, reduce_capped, CanonicalForm, Reduction, Summand,
    TraceLink,
};
pub use idempotent::split_idempotent;
pub use induce::{induced_problem, EdgeCase, Induced, StepShape};
pub use step::{
    apply_step, choose_reduction, eq8_row, implies_eq8, regularizing_element, theta, Applied, ReductionStep, StepKind,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("loop block has {0}")]
    Spectrum(#[from] WeyrError),
    #[error("reduction did not finish within {cap} steps")]
    StepLimitExceeded { cap: usize },
    #[error("the M-space is already zero")]
    NothingToReduce,
    #[error("endomorphism is not an idempotent of K")]
    NotIdempotent,
    #[error("size vector does not fit the problem")]
    ShapeMismatch,
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests;
