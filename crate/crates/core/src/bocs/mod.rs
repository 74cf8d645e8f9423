//! The differential biquiver (layered bocs) of a bimodule problem, its layer
//! axioms, first-arrow analysis and the search for wild configurations.

mod analysis;
mod biquiver;
mod wild;

use thiserror::Error;

use crate::exactmath::Poly2;
use crate::reduce::ReduceError;

pub use analysis::{first_arrow_analysis, ArrowCase, Branch, FirstArrowReport, Verdict, WildCase, WildVerdict};
pub use biquiver::{
    check_layer, p1_biquiver, to_biquiver, to_biquiver_with, BiArrow, Biquiver, DifferentialExpr, Factor, LayerReport,
    Parameter, Term, Vertex,
};
pub use wild::{detect_wild, FreeProblem, MinimalEnd, StopReason, WildOutcome, DEFAULT_MAX_STEPS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BocsError {
    #[error("differential of {arrow} uses {offending}, which does not come earlier")]
    TriangularityViolated { arrow: String, offending: String },
    #[error("differential of {arrow} has a term whose arrows do not compose along its endpoints")]
    IllFormedTerm { arrow: String },
    #[error("the biquiver has no solid arrow; the problem is minimal")]
    NoSolidArrow,
    #[error("differential of {arrow} needs a basis change over the parameter ring (last cofactor {cofactor})")]
    RequiresBasisChange { arrow: String, cofactor: Poly2 },
    #[error("wild detection expects a problem with H = 0")]
    NonZeroH,
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

#[cfg(test)]
mod tests;
