//! Finite-dimensional algebras from quivers with relations, their left regular
//! representations, and the bimodule problem of morphisms between projectives.

mod algebra;
mod p1;

use thiserror::Error;

pub use algebra::{build_algebra, left_regular, AlgebraTable, Arrow, BasisKind, QuiverPresentation};
pub use p1::p1_problem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("path `{0}` is not composable")]
    NotComposable(String),
    #[error("inadmissible relation {index}: {reason}")]
    InadmissibleRelation { index: usize, reason: String },
    #[error("a path of length {0} survives the relations; the nilpotency bound is too small")]
    NotNilpotentAtBound(usize),
    #[error("basis order override does not list the radical basis: {0}")]
    InvalidOrder(String),
}
