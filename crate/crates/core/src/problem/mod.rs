//! Bimodule problems: index partitions, equation systems, triangular bases,
//! representations and morphisms.

mod bases;
mod bimodule;
mod equations;
mod partition;
mod repr;

use thiserror::Error;

use crate::exactmath::NonUnitPivot;

pub use bases::{
    block_order_min, cmp_positions, compute_bases, normalize_system, order_key, pair_positions, solve_pair,
    BasisElement, Space, TriangularBases,
};
pub use bimodule::{offsets, validate_problem, BimoduleProblem, ProblemSpec};
pub use equations::{EquationSystem, Position, Row};
pub use partition::IndexPartition;
pub use repr::{direct_sum, hom_space, in_k_blockwise, is_morphism, Morphism, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("index {} out of range 1..{t}", index + 1)]
    IndexOutOfRange { index: usize, t: usize },
    #[error("H has a nonzero entry at ({}, {}) joining inequivalent indices", i + 1, j + 1)]
    HNotBlockDiagonal { i: usize, j: usize },
    #[error("K-equation references position ({}, {}) on or below the diagonal", i + 1, j + 1)]
    KEquationBelowDiagonal { i: usize, j: usize },
    #[error("equation mixes class pairs: ({}, {}) and ({}, {})", first.0 + 1, first.1 + 1, other.0 + 1, other.1 + 1)]
    MixedClassPairs { first: (usize, usize), other: (usize, usize) },
    #[error("derivation of radical basis element {} violates the M-equation at ({}, {})", element + 1, position.0 + 1, position.1 + 1)]
    DerivationNotClosed { element: usize, position: (usize, usize) },
    #[error("triangular basis needs a non-unit pivot: {0}")]
    NonUnitPivot(#[from] NonUnitPivot),
    #[error("empty position set")]
    EmptySet,
    #[error("matrix does not lie in K")]
    InputNotInK,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("representations belong to different problems")]
    ProblemMismatch,
    #[error("size vector differs on equivalent indices {} and {}", i + 1, j + 1)]
    SizeNotClassConstant { i: usize, j: usize },
    #[error("block ({}, {}) violates an M-equation", i + 1, j + 1)]
    InconsistentDependentEntry { i: usize, j: usize },
}
