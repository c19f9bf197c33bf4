//! Hard-Lefschetz verification and its consequences: primitive
//! decompositions, the two-operator bigraded decomposition with its
//! orthogonality certificates, perverse filtrations for resolution
//! packages in dimensions three and four, and the algebraic limit of
//! primitive subspaces along a pencil of operators.

mod bigraded;
mod package;
mod resolution;

pub use bigraded::{eta_l_decomposition, BigradedPackage, EtaLReport, SlotReport, SummandReport};
pub use package::{
    hard_lefschetz_check, limit_primitives, primitive_decomposition, GradedPackage, HlVerdict,
    PackageOperator, PrimitiveDecomposition,
};
pub use resolution::{
    excess_dimension_4fold, perverse_filtration_3fold, refined_form_graded_check,
    threefold_graded_blocks, ExcessReport, GradedFormBlocks, PerverseFiltration3,
    ResolutionPackage3, ResolutionPackage4, ThreefoldSummands,
};

use crate::linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("package invariant violated: {0}")]
    InvariantViolated(String),
    #[error("hard Lefschetz fails for {op} at i = {i}")]
    HardLefschetzFails { op: &'static str, i: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
