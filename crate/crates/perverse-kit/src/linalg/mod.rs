//! Exact linear algebra over the rationals and over the rational-function
//! field in one formal parameter.
//!
//! Everything downstream (intersection forms, chain complexes, Lefschetz
//! packages, projectors) reduces to the routines in this module: row
//! reduction, kernels and images, symmetric congruence diagonalization,
//! subspace arithmetic, and kernel/limit computations for one-parameter
//! pencils. All arithmetic is exact; there is no floating point anywhere.

mod matrix;
mod pencil;
mod rational;
mod subspace;

pub use matrix::{Definiteness, DefinitenessReport, RationalMatrix, Signature};
pub use pencil::{subspace_limit, CancelToken, EpsPoly, ParamMatrix, PolyFrac};
pub use rational::{format_rational, frac, parse_rational, rat, Rational};
pub use subspace::Subspace;

use thiserror::Error;

/// Errors from exact linear algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("vector is not in the radical of the form (m*v != 0)")]
    NotInRadical,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("columns are not linearly independent")]
    DependentColumns,
    #[error("invalid rational literal: {0}")]
    BadRational(String),
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivision,
    #[error("operation cancelled")]
    Cancelled,
}
