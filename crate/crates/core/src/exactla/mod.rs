//! Exact integer and rational linear algebra.
//!
//! Everything here works on [`IntMatrix`] (arbitrary-precision integers) or
//! [`RatMatrix`] (normalized rationals). There is no floating point anywhere.

mod abelian;
mod hnf;
mod int_matrix;
mod rat_matrix;
mod snf;
mod solve;

pub use abelian::{cokernel_invariants, kernel_with_torsion, AbelianGroup, TorsionKernel};
pub use hnf::{echelon_coordinates, hnf_rows, pivot_columns, reduce_modulo_rows};
pub use int_matrix::IntMatrix;
pub use rat_matrix::{RatMatrix, Rref};
pub use snf::{snf, SnfResult};
pub use solve::{int_kernel, int_solve, rat_solve};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("column {column} acts on a torsion coordinate but is nonzero")]
    TorsionColumn { column: usize },
}
