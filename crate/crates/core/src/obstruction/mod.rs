//! The obstruction homomorphism `D : H²(B; Z^n_ρ) → H³(B; Q)` as a twisted
//! cup product with the frame of closed one-forms.

mod data;
mod eval;
mod validate;

pub use data::{DiagonalApproximation, DiagonalTerm, PeriodAssignment, Sign};
pub use eval::{dd_evaluate, dd_matrix, h3_class, ObstructionMap};
pub(crate) use eval::dd_matrix_with;
pub use validate::{validate_diagonal, DiagonalCheckConfig};

use thiserror::Error;

use crate::eqcomplex::ComplexError;
use crate::grpring::RepError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("no diagonal terms for three-cell `{0}`")]
    MissingDiagonal(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("diagonal data or inputs inconsistent: D(torsion) != 0 on generator {generator}")]
    TorsionClass { generator: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
