//! Equivariant cell complexes with group-ring boundaries, their twisted
//! cochain complexes, and cohomology with local coefficients.

mod cohomology;
mod complex;
mod rational;

pub use cohomology::{
    cocycle_coordinates, format_per_cell, twisted_cohomology, CohomologyGroup, CyclicFactor, TwistedCochain,
};
pub use complex::{coboundary_matrix, validate_complex, EquivariantComplex};
pub use rational::{untwisted_cohomology_q, RationalCohomology};

use thiserror::Error;

use crate::grpring::RepError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("malformed complex: {0}")]
    Shape(String),
    #[error("degree {degree} is above the top dimension {top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("coboundaries in degree {degree} are not cocycles; the boundary data is not a complex")]
    NotAComplex { degree: usize },
    #[error("not a cocycle")]
    NotCocycle,
    #[error("cochain is not closed")]
    NotClosed,
    #[error("cochain has the wrong degree or dimension")]
    CochainShape,
}
