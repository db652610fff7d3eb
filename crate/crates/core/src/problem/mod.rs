//! The `.iaf` problem format: a presentation, representations with role
//! bindings, an equivariant complex, periods and a diagonal table.
//!
//! ```text
//! [group]
//! generators = a b c
//! relation a*b = c*b*a
//!
//! [representation rho]
//! dim = 3
//! a = [[1,0,-1],[0,1,0],[0,0,1]]
//!
//! [complex]
//! cells 0 = v
//! boundary e1_1 = (a - 1)*v
//!
//! [periods]
//! e1_1 = [0, 1/2, 0]
//!
//! [diagonal]
//! e3 += (e1_1 | 1 ; e2_2 | a*b)
//! ```

mod parser;
mod serialize;

pub use parser::parse_problem;
pub use serialize::serialize_problem;

use thiserror::Error;

use crate::eqcomplex::EquivariantComplex;
use crate::grpring::{Presentation, Representation};
use crate::obstruction::{DiagonalApproximation, PeriodAssignment};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Meta {
    pub title: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bindings {
    pub coefficient_rep: String,
    pub form_rep: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub meta: Meta,
    pub presentation: Presentation,
    pub representations: Vec<Representation>,
    pub bindings: Bindings,
    pub complex: EquivariantComplex,
    pub periods: PeriodAssignment,
    pub diagonal: DiagonalApproximation,
}

impl ProblemFile {
    pub fn representation(&self, name: &str) -> Option<&Representation> {
        use crate::grpring::Coefficients;
        self.representations.iter().find(|r| r.name() == name)
    }

    /// The representation bound to `coefficient_rep`.
    pub fn coefficient_rep(&self) -> &Representation {
        self.representation(&self.bindings.coefficient_rep).expect("bindings are resolved at parse time")
    }

    /// The representation bound to `form_rep`.
    pub fn form_rep(&self) -> &Representation {
        self.representation(&self.bindings.form_rep).expect("bindings are resolved at parse time")
    }

    pub fn generator_names(&self) -> &[String] {
        self.presentation.generators()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown generator")]
    UnknownGenerator,
    #[error("unknown cell")]
    UnknownCell,
    #[error("unknown representation")]
    UnknownRepresentation,
    #[error("unknown section")]
    UnknownSection,
    #[error("unknown key")]
    UnknownKey,
    #[error("duplicate definition")]
    Duplicate,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("missing entry: {0}")]
    MissingEntry(String),
}

/// A parse failure at a 1-based line and column. Line 0 refers to the
/// whole file (used for missing sections).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub kind: ParseErrorKind,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else if self.token.is_empty() {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
        } else {
            write!(f, "line {}, column {}: {} at `{}`", self.line, self.column, self.kind, self.token)
        }
    }
}
