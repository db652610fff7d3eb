use std::fmt;

use num_rational::BigRational;

use crate::grpring::Word;

/// Rational period vectors of the frame of closed one-forms, one per basis
/// one-cell: component `l` is the integral of the `l`-th form over the cell.
/// Under the deck group the periods move by the form representation,
/// `P(g·e) = ℓ(g)·P(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodAssignment {
    pub dim: usize,
    pub form_rep: String,
    pub periods: Vec<Vec<BigRational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `sign · (front one-cell translated by front_word) ⊗ (back two-cell
/// translated by back_word)`. Indices refer to the complex's cell order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalTerm {
    pub sign: Sign,
    pub front_cell: usize,
    pub front_word: Word,
    pub back_cell: usize,
    pub back_word: Word,
}

/// The (1,2) component of a diagonal approximation, listed per basis
/// three-cell.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiagonalApproximation {
    pub terms: Vec<Vec<DiagonalTerm>>,
}

impl DiagonalApproximation {
    /// Moves three-cell `cell` to the lift `g·e`: every term is translated by `g`.
    pub fn relift(&self, cell: usize, g: &Word) -> DiagonalApproximation {
        let mut out = self.clone();
        if let Some(ts) = out.terms.get_mut(cell) {
            for t in ts.iter_mut() {
                t.front_word = g.mul(&t.front_word);
                t.back_word = g.mul(&t.back_word);
            }
        }
        out
    }
}
