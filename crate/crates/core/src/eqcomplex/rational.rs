use num_rational::BigRational;
use num_traits::Zero;

use super::{coboundary_matrix, ComplexError, EquivariantComplex};
use crate::exactla::{rat_solve, RatMatrix};
use crate::grpring::Augmentation;

/// `H^k(B; Q)` of the base with untwisted coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCohomology {
    pub degree: usize,
    /// Cocycles whose classes form the chosen basis.
    pub basis: Vec<Vec<BigRational>>,
    delta: RatMatrix,
    solve: RatMatrix,
    image_rank: usize,
}

impl RationalCohomology {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `[w]` in the chosen basis; all zero iff `w` is exact.
    pub fn coordinates(&self, w: &[BigRational]) -> Result<Vec<BigRational>, ComplexError> {
        if w.len() != self.delta.cols() {
            return Err(ComplexError::CochainShape);
        }
        if self.delta.mul_vec(w).iter().any(|x| !x.is_zero()) {
            return Err(ComplexError::NotClosed);
        }
        let x = rat_solve(&self.solve, w)
            .map_err(|_| ComplexError::CochainShape)?
            .ok_or(ComplexError::NotClosed)?;
        Ok(x[self.image_rank..].to_vec())
    }

    /// True iff `w` is a coboundary.
    pub fn is_exact(&self, w: &[BigRational]) -> Result<bool, ComplexError> {
        Ok(self.coordinates(w)?.iter().all(Zero::is_zero))
    }
}

/// Cellular cohomology of the base over Q, using the augmentation.
///
/// Basis classes are chosen greedily: kernel vectors of `δ^k` (in reduced
/// echelon order, which for a top-dimensional degree are the Kronecker duals
/// of the cells) are kept when independent of the coboundaries and of the
/// vectors already kept.
pub fn untwisted_cohomology_q(complex: &EquivariantComplex, k: usize) -> Result<RationalCohomology, ComplexError> {
    let size = complex.cells(k).len();
    let delta = RatMatrix::from_int(&coboundary_matrix(complex, &Augmentation, k)?);
    let prev = if k == 0 {
        RatMatrix::zeros(size, 0)
    } else {
        RatMatrix::from_int(&coboundary_matrix(complex, &Augmentation, k - 1)?)
    };
    let image_cols: Vec<Vec<BigRational>> = {
        let rref = prev.transpose().rref();
        (0..rref.pivots.len()).map(|i| rref.matrix.row(i).to_vec()).collect()
    };
    let image_rank = image_cols.len();
    let mut span = image_cols.clone();
    let mut basis = Vec::new();
    for v in delta.kernel() {
        let mut candidate = span.clone();
        candidate.push(v.clone());
        if RatMatrix::from_columns(&candidate, size).rank() == candidate.len() {
            span = candidate;
            basis.push(v);
        }
    }
    let solve = RatMatrix::from_columns(&span, size);
    Ok(RationalCohomology { degree: k, basis, delta, solve, image_rank })
}
