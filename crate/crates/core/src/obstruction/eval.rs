use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{DiagonalApproximation, ObstructionError, PeriodAssignment, Sign};
use crate::eqcomplex::{untwisted_cohomology_q, CohomologyGroup, EquivariantComplex, RationalCohomology, TwistedCochain};
use crate::exactla::{IntMatrix, RatMatrix};
use crate::grpring::Coefficients;

fn mat_vec_rat(m: &IntMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, x)| acc + BigRational::from_integer(a.clone()) * x)
        })
        .collect()
}

/// Value of the twisted cup product of `c` with the period frame on every
/// basis three-cell:
/// `Σ sign · ⟨ρ(back_word)·c(back), ℓ(front_word)·P(front)⟩`.
pub fn dd_evaluate(
    complex: &EquivariantComplex,
    diagonal: &DiagonalApproximation,
    rep_coeff: &dyn Coefficients,
    rep_form: &dyn Coefficients,
    periods: &PeriodAssignment,
    c: &TwistedCochain,
) -> Result<Vec<BigRational>, ObstructionError> {
    let n = rep_coeff.dim();
    if c.degree != 2 || c.dim != n || c.values.len() != complex.cells(2).len() {
        return Err(ObstructionError::Dimension("cochain must be a 2-cochain matching the coefficients".into()));
    }
    if rep_form.dim() != n || periods.dim != n {
        return Err(ObstructionError::Dimension("period frame and coefficients differ in rank".into()));
    }
    let threes = complex.cells(3);
    let mut out = Vec::with_capacity(threes.len());
    for (i, name) in threes.iter().enumerate() {
        let terms = diagonal
            .terms
            .get(i)
            .filter(|t| !t.is_empty())
            .ok_or_else(|| ObstructionError::MissingDiagonal(name.clone()))?;
        let mut value = BigRational::zero();
        for t in terms {
            let back = rep_coeff.eval_word(&t.back_word)?.mul_vec(&c.values[t.back_cell]);
            let front = mat_vec_rat(&rep_form.eval_word(&t.front_word)?, &periods.periods[t.front_cell]);
            let pairing = back
                .iter()
                .zip(&front)
                .fold(BigRational::zero(), |acc, (x, p)| acc + BigRational::from_integer(x.clone()) * p);
            match t.sign {
                Sign::Plus => value += pairing,
                Sign::Minus => value -= pairing,
            }
        }
        out.push(value);
    }
    Ok(out)
}

/// Coordinates of a rational three-cochain in the chosen basis of `H³(B; Q)`.
pub fn h3_class(complex: &EquivariantComplex, w: &[BigRational]) -> Result<Vec<BigRational>, ObstructionError> {
    Ok(untwisted_cohomology_q(complex, 3)?.coordinates(w)?)
}

/// `D` as a rational matrix from H² generator coordinates to `H³(B; Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionMap {
    /// `target_dim × (free + torsion)` entries.
    #[serde(with = "crate::serde_util::rational_mat")]
    pub matrix: Vec<Vec<BigRational>>,
    pub free_rank: usize,
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub torsion: Vec<BigInt>,
    pub target_dim: usize,
}

impl ObstructionMap {
    pub fn as_rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(&self.matrix, self.free_rank + self.torsion.len())
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.as_rat_matrix().rank()
    }
}

/// Column `j` is the class of the cup product of the `j`-th H² generator.
/// Torsion generators must map to zero.
pub fn dd_matrix(
    complex: &EquivariantComplex,
    h2: &CohomologyGroup,
    diagonal: &DiagonalApproximation,
    rep_coeff: &dyn Coefficients,
    rep_form: &dyn Coefficients,
    periods: &PeriodAssignment,
) -> Result<ObstructionMap, ObstructionError> {
    let h3 = untwisted_cohomology_q(complex, 3)?;
    dd_matrix_with(complex, h2, &h3, diagonal, rep_coeff, rep_form, periods)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn dd_matrix_with(
    complex: &EquivariantComplex,
    h2: &CohomologyGroup,
    h3: &RationalCohomology,
    diagonal: &DiagonalApproximation,
    rep_coeff: &dyn Coefficients,
    rep_form: &dyn Coefficients,
    periods: &PeriodAssignment,
) -> Result<ObstructionMap, ObstructionError> {
    let mut columns = Vec::with_capacity(h2.generators.len());
    for (j, g) in h2.generators.iter().enumerate() {
        let w = dd_evaluate(complex, diagonal, rep_coeff, rep_form, periods, g)?;
        let col = h3.coordinates(&w)?;
        if j >= h2.shape.free_rank && col.iter().any(|x| !x.is_zero()) {
            return Err(ObstructionError::TorsionClass { generator: j });
        }
        columns.push(col);
    }
    let target_dim = h3.dimension();
    let matrix = (0..target_dim).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(ObstructionMap { matrix, free_rank: h2.shape.free_rank, torsion: h2.shape.torsion.clone(), target_dim })
}
