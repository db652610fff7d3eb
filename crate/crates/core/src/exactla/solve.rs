use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{hnf_rows, snf, IntMatrix, LinAlgError, RatMatrix};

/// HNF-reduced basis of `{x ∈ Z^cols : A·x = 0}`.
///
/// The kernel is read off the trailing columns of the SNF transform `V`, so
/// it is saturated: the basis extends to a basis of `Z^cols`.
pub fn int_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let r = snf(a);
    let rank = r.rank();
    let basis: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| r.v.column(j)).collect();
    if basis.is_empty() {
        return basis;
    }
    hnf_rows(&IntMatrix::from_rows(&basis, a.cols())).row_vectors()
}

/// Some integer `x` with `A·x = b`, or `None` when no integer solution exists.
pub fn int_solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinAlgError> {
    if b.len() != a.rows() {
        return Err(LinAlgError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let r = snf(a);
    let ub = r.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        let d = if i < a.cols() { r.s[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !rhs.is_zero() {
                return Ok(None);
            }
            continue;
        }
        let (q, rem) = rhs.div_rem(&d);
        if !rem.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    Ok(Some(r.v.mul_vec(&y)))
}

/// Reduced-echelon pivot solution of `A·x = b` over Q: free variables are
/// zero. `None` when the system is inconsistent.
pub fn rat_solve(a: &RatMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>, LinAlgError> {
    if b.len() != a.rows() {
        return Err(LinAlgError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let rhs = RatMatrix::from_columns(&[b.to_vec()], a.rows());
    let rref = a.hstack(&rhs).rref();
    if rref.pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); a.cols()];
    for (i, &p) in rref.pivots.iter().enumerate() {
        x[p] = rref.matrix[(i, a.cols())].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let a = IntMatrix::from_i64(&[&[1, 1, 1]]);
        let k = int_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        let km = IntMatrix::from_rows(&k, 3);
        assert!(snf(&km).diagonal().iter().all(|d| d == &BigInt::from(1)));
    }

    #[test]
    fn kernel_edge_cases() {
        assert!(int_kernel(&IntMatrix::identity(3)).is_empty());
        let k = int_kernel(&IntMatrix::zeros(1, 2));
        assert_eq!(IntMatrix::from_rows(&k, 2), IntMatrix::identity(2));
    }

    #[test]
    fn integer_solvability() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(int_solve(&a, &ints(&[4, 9])).unwrap(), Some(ints(&[2, 3])));
        assert_eq!(int_solve(&a, &ints(&[1, 0])).unwrap(), None);
        assert!(int_solve(&a, &ints(&[1])).is_err());
    }

    #[test]
    fn rational_solve() {
        let a = RatMatrix::from_fractions(&[&[(1, 1), (1, 1)]]);
        let b = vec![BigRational::from_integer(1.into())];
        let x = rat_solve(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let z = RatMatrix::from_fractions(&[&[(0, 1)]]);
        assert_eq!(rat_solve(&z, &b).unwrap(), None);
        let id = RatMatrix::identity(2);
        let b2 = vec![BigRational::new(1.into(), 3.into()), BigRational::from_integer((-2).into())];
        assert_eq!(rat_solve(&id, &b2).unwrap(), Some(b2.clone()));
    }
}
