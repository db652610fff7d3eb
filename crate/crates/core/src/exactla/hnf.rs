use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
///
/// The result has one row per basis vector (zero rows dropped), pivots are
/// positive and strictly increasing, and every entry above a pivot lies in
/// `[0, pivot)`. Two matrices span the same lattice iff their HNFs agree.
pub fn hnf_rows(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by(|&i, &j| m[(i, c)].abs().cmp(&m[(j, c)].abs()).then(i.cmp(&j)));
            let Some(p) = best else { break };
            m.swap_rows(r, p);
            let pivot = m[(r, c)].clone();
            let mut clean = true;
            for i in r + 1..rows {
                let q = m[(i, c)].div_floor(&pivot);
                m.add_row_multiple(i, r, &-q);
                clean &= m[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            m.negate_row(r);
        }
        let pivot = m[(r, c)].clone();
        for i in 0..r {
            let q = m[(i, c)].div_floor(&pivot);
            m.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    m.block(0, 0, r, cols)
}

/// Column index of the leading entry of each row of an echelon matrix.
pub fn pivot_columns(h: &IntMatrix) -> Vec<usize> {
    (0..h.rows())
        .map(|i| h.row(i).iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero"))
        .collect()
}

/// Integer coefficients `c` with `v = Σ c_i · row_i(h)`, for `h` in echelon
/// form. `None` if `v` is not in the row lattice.
pub fn echelon_coordinates(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), h.cols(), "vector length mismatch");
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(h.rows());
    for (i, p) in pivot_columns(h).into_iter().enumerate() {
        let (q, rem) = rest[p].div_rem(&h[(i, p)]);
        if !rem.is_zero() {
            return None;
        }
        for j in p..h.cols() {
            let t = &q * &h[(i, j)];
            rest[j] -= t;
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Canonical representative of `v` modulo the row lattice of `h` (HNF):
/// each pivot coordinate is brought into `[0, pivot)`.
pub fn reduce_modulo_rows(h: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut out = v.to_vec();
    for (i, p) in pivot_columns(h).into_iter().enumerate() {
        let q = out[p].div_floor(&h[(i, p)]);
        for j in p..h.cols() {
            let t = &q * &h[(i, j)];
            out[j] -= t;
        }
    }
    out
}
