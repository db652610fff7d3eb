use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `S = U·A·V` with `U`, `V` unimodular and `S` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `S`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

struct State {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl State {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
    }

    /// Smallest |entry| in the block `[t.., t..]`, ties by row then column.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest |entry| in row `t` and column `t` of the active block.
    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let better = |cand: (usize, usize), best: (usize, usize), s: &IntMatrix| {
            let x = &s[cand];
            !x.is_zero() && (s[best].is_zero() || x.abs() < s[best].abs())
        };
        for i in t..self.s.rows() {
            if better((i, t), best, &self.s) {
                best = (i, t);
            }
        }
        for j in t..self.s.cols() {
            if better((t, j), best, &self.s) {
                best = (t, j);
            }
        }
        best
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }
}

/// Smith normal form by unimodular row and column operations.
///
/// The pivot is always the smallest nonzero entry in absolute value, ties
/// broken by row and then column index, so the transforms are reproducible.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut st = State { s: a.clone(), u: IntMatrix::identity(m), v: IntMatrix::identity(n) };

    for t in 0..m.min(n) {
        let Some(p) = st.smallest_in_block(t) else { break };
        st.move_to_pivot(t, p);
        loop {
            let pivot = st.s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = st.s[(i, t)].div_floor(&pivot);
                st.add_row(i, t, &-q);
                clean &= st.s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = st.s[(t, j)].div_floor(&pivot);
                st.add_col(j, t, &-q);
                clean &= st.s[(t, j)].is_zero();
            }
            if !clean {
                let p = st.smallest_in_cross(t);
                st.move_to_pivot(t, p);
                continue;
            }
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !st.s[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => st.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if st.s[(t, t)].is_negative() {
            st.s.negate_row(t);
            st.u.negate_row(t);
        }
    }
    SnfResult { u: st.u, s: st.s, v: st.v }
}
