use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{coboundary_matrix, ComplexError, EquivariantComplex};
use crate::exactla::{
    echelon_coordinates, hnf_rows, int_kernel, pivot_columns, reduce_modulo_rows, snf, AbelianGroup, IntMatrix,
};
use crate::grpring::Coefficients;

/// A cochain with values in `Z^n`, one vector per basis cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistedCochain {
    pub degree: usize,
    pub dim: usize,
    #[serde(with = "crate::serde_util::bigint_mat")]
    pub values: Vec<Vec<BigInt>>,
}

impl TwistedCochain {
    pub fn zero(degree: usize, dim: usize, cells: usize) -> Self {
        TwistedCochain { degree, dim, values: vec![vec![BigInt::zero(); dim]; cells] }
    }

    /// Kronecker dual of component `component` on cell `cell`.
    pub fn unit(degree: usize, dim: usize, cells: usize, cell: usize, component: usize) -> Self {
        let mut c = Self::zero(degree, dim, cells);
        c.values[cell][component] = BigInt::one();
        c
    }

    /// Values laid out cell by cell.
    pub fn from_flat(degree: usize, dim: usize, flat: &[BigInt]) -> Self {
        assert!(dim > 0 && flat.len().is_multiple_of(dim), "flat cochain length must be a multiple of dim");
        TwistedCochain { degree, dim, values: flat.chunks(dim).map(<[BigInt]>::to_vec).collect() }
    }

    pub fn flatten(&self) -> Vec<BigInt> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TwistedCochain) -> TwistedCochain {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        TwistedCochain { degree: self.degree, dim: self.dim, values }
    }

    pub fn scale(&self, k: &BigInt) -> TwistedCochain {
        let values = self.values.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        TwistedCochain { degree: self.degree, dim: self.dim, values }
    }
}

/// One graded piece of the coordinate filtration of a cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicFactor {
    Zero,
    Free,
    Torsion(#[serde(with = "crate::serde_util::bigint")] BigInt),
}

impl fmt::Display for CyclicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicFactor::Zero => write!(f, "0"),
            CyclicFactor::Free => write!(f, "Z"),
            CyclicFactor::Torsion(m) => write!(f, "Z/{m}"),
        }
    }
}

/// `(0⊕0⊕0)⊕(Z⊕Z⊕0)⊕(Z⊕Z⊕Z)`: one bracket per cell, one entry per component.
pub fn format_per_cell(per_cell: &[Vec<CyclicFactor>]) -> String {
    per_cell
        .iter()
        .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join("⊕")))
        .collect::<Vec<_>>()
        .join("⊕")
}

/// `H^k` with integer coefficients twisted by a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub dim: usize,
    pub coefficients: String,
    pub shape: AbelianGroup,
    /// Free generators first, then torsion generators in invariant-factor order.
    pub generators: Vec<TwistedCochain>,
    /// Order of each generator; zero for free generators.
    pub orders: Vec<BigInt>,
    /// Graded pieces of the filtration by cochain coordinate, per cell.
    pub per_cell: Vec<Vec<CyclicFactor>>,
    delta: IntMatrix,
    kernel: IntMatrix,
    coord_map: IntMatrix,
}

impl CohomologyGroup {
    /// Coordinates of `[c]` in the generator basis: integers on free
    /// generators, residues in `[0, m)` on torsion generators.
    pub fn coordinates(&self, c: &TwistedCochain) -> Result<Vec<BigInt>, ComplexError> {
        let cells = self.kernel.cols() / self.dim.max(1);
        if c.degree != self.degree || c.dim != self.dim || c.values.len() != cells {
            return Err(ComplexError::CochainShape);
        }
        let flat = c.flatten();
        if self.delta.mul_vec(&flat).iter().any(|x| !x.is_zero()) {
            return Err(ComplexError::NotCocycle);
        }
        let k = echelon_coordinates(&self.kernel, &flat).ok_or(ComplexError::NotCocycle)?;
        let mut y = self.coord_map.mul_vec(&k);
        for (yi, m) in y.iter_mut().zip(&self.orders) {
            if !m.is_zero() {
                *yi = yi.mod_floor(m);
            }
        }
        Ok(y)
    }

    pub fn free_generators(&self) -> &[TwistedCochain] {
        &self.generators[..self.shape.free_rank]
    }

    pub fn torsion_generators(&self) -> &[TwistedCochain] {
        &self.generators[self.shape.free_rank..]
    }

    pub fn per_cell_string(&self) -> String {
        format_per_cell(&self.per_cell)
    }

    /// Integer basis (HNF rows) of the cocycle lattice.
    pub fn cocycle_basis(&self) -> &IntMatrix {
        &self.kernel
    }
}

/// `cocycle_coordinates(H, c)` as a free function.
pub fn cocycle_coordinates(h: &CohomologyGroup, c: &TwistedCochain) -> Result<Vec<BigInt>, ComplexError> {
    h.coordinates(c)
}

/// `H^k = ker δ^k / im δ^{k-1}` with coefficients in `coeffs`.
///
/// Cocycles are written in the HNF basis of `ker δ^k`, coboundaries become a
/// relation lattice in those coordinates, and the quotient is read off the
/// HNF of the relations. When that HNF is already diagonal the generators
/// are single kernel basis vectors; otherwise an SNF change of basis is used.
pub fn twisted_cohomology(
    complex: &EquivariantComplex,
    coeffs: &dyn Coefficients,
    k: usize,
) -> Result<CohomologyGroup, ComplexError> {
    let n = coeffs.dim();
    let cells = complex.cells(k).len();
    let size = n * cells;
    let delta = coboundary_matrix(complex, coeffs, k)?;
    let prev = if k == 0 { IntMatrix::zeros(size, 0) } else { coboundary_matrix(complex, coeffs, k - 1)? };

    let kernel_rows = int_kernel(&delta);
    let kernel = IntMatrix::from_rows(&kernel_rows, size);
    let r = kernel.rows();
    let pivots = pivot_columns(&kernel);

    let mut relations = Vec::with_capacity(prev.cols());
    for col in prev.column_vectors() {
        relations.push(echelon_coordinates(&kernel, &col).ok_or(ComplexError::NotAComplex { degree: k })?);
    }
    let rel = hnf_rows(&IntMatrix::from_rows(&relations, r));
    let rel_pivots = pivot_columns(&rel);
    let mut lead = vec![BigInt::zero(); r];
    for (row, &p) in rel_pivots.iter().enumerate() {
        lead[p] = rel[(row, p)].clone();
    }

    let mut per_cell = vec![vec![CyclicFactor::Zero; n]; cells];
    for (i, &pos) in pivots.iter().enumerate() {
        per_cell[pos / n][pos % n] = factor_of(&lead[i]);
    }

    // Eliminate coordinates killed by a unit relation.
    let kept: Vec<usize> = (0..r).filter(|&i| !lead[i].is_one()).collect();
    let unit_rows: Vec<usize> = (0..rel.rows()).filter(|&row| rel[(row, rel_pivots[row])].is_one()).collect();
    let eliminate = |x: &[BigInt]| -> Vec<BigInt> {
        let mut x = x.to_vec();
        for &row in &unit_rows {
            let q = x[rel_pivots[row]].clone();
            if !q.is_zero() {
                for j in 0..r {
                    let t = &q * &rel[(row, j)];
                    x[j] -= t;
                }
            }
        }
        kept.iter().map(|&i| x[i].clone()).collect()
    };
    let e = IntMatrix::from_columns(
        &(0..r)
            .map(|i| {
                let mut u = vec![BigInt::zero(); r];
                u[i] = BigInt::one();
                eliminate(&u)
            })
            .collect::<Vec<_>>(),
        kept.len(),
    );
    let reduced: Vec<Vec<BigInt>> = (0..rel.rows())
        .filter(|&row| rel[(row, rel_pivots[row])] > BigInt::one())
        .map(|row| eliminate(rel.row(row)))
        .collect();

    let (gens_kept, orders, coord_map) = match diagonal_quotient(&reduced, &kept, &lead) {
        Some(order) => {
            let gens = order
                .iter()
                .map(|&t| {
                    let mut u = vec![BigInt::zero(); kept.len()];
                    u[t] = BigInt::one();
                    u
                })
                .collect::<Vec<_>>();
            let orders = order.iter().map(|&t| lead[kept[t]].clone()).collect();
            let rows: Vec<Vec<BigInt>> = order.iter().map(|&t| e.row(t).to_vec()).collect();
            (gens, orders, IntMatrix::from_rows(&rows, r))
        }
        None => smith_quotient(&reduced, kept.len(), &e),
    };

    let image = hnf_rows(&prev.transpose());
    let generators = gens_kept
        .iter()
        .map(|g| {
            let mut flat = vec![BigInt::zero(); size];
            for (t, coef) in g.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (j, x) in kernel.row(kept[t]).iter().enumerate() {
                    flat[j] += coef * x;
                }
            }
            TwistedCochain::from_flat(k, n, &reduce_modulo_rows(&image, &flat))
        })
        .collect();

    let free_rank = orders.iter().filter(|m: &&BigInt| m.is_zero()).count();
    let torsion: Vec<BigInt> = orders.iter().filter(|m| !m.is_zero()).cloned().collect();
    Ok(CohomologyGroup {
        degree: k,
        dim: n,
        coefficients: coeffs.name().to_string(),
        shape: AbelianGroup { free_rank, torsion },
        generators,
        orders,
        per_cell,
        delta,
        kernel,
        coord_map,
    })
}

fn factor_of(m: &BigInt) -> CyclicFactor {
    if m.is_zero() {
        CyclicFactor::Free
    } else if m.is_one() {
        CyclicFactor::Zero
    } else {
        CyclicFactor::Torsion(m.clone())
    }
}

/// Generator order (indices into `kept`) when every remaining relation is a
/// multiple of a single coordinate and the orders already form a divisibility
/// chain: free coordinates first, then torsion sorted by order.
fn diagonal_quotient(reduced: &[Vec<BigInt>], kept: &[usize], lead: &[BigInt]) -> Option<Vec<usize>> {
    for row in reduced {
        if row.iter().filter(|x| !x.is_zero()).count() != 1 {
            return None;
        }
    }
    let mut free: Vec<usize> = Vec::new();
    let mut tors: Vec<usize> = Vec::new();
    for (t, &i) in kept.iter().enumerate() {
        if lead[i].is_zero() {
            free.push(t);
        } else {
            tors.push(t);
        }
    }
    tors.sort_by(|&a, &b| lead[kept[a]].cmp(&lead[kept[b]]));
    if tors.windows(2).any(|w| !lead[kept[w[1]]].is_multiple_of(&lead[kept[w[0]]])) {
        return None;
    }
    free.extend(tors);
    Some(free)
}

/// General quotient `Z^t / rows(reduced)` through the SNF of its transpose.
fn smith_quotient(reduced: &[Vec<BigInt>], t: usize, e: &IntMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>, IntMatrix) {
    let relt = IntMatrix::from_rows(reduced, t).transpose();
    let s = snf(&relt);
    let rank = s.rank();
    let d = s.diagonal();
    let uinv = s.u.inverse().expect("SNF transform is unimodular");
    let ue = &s.u * e;
    let mut order: Vec<usize> = (rank..t).collect();
    order.extend((0..rank).filter(|&i| d[i] > BigInt::one()));
    let gens = order.iter().map(|&i| uinv.column(i)).collect();
    let orders = order.iter().map(|&i| if i < rank { d[i].clone() } else { BigInt::zero() }).collect();
    let rows: Vec<Vec<BigInt>> = order.iter().map(|&i| ue.row(i).to_vec()).collect();
    (gens, orders, IntMatrix::from_rows(&rows, e.cols()))
}
