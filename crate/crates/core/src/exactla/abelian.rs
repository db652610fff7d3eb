use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{int_kernel, snf, IntMatrix, LinAlgError, RatMatrix};

/// `Z^free_rank ⊕ Z/m_1 ⊕ … ⊕ Z/m_k` with `m_i ≥ 2` and `m_i | m_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Group with the given cyclic orders, normalized to invariant factors.
    /// Orders equal to 1 are dropped.
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let diag = IntMatrix::diagonal(orders);
        let torsion = snf(&diag).diagonal().into_iter().filter(|d| d > &BigInt::one()).collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the standard presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianGroup {
    /// `Z^5 ⊕ (Z/2)^2`, `Z/2 ⊕ Z/4`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let m = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == m).count();
            parts.push(if run == 1 { format!("Z/{m}") } else { format!("(Z/{m})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Invariants of `Z^rows / column-span(A)`.
pub fn cokernel_invariants(a: &IntMatrix) -> AbelianGroup {
    let diag = snf(a).diagonal();
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    let torsion = diag[..rank].iter().filter(|d| *d > &BigInt::one()).cloned().collect();
    AbelianGroup { free_rank: a.rows() - rank, torsion }
}

/// Kernel of a map from `Z^f ⊕ ⊕ Z/m_i` into a rational vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionKernel {
    pub group: AbelianGroup,
    /// Coordinate vectors of length `f + moduli.len()`: an HNF basis of the
    /// free kernel followed by one unit vector per torsion coordinate.
    pub generators: Vec<Vec<BigInt>>,
}

/// Kernel of `A`, whose last `moduli.len()` columns act on torsion
/// coordinates. Those columns must vanish since the target is torsion-free.
pub fn kernel_with_torsion(a: &RatMatrix, moduli: &[BigInt]) -> Result<TorsionKernel, LinAlgError> {
    if moduli.len() > a.cols() {
        return Err(LinAlgError::DimensionMismatch { expected: a.cols(), found: moduli.len() });
    }
    let free = a.cols() - moduli.len();
    for j in free..a.cols() {
        if a.column(j).iter().any(|x| !x.is_zero()) {
            return Err(LinAlgError::TorsionColumn { column: j });
        }
    }
    let cleared = clear_denominators(a, free);
    let mut generators: Vec<Vec<BigInt>> = int_kernel(&cleared)
        .into_iter()
        .map(|mut v| {
            v.resize(a.cols(), BigInt::zero());
            v
        })
        .collect();
    let free_rank = generators.len();
    for t in 0..moduli.len() {
        let mut v = vec![BigInt::zero(); a.cols()];
        v[free + t] = BigInt::one();
        generators.push(v);
    }
    Ok(TorsionKernel { group: AbelianGroup::from_orders(free_rank, moduli), generators })
}

/// First `cols` columns of `a`, each row scaled by the lcm of its denominators.
fn clear_denominators(a: &RatMatrix, cols: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows(), cols);
    for i in 0..a.rows() {
        let l = a.row(i)[..cols].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scale = BigRational::from_integer(l);
        for j in 0..cols {
            out[(i, j)] = (&a[(i, j)] * &scale).to_integer();
        }
    }
    out
}
