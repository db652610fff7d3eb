//! `R = ker D`, the subgroup of Chern classes that are realised by genuine
//! Lagrangian fibrations, and the assembled report.

mod report;

pub use report::{
    analyze, build_report, run_validations, DValue, GeneratorSummary, CohomologySummary, H3Summary, ObstructionReport, Stages,
    Witness,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::eqcomplex::{CohomologyGroup, TwistedCochain};
use crate::exactla::{hnf_rows, kernel_with_torsion, AbelianGroup, IntMatrix, LinAlgError, RatMatrix};
use crate::obstruction::{ObstructionError, ObstructionMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizableSubgroup {
    pub shape: AbelianGroup,
    /// Generators in H² generator coordinates: HNF-reduced free part, then
    /// the torsion generators of H².
    #[serde(with = "crate::serde_util::bigint_mat")]
    pub coordinates: Vec<Vec<BigInt>>,
    pub cochains: Vec<TwistedCochain>,
    /// Primitive integer rows on the free coordinates cutting out R.
    #[serde(with = "crate::serde_util::bigint_mat")]
    pub relations: Vec<Vec<BigInt>>,
}

pub fn realizable_subgroup(d: &ObstructionMap, h2: &CohomologyGroup) -> Result<RealizableSubgroup, ObstructionError> {
    let n = h2.generators.len();
    if d.free_rank != h2.shape.free_rank || d.torsion != h2.shape.torsion || d.matrix.iter().any(|r| r.len() != n) {
        return Err(ObstructionError::Dimension("obstruction map does not match H²".into()));
    }
    let moduli = &h2.orders[h2.shape.free_rank..];
    let kernel = kernel_with_torsion(&d.as_rat_matrix(), moduli).map_err(|e| match e {
        LinAlgError::TorsionColumn { column } => ObstructionError::TorsionClass { generator: column },
        other => ObstructionError::Dimension(other.to_string()),
    })?;
    let cochains = kernel.generators.iter().map(|coords| lift(h2, coords)).collect();
    Ok(RealizableSubgroup {
        shape: kernel.group,
        coordinates: kernel.generators,
        cochains,
        relations: defining_relations(d),
    })
}

/// `Σ coords_j · g_j` over the generators of H².
fn lift(h2: &CohomologyGroup, coords: &[BigInt]) -> TwistedCochain {
    let first = &h2.generators[0];
    let mut out = TwistedCochain::zero(first.degree, first.dim, first.values.len());
    for (g, k) in h2.generators.iter().zip(coords) {
        if !k.is_zero() {
            out = out.add(&g.scale(k));
        }
    }
    out
}

fn defining_relations(d: &ObstructionMap) -> Vec<Vec<BigInt>> {
    let free: Vec<Vec<BigRational>> = d.matrix.iter().map(|r| r[..d.free_rank].to_vec()).collect();
    let rref = RatMatrix::from_rows(&free, d.free_rank).rref();
    let rows: Vec<Vec<BigInt>> = (0..rref.pivots.len()).map(|i| primitive(rref.matrix.row(i))).collect();
    if rows.is_empty() {
        return rows;
    }
    hnf_rows(&IntMatrix::from_rows(&rows, d.free_rank)).row_vectors()
}

fn primitive(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Names for the generators of H²: `c{cell}{component}` (1-based) when the
/// generator is a Kronecker dual, `g{j}` otherwise.
pub fn generator_names(h2: &CohomologyGroup) -> Vec<String> {
    h2.generators
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut nonzero = g
                .values
                .iter()
                .enumerate()
                .flat_map(|(l, v)| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(r, x)| (l, r, x)));
            match (nonzero.next(), nonzero.next()) {
                (Some((l, r, x)), None) if x.is_one() => {
                    if l < 9 && r < 9 {
                        format!("c{}{}", l + 1, r + 1)
                    } else {
                        format!("c{}_{}", l + 1, r + 1)
                    }
                }
                _ => format!("g{}", j + 1),
            }
        })
        .collect()
}

/// `c11 - 2*c22 + c33`, or `0`.
pub fn combination_text<T: std::fmt::Display + Signed + One>(coeffs: &[T], names: &[String]) -> String {
    let mut out = String::new();
    for (x, name) in coeffs.iter().zip(names) {
        if x.is_zero() {
            continue;
        }
        let neg = x.is_negative();
        let abs = x.abs();
        let term = if abs.is_one() { name.clone() } else { format!("{abs}*{name}") };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `c22 + c33 = 0`.
pub fn relation_text(relation: &[BigInt], names: &[String]) -> String {
    format!("{} = 0", combination_text(relation, names))
}
