use super::ComplexError;
use crate::check::CheckReport;
use crate::exactla::IntMatrix;
use crate::grpring::{Coefficients, GroupRingElement, Word};

/// Cellular chain complex of the universal cover as a free left module over
/// the group ring, one basis cell per cell of the base.
///
/// `boundary[k][i][j]` is the coefficient of the `j`-th `(k-1)`-cell in the
/// boundary of the `i`-th `k`-cell. Zero-cells have empty boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantComplex {
    cells: Vec<Vec<String>>,
    boundary: Vec<Vec<Vec<GroupRingElement>>>,
}

impl EquivariantComplex {
    pub fn new(cells: Vec<Vec<String>>, boundary: Vec<Vec<Vec<GroupRingElement>>>) -> Result<Self, ComplexError> {
        if cells.is_empty() {
            return Err(ComplexError::Shape("complex has no cells".into()));
        }
        if boundary.len() != cells.len() {
            return Err(ComplexError::Shape("one boundary block per dimension is required".into()));
        }
        for (k, rows) in boundary.iter().enumerate() {
            if rows.len() != cells[k].len() {
                return Err(ComplexError::Shape(format!("dimension {k}: boundary rows do not match cells")));
            }
            let width = if k == 0 { 0 } else { cells[k - 1].len() };
            if rows.iter().any(|r| r.len() != width) {
                return Err(ComplexError::Shape(format!("dimension {k}: boundary row has wrong length")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for name in cells.iter().flatten() {
            if !seen.insert(name.as_str()) {
                return Err(ComplexError::Shape(format!("duplicate cell `{name}`")));
            }
        }
        Ok(EquivariantComplex { cells, boundary })
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    /// Basis cells in dimension `k`; empty above the top dimension.
    pub fn cells(&self, k: usize) -> &[String] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Boundary of cell `i` in dimension `k`, as coefficients over `(k-1)`-cells.
    pub fn boundary(&self, k: usize, i: usize) -> &[GroupRingElement] {
        &self.boundary[k][i]
    }

    pub fn find_cell(&self, name: &str) -> Option<(usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .find_map(|(k, cs)| cs.iter().position(|c| c == name).map(|i| (k, i)))
    }

    /// Replaces the lift of cell `(k, i)` by `g` times it: its own boundary is
    /// multiplied by `g` on the left, and every coefficient pointing at it
    /// from dimension `k+1` by `g⁻¹` on the right.
    pub fn relift(&self, k: usize, i: usize, g: &Word) -> EquivariantComplex {
        let mut out = self.clone();
        for x in out.boundary[k][i].iter_mut() {
            *x = x.left_mul_word(g);
        }
        if let Some(up) = out.boundary.get_mut(k + 1) {
            let ginv = g.inverse();
            for row in up.iter_mut() {
                row[i] = row[i].right_mul_word(&ginv);
            }
        }
        out
    }

    /// Same complex with one boundary coefficient replaced.
    pub fn with_boundary_entry(&self, k: usize, i: usize, j: usize, x: GroupRingElement) -> EquivariantComplex {
        let mut out = self.clone();
        out.boundary[k][i][j] = x;
        out
    }

    /// Highest generator index referenced by any boundary coefficient.
    pub fn max_generator(&self) -> Option<usize> {
        self.boundary.iter().flatten().flatten().filter_map(GroupRingElement::max_generator).max()
    }
}

/// Matrix of `δ^k : C^k → C^{k+1}`, rows blocked by `(k+1)`-cells and
/// columns by `k`-cells. Block `(i, j)` evaluates the coefficient of the
/// `j`-th `k`-cell in `∂` of the `i`-th `(k+1)`-cell, so that
/// `(δφ)(e) = φ(∂e)` under the rule `φ(g·e) = ρ(g)·φ(e)`.
pub fn coboundary_matrix(
    complex: &EquivariantComplex,
    coeffs: &dyn Coefficients,
    k: usize,
) -> Result<IntMatrix, ComplexError> {
    if k > complex.dim() {
        return Err(ComplexError::DegreeOutOfRange { degree: k, top: complex.dim() });
    }
    let n = coeffs.dim();
    let src = complex.cells(k).len();
    let dst = complex.cells(k + 1).len();
    let mut m = IntMatrix::zeros(n * dst, n * src);
    for i in 0..dst {
        for (j, x) in complex.boundary(k + 1, i).iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            m.set_block(i * n, j * n, &coeffs.eval(x)?);
        }
    }
    Ok(m)
}

/// Evaluates `∂∂` under each coefficient system and reports every nonzero
/// block by the cells involved.
pub fn validate_complex(complex: &EquivariantComplex, systems: &[&dyn Coefficients]) -> Vec<CheckReport> {
    systems.iter().map(|c| validate_one(complex, *c)).collect()
}

fn validate_one(complex: &EquivariantComplex, coeffs: &dyn Coefficients) -> CheckReport {
    let mut report = CheckReport::new(format!("boundary[{}]", coeffs.name()));
    let n = coeffs.dim();
    let mut deltas = Vec::new();
    for k in 0..complex.dim() {
        match coboundary_matrix(complex, coeffs, k) {
            Ok(m) => deltas.push(m),
            Err(e) => {
                report.fail(format!("dimension {}", k + 1), e.to_string());
                return report;
            }
        }
    }
    for k in 1..deltas.len() {
        let comp = &deltas[k] * &deltas[k - 1];
        let top = complex.cells(k + 1);
        let bottom = complex.cells(k - 1);
        for (i, hi) in top.iter().enumerate() {
            for (l, lo) in bottom.iter().enumerate() {
                let block = comp.block(i * n, l * n, n, n);
                if !block.is_zero() {
                    report.fail(
                        format!("{hi} -> {lo}"),
                        format!("boundary of boundary evaluates to {block}"),
                    );
                }
            }
        }
    }
    report
}
