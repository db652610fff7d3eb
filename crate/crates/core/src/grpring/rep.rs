use num_traits::{One, Signed};
use thiserror::Error;

use super::{GroupRingElement, Presentation, Word};
use crate::check::CheckReport;
use crate::exactla::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representation `{rep}` has no matrix for generator index {generator}")]
    ForeignGenerator { rep: String, generator: usize },
    #[error("representation `{rep}`: generator `{generator}` has no integer inverse")]
    NotInvertible { rep: String, generator: String },
    #[error("representation `{rep}`: matrix for `{generator}` is not {dim}x{dim}")]
    BadShape { rep: String, generator: String, dim: usize },
}

/// A local coefficient system: anything that turns words into square
/// integer matrices multiplicatively.
pub trait Coefficients {
    fn name(&self) -> &str;
    fn dim(&self) -> usize;
    fn eval_word(&self, w: &Word) -> Result<IntMatrix, RepError>;

    /// `Σ coeff · eval_word(word)`.
    fn eval(&self, x: &GroupRingElement) -> Result<IntMatrix, RepError> {
        let mut out = IntMatrix::zeros(self.dim(), self.dim());
        for (w, c) in x.terms() {
            out = &out + &self.eval_word(w)?.scale(c);
        }
        Ok(out)
    }
}

/// The trivial rank-one system: every group element acts as 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct Augmentation;

impl Coefficients for Augmentation {
    fn name(&self) -> &str {
        "augmentation"
    }

    fn dim(&self) -> usize {
        1
    }

    fn eval_word(&self, _: &Word) -> Result<IntMatrix, RepError> {
        Ok(IntMatrix::identity(1))
    }

    fn eval(&self, x: &GroupRingElement) -> Result<IntMatrix, RepError> {
        Ok(IntMatrix::from_vec(1, 1, vec![x.augmentation()]))
    }
}

/// Integer matrices assigned to the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    name: String,
    dim: usize,
    matrices: Vec<IntMatrix>,
    inverses: Vec<Option<IntMatrix>>,
}

impl Representation {
    /// Matrices must be `dim × dim`; invertibility over Z is not required
    /// here and is reported by [`check_relations`].
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        matrices: Vec<IntMatrix>,
        generator_names: &[String],
    ) -> Result<Self, RepError> {
        let name = name.into();
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                let generator = generator_names.get(i).cloned().unwrap_or_else(|| i.to_string());
                return Err(RepError::BadShape { rep: name, generator, dim });
            }
        }
        let inverses = matrices.iter().map(IntMatrix::inverse).collect();
        Ok(Representation { name, dim, matrices, inverses })
    }

    /// Identity matrices for `count` generators.
    pub fn trivial(name: impl Into<String>, dim: usize, count: usize) -> Self {
        let m = vec![IntMatrix::identity(dim); count];
        Representation { name: name.into(), dim, inverses: m.iter().map(|x| Some(x.clone())).collect(), matrices: m }
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, generator: usize) -> Option<&IntMatrix> {
        self.matrices.get(generator)
    }

    pub fn inverse(&self, generator: usize) -> Option<&IntMatrix> {
        self.inverses.get(generator).and_then(Option::as_ref)
    }

    pub fn generator_count(&self) -> usize {
        self.matrices.len()
    }

    /// Same representation with its matrices replaced.
    pub fn with_matrices(&self, matrices: Vec<IntMatrix>) -> Self {
        let inverses = matrices.iter().map(IntMatrix::inverse).collect();
        Representation { name: self.name.clone(), dim: self.dim, matrices, inverses }
    }
}

impl Coefficients for Representation {
    fn name(&self) -> &str {
        &self.name
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn eval_word(&self, w: &Word) -> Result<IntMatrix, RepError> {
        let mut out = IntMatrix::identity(self.dim);
        for l in w.letters() {
            let foreign = || RepError::ForeignGenerator { rep: self.name.clone(), generator: l.generator };
            let m = if l.inverse {
                let entry = self.inverses.get(l.generator).ok_or_else(foreign)?;
                entry.as_ref().ok_or_else(|| RepError::NotInvertible {
                    rep: self.name.clone(),
                    generator: l.generator.to_string(),
                })?
            } else {
                self.matrices.get(l.generator).ok_or_else(foreign)?
            };
            out = &out * m;
        }
        Ok(out)
    }
}

/// Every generator must lie in GL(n, Z) and every relator must evaluate to
/// the identity.
pub fn check_relations(rep: &Representation, presentation: &Presentation) -> CheckReport {
    let names = presentation.generators();
    let mut report = CheckReport::new(format!("relations[{}]", rep.name()));
    if rep.generator_count() != names.len() {
        report.fail(
            rep.name(),
            format!("{} matrices for {} generators", rep.generator_count(), names.len()),
        );
        return report;
    }
    for (i, m) in rep.matrices().iter().enumerate() {
        let det = m.det();
        if !det.abs().is_one() {
            report.fail(
                format!("generator {}", names[i]),
                format!("determinant {det}, no integer inverse"),
            );
        }
    }
    for r in presentation.relations() {
        let label = format!("{} = {}", r.lhs.display(names), r.rhs.display(names));
        let lhs = rep.eval_word(&r.lhs);
        let rhs = rep.eval_word(&r.rhs);
        match (lhs, rhs) {
            (Ok(l), Ok(rm)) if l == rm => {}
            (Ok(l), Ok(rm)) => report.fail(format!("relation {label}"), format!("{l} != {rm}")),
            (Err(e), _) | (_, Err(e)) => report.fail(format!("relation {label}"), e.to_string()),
        }
    }
    report
}

/// `coeff(g) = form(g)^{-T}` for every generator.
pub fn check_duality(form: &Representation, coeff: &Representation, names: &[String]) -> CheckReport {
    let mut report = CheckReport::new(format!("duality[{} = {}^-T]", coeff.name(), form.name()));
    if form.dim() != coeff.dim() {
        report.fail("dimension", format!("{} has dim {}, {} has dim {}", form.name(), form.dim(), coeff.name(), coeff.dim()));
        return report;
    }
    if form.generator_count() != coeff.generator_count() {
        report.fail("generators", "representations cover different generator sets");
        return report;
    }
    for g in 0..form.generator_count() {
        let label = names.get(g).cloned().unwrap_or_else(|| g.to_string());
        match form.inverse(g) {
            None => report.fail(format!("generator {label}"), format!("{} is not invertible over Z", form.name())),
            Some(inv) => {
                let expected = inv.transpose();
                let actual = &coeff.matrices()[g];
                if &expected != actual {
                    report.fail(
                        format!("generator {label}"),
                        format!("{}({label}) = {actual}, expected {expected}", coeff.name()),
                    );
                }
            }
        }
    }
    report
}
