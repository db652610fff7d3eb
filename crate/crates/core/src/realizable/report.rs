use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{generator_names, realizable_subgroup, relation_text, RealizableSubgroup};
use crate::check::CheckReport;
use crate::eqcomplex::{
    twisted_cohomology, untwisted_cohomology_q, validate_complex, CohomologyGroup, CyclicFactor, RationalCohomology,
    TwistedCochain,
};
use crate::exactla::AbelianGroup;
use crate::grpring::{check_duality, check_relations, Augmentation, Coefficients};
use crate::obstruction::{dd_matrix_with, validate_diagonal, DiagonalCheckConfig, ObstructionMap};
use crate::problem::ProblemFile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSummary {
    pub name: String,
    /// Zero for free generators.
    #[serde(with = "crate::serde_util::bigint")]
    pub order: BigInt,
    pub cochain: TwistedCochain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologySummary {
    pub degree: usize,
    /// Rank `n` of the coefficient lattice.
    pub dim: usize,
    pub coefficients: String,
    pub shape: AbelianGroup,
    pub per_cell: Vec<Vec<CyclicFactor>>,
    pub generators: Vec<GeneratorSummary>,
}

impl CohomologySummary {
    pub fn from_group(h2: &CohomologyGroup) -> Self {
        let names = generator_names(h2);
        let generators = names
            .into_iter()
            .zip(&h2.generators)
            .zip(&h2.orders)
            .map(|((name, cochain), order)| GeneratorSummary { name, order: order.clone(), cochain: cochain.clone() })
            .collect();
        CohomologySummary {
            degree: h2.degree,
            dim: h2.dim,
            coefficients: h2.coefficients.clone(),
            shape: h2.shape.clone(),
            per_cell: h2.per_cell.clone(),
            generators,
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }
}

/// `H³(B; Q)` with the basis used for the rows of `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H3Summary {
    pub dimension: usize,
    #[serde(with = "crate::serde_util::rational_mat")]
    pub basis: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DValue {
    pub generator: String,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub value: Vec<BigRational>,
}

/// A generator of H² outside `R`: the class of a fake fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub generator: String,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub value: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub title: Option<String>,
    pub input_sha256: String,
    pub validations: Vec<CheckReport>,
    pub h2: Option<CohomologySummary>,
    pub h3: Option<H3Summary>,
    pub obstruction: Option<ObstructionMap>,
    pub d_values: Vec<DValue>,
    pub realizable: Option<RealizableSubgroup>,
    pub defining_relations: Vec<String>,
    pub witness: Option<Witness>,
    pub errors: Vec<String>,
}

impl ObstructionReport {
    pub fn validations_passed(&self) -> bool {
        self.validations.iter().all(CheckReport::passed)
    }

    /// Every validation passed and every stage completed.
    pub fn succeeded(&self) -> bool {
        self.validations_passed() && self.errors.is_empty()
    }
}

/// Relations of every representation, the duality between the bound pair,
/// `∂∂ = 0` under every representation and the augmentation, and the
/// diagonal certification.
pub fn run_validations(problem: &ProblemFile, diagonal: &DiagonalCheckConfig) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> =
        problem.representations.iter().map(|r| check_relations(r, &problem.presentation)).collect();
    out.push(check_duality(problem.form_rep(), problem.coefficient_rep(), problem.generator_names()));
    let mut systems: Vec<&dyn Coefficients> = problem.representations.iter().map(|r| r as &dyn Coefficients).collect();
    systems.push(&Augmentation);
    out.extend(validate_complex(&problem.complex, &systems));
    out.extend(validate_diagonal(
        &problem.complex,
        &problem.diagonal,
        problem.coefficient_rep(),
        problem.form_rep(),
        &problem.periods,
        problem.generator_names(),
        diagonal,
    ));
    out
}

/// Intermediate results, each either computed or failed with a message.
pub struct Stages {
    pub validations: Vec<CheckReport>,
    pub h2: Result<CohomologyGroup, String>,
    pub h3: Result<RationalCohomology, String>,
    pub obstruction: Result<ObstructionMap, String>,
    pub realizable: Result<RealizableSubgroup, String>,
}

/// Runs every stage on `problem`; `input` is the file text, used for the digest.
pub fn analyze(problem: &ProblemFile, input: &str, diagonal: &DiagonalCheckConfig) -> ObstructionReport {
    let validations = run_validations(problem, diagonal);
    let rho = problem.coefficient_rep();
    let h2 = twisted_cohomology(&problem.complex, rho, 2).map_err(|e| format!("H²: {e}"));
    let h3 = untwisted_cohomology_q(&problem.complex, 3).map_err(|e| format!("H³: {e}"));
    let obstruction = match (&h2, &h3) {
        (Ok(h2), Ok(h3)) => dd_matrix_with(
            &problem.complex,
            h2,
            h3,
            &problem.diagonal,
            rho,
            problem.form_rep(),
            &problem.periods,
        )
        .map_err(|e| format!("obstruction map: {e}")),
        _ => Err("obstruction map: not computed".into()),
    };
    let realizable = match (&obstruction, &h2) {
        (Ok(d), Ok(h2)) => realizable_subgroup(d, h2).map_err(|e| format!("realizable subgroup: {e}")),
        _ => Err("realizable subgroup: not computed".into()),
    };
    build_report(problem, input, Stages { validations, h2, h3, obstruction, realizable })
}

/// Assembles the report. Failed stages are recorded in `errors`, except
/// knock-on failures of stages that depended on them.
pub fn build_report(problem: &ProblemFile, input: &str, stages: Stages) -> ObstructionReport {
    let mut errors = Vec::new();
    let h2 = keep(&mut errors, stages.h2.map(|g| CohomologySummary::from_group(&g)));
    let h3 = keep(&mut errors, stages.h3.map(|h| H3Summary { dimension: h.dimension(), basis: h.basis.clone() }));
    let obstruction = keep(&mut errors, stages.obstruction);
    let realizable = keep(&mut errors, stages.realizable);

    let names = h2.as_ref().map(CohomologySummary::names).unwrap_or_default();
    let mut d_values = Vec::new();
    let mut witness = None;
    if let Some(d) = &obstruction {
        for (j, name) in names.iter().enumerate() {
            let value = d.column(j);
            if witness.is_none() && value.iter().any(|x| !x.is_zero()) {
                witness = Some(Witness { index: j, generator: name.clone(), value: value.clone() });
            }
            d_values.push(DValue { generator: name.clone(), value });
        }
    }
    let defining_relations = realizable
        .as_ref()
        .map(|r| r.relations.iter().map(|rel| relation_text(rel, &names)).collect())
        .unwrap_or_default();

    ObstructionReport {
        title: problem.meta.title.clone(),
        input_sha256: hex::encode(Sha256::digest(input.as_bytes())),
        validations: stages.validations,
        h2,
        h3,
        obstruction,
        d_values,
        realizable,
        defining_relations,
        witness,
        errors,
    }
}

fn keep<T>(errors: &mut Vec<String>, r: Result<T, String>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(e) => {
            if !e.ends_with("not computed") {
                errors.push(e);
            }
            None
        }
    }
}
