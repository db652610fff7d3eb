use num_bigint::BigInt;
use num_rational::BigRational;

use iaf_core::corpus;
use iaf_core::eqcomplex::{
    coboundary_matrix, twisted_cohomology, untwisted_cohomology_q, validate_complex, CyclicFactor,
};
use iaf_core::exactla::{hnf_rows, AbelianGroup, IntMatrix};
use iaf_core::grpring::{check_duality, check_relations, Augmentation, Coefficients, Representation};
use iaf_core::obstruction::{validate_diagonal, DiagonalCheckConfig};
use iaf_core::problem::{parse_problem, ProblemFile};
use iaf_core::realizable::{analyze, generator_names, ObstructionReport};

fn load(text: &str) -> ProblemFile {
    parse_problem(text).expect("bundled file parses")
}

fn report(text: &str) -> ObstructionReport {
    analyze(&load(text), text, &DiagonalCheckConfig::default())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn row(values: &[i64]) -> Vec<BigRational> {
    values.iter().map(|&v| q(v)).collect()
}

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| v.into()).collect()
}

fn group(free: usize, torsion: &[i64]) -> AbelianGroup {
    AbelianGroup { free_rank: free, torsion: ints(torsion) }
}

#[test]
fn bundled_files_parse_with_expected_shapes() {
    let t3 = load(corpus::T3);
    assert_eq!(t3.complex.cell_counts(), vec![1, 3, 3, 1]);
    assert_eq!(t3.coefficient_rep().dim(), 3);
    assert!(t3.coefficient_rep().matrices().iter().all(IntMatrix::is_identity));

    let h = load(corpus::HEISENBERG);
    let rel = &h.presentation.relations()[0];
    let names = h.generator_names();
    assert_eq!(format!("{} = {}", rel.lhs.display(names), rel.rhs.display(names)), "a*b = c*b*a");
    // ℓ(a) in the permuted frame
    assert_eq!(h.form_rep().matrix(0).unwrap(), &IntMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1]]));

    assert_eq!(corpus::ALL.len(), 3);
    assert!(corpus::by_name("mapping_torus").is_some());
    assert!(corpus::by_name("klein").is_none());
}

#[test]
fn every_bundled_file_validates() {
    for (name, text) in corpus::ALL {
        let r = report(text);
        for v in &r.validations {
            assert!(v.passed(), "{name}: {v}");
        }
        assert!(r.errors.is_empty(), "{name}: {:?}", r.errors);
    }
}

#[test]
fn boundary_squares_to_zero_under_all_coefficients() {
    for (name, text) in corpus::ALL {
        let p = load(text);
        let mut systems: Vec<&dyn Coefficients> = p.representations.iter().map(|r| r as &dyn Coefficients).collect();
        systems.push(&Augmentation);
        let reports = validate_complex(&p.complex, &systems);
        assert_eq!(reports.len(), p.representations.len() + 1);
        assert!(reports.iter().all(|r| r.passed()), "{name}");
    }
}

#[test]
fn t3_betti_numbers_with_trivial_rank_one_coefficients() {
    let p = load(corpus::T3);
    let trivial = Representation::trivial("triv", 1, 3);
    let ranks: Vec<usize> = (0..=3).map(|k| twisted_cohomology(&p.complex, &trivial, k).unwrap().shape.free_rank).collect();
    assert_eq!(ranks, vec![1, 3, 3, 1]);
    let dims: Vec<usize> = (0..=3).map(|k| untwisted_cohomology_q(&p.complex, k).unwrap().dimension()).collect();
    assert_eq!(dims, vec![1, 3, 3, 1]);
    for k in 0..=3 {
        assert!(twisted_cohomology(&p.complex, &trivial, k).unwrap().shape.torsion.is_empty());
    }
}

#[test]
fn t3_regression() {
    let r = report(corpus::T3);
    let h2 = r.h2.as_ref().unwrap();
    assert_eq!(h2.shape, group(9, &[]));
    assert_eq!(h2.names(), ["c11", "c12", "c13", "c21", "c22", "c23", "c31", "c32", "c33"]);
    let d = r.obstruction.as_ref().unwrap();
    assert_eq!(d.matrix, vec![row(&[1, 0, 0, 0, 1, 0, 0, 0, 1])]);
    let rs = r.realizable.as_ref().unwrap();
    assert_eq!(rs.shape, group(8, &[]));
    assert_eq!(r.defining_relations, ["c11 + c22 + c33 = 0"]);
    let w = r.witness.as_ref().unwrap();
    assert_eq!((w.generator.as_str(), w.value.clone()), ("c11", row(&[1])));
}

#[test]
fn heisenberg_regression() {
    let p = load(corpus::HEISENBERG);
    let h2 = twisted_cohomology(&p.complex, p.coefficient_rep(), 2).unwrap();
    assert_eq!(h2.shape, group(5, &[]));
    use CyclicFactor::{Free as Z, Zero as O};
    assert_eq!(h2.per_cell, vec![vec![O, O, O], vec![Z, Z, O], vec![Z, Z, Z]]);
    assert_eq!(h2.per_cell_string(), "(0⊕0⊕0)⊕(Z⊕Z⊕0)⊕(Z⊕Z⊕Z)");
    assert_eq!(generator_names(&h2), ["c21", "c22", "c31", "c32", "c33"]);

    let r = report(corpus::HEISENBERG);
    assert_eq!(r.obstruction.as_ref().unwrap().matrix, vec![row(&[0, 1, 0, 0, 1])]);
    assert_eq!(r.realizable.as_ref().unwrap().shape, group(4, &[]));
    assert_eq!(r.defining_relations, ["c22 + c33 = 0"]);
    let w = r.witness.as_ref().unwrap();
    assert_eq!((w.generator.as_str(), w.value.clone()), ("c22", row(&[1])));
    // the H³ basis class is the Kronecker dual of the single 3-cell
    assert_eq!(r.h3.as_ref().unwrap().basis, vec![row(&[1])]);
}

#[test]
fn mapping_torus_regression() {
    let p = load(corpus::MAPPING_TORUS);
    let rho = p.coefficient_rep();
    let h2 = twisted_cohomology(&p.complex, rho, 2).unwrap();
    assert_eq!(h2.shape, group(5, &[2, 2]));
    assert_eq!(h2.per_cell_string(), "(Z⊕Z/2⊕Z)⊕(0⊕Z⊕0)⊕(Z⊕Z/2⊕Z)");
    assert_eq!(generator_names(&h2), ["c11", "c13", "c22", "c31", "c33", "c12", "c32"]);
    assert_eq!(h2.orders, ints(&[0, 0, 0, 0, 0, 2, 2]));

    // cocycle conditions: φ₁(e2_2) = 0 = φ₃(e2_2), nothing else
    let mut expected = Vec::new();
    for i in 0..9 {
        if i != 3 && i != 5 {
            let mut v = vec![BigInt::from(0); 9];
            v[i] = 1.into();
            expected.push(v);
        }
    }
    assert_eq!(h2.cocycle_basis().row_vectors(), expected);

    // coboundaries: φ₂(e2_1) and φ₂(e2_3) are even, everything else vanishes
    let delta1 = coboundary_matrix(&p.complex, rho, 1).unwrap();
    let image = hnf_rows(&delta1.transpose()).row_vectors();
    let mut e1 = vec![BigInt::from(0); 9];
    e1[1] = 2.into();
    let mut e7 = vec![BigInt::from(0); 9];
    e7[7] = 2.into();
    assert_eq!(image, vec![e1, e7]);

    let r = report(corpus::MAPPING_TORUS);
    assert_eq!(r.obstruction.as_ref().unwrap().matrix, vec![row(&[1, 0, 1, 0, 1, 0, 0])]);
    let rs = r.realizable.as_ref().unwrap();
    assert_eq!(rs.shape, group(4, &[2, 2]));
    assert_eq!(r.defining_relations, ["c11 + c22 + c33 = 0"]);
    // both torsion classes are realisable
    assert!(rs.coordinates.contains(&ints(&[0, 0, 0, 0, 0, 1, 0])));
    assert!(rs.coordinates.contains(&ints(&[0, 0, 0, 0, 0, 0, 1])));
}

#[test]
fn duality_holds_on_bundled_files_and_fails_when_corrupted() {
    for (name, text) in corpus::ALL {
        let p = load(text);
        assert!(check_duality(p.form_rep(), p.coefficient_rep(), p.generator_names()).passed(), "{name}");
        for r in &p.representations {
            assert!(check_relations(r, &p.presentation).passed(), "{name}");
        }
    }
    let p = load(corpus::HEISENBERG);
    let std = p.representation("ell_std").unwrap();
    let report = check_duality(std, p.coefficient_rep(), p.generator_names());
    assert!(!report.passed());
    assert_eq!(report.check, "duality[rho = ell_std^-T]");
    assert_eq!(report.failures[0].location, "generator a");
}

#[test]
fn randomized_diagonal_suite_passes() {
    for (name, text) in corpus::ALL {
        let p = load(text);
        let reports = validate_diagonal(
            &p.complex,
            &p.diagonal,
            p.coefficient_rep(),
            p.form_rep(),
            &p.periods,
            p.generator_names(),
            &DiagonalCheckConfig::full(2024),
        );
        assert_eq!(reports.len(), 3);
        for r in reports {
            assert!(r.passed(), "{name}: {r}");
        }
    }
}
