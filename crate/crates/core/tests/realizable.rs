use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use iaf_core::corpus;
use iaf_core::eqcomplex::{twisted_cohomology, untwisted_cohomology_q, CohomologyGroup};
use iaf_core::exactla::AbelianGroup;
use iaf_core::obstruction::{DiagonalCheckConfig, ObstructionError, ObstructionMap};
use iaf_core::problem::{parse_problem, ProblemFile};
use iaf_core::realizable::{analyze, build_report, realizable_subgroup, run_validations, ObstructionReport, Stages};

fn mapping_torus() -> (ProblemFile, CohomologyGroup) {
    let p = parse_problem(corpus::MAPPING_TORUS).unwrap();
    let h2 = twisted_cohomology(&p.complex, p.coefficient_rep(), 2).unwrap();
    (p, h2)
}

fn map(h2: &CohomologyGroup, rows: Vec<Vec<BigRational>>) -> ObstructionMap {
    ObstructionMap {
        target_dim: rows.len(),
        matrix: rows,
        free_rank: h2.shape.free_rank,
        torsion: h2.shape.torsion.clone(),
    }
}

fn rat_rows() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    prop::collection::vec(
        prop::collection::vec((-3i64..=3, 1i64..=3), 5)
            .prop_map(|v| v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect::<Vec<_>>()),
        1..=3,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_invariants(rows in rat_rows()) {
        let (_, h2) = mapping_torus();
        let zero = BigRational::zero();
        let full: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().cloned().chain([zero.clone(), zero.clone()]).collect()).collect();
        let d = map(&h2, full);
        let r = realizable_subgroup(&d, &h2).unwrap();
        for coords in &r.coordinates {
            let v: Vec<BigRational> = coords.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            prop_assert!(d.as_rat_matrix().mul_vec(&v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(r.shape.free_rank, h2.shape.free_rank - d.rank());
        prop_assert_eq!(&r.shape.torsion, &h2.shape.torsion);
        prop_assert_eq!(r.cochains.len(), r.coordinates.len());
        // relations cut out exactly the free part
        let free_kernel = r.coordinates.iter().filter(|c| c[5..].iter().all(Zero::is_zero)).count();
        prop_assert_eq!(free_kernel, r.shape.free_rank);
        for rel in &r.relations {
            for c in &r.coordinates {
                let dot: BigInt = rel.iter().zip(c).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
    }
}

#[test]
fn torsion_column_is_rejected() {
    let (_, h2) = mapping_torus();
    let mut row = vec![BigRational::zero(); 7];
    row[6] = BigRational::from_integer(1.into());
    let err = realizable_subgroup(&map(&h2, vec![row]), &h2).unwrap_err();
    assert_eq!(err, ObstructionError::TorsionClass { generator: 6 });
    assert!(err.to_string().contains("D(torsion) != 0"));
}

#[test]
fn mismatched_source_is_rejected() {
    let (_, h2) = mapping_torus();
    let d = map(&h2, vec![vec![BigRational::zero(); 3]]);
    assert!(matches!(realizable_subgroup(&d, &h2), Err(ObstructionError::Dimension(_))));
}

#[test]
fn zero_obstruction_map_realizes_everything() {
    let (p, h2) = mapping_torus();
    let d = map(&h2, vec![vec![BigRational::zero(); 7]]);
    let r = realizable_subgroup(&d, &h2).unwrap();
    assert_eq!(r.shape, h2.shape);
    let stages = Stages {
        validations: run_validations(&p, &DiagonalCheckConfig::default()),
        h3: untwisted_cohomology_q(&p.complex, 3).map_err(|e| e.to_string()),
        obstruction: Ok(d),
        realizable: Ok(r),
        h2: Ok(h2),
    };
    let report = build_report(&p, corpus::MAPPING_TORUS, stages);
    assert!(report.witness.is_none());
    assert!(report.defining_relations.is_empty());
    assert_eq!(report.realizable.unwrap().shape, AbelianGroup { free_rank: 5, torsion: vec![2.into(), 2.into()] });
}

#[test]
fn failed_stages_are_recorded() {
    let (p, _) = mapping_torus();
    let stages = Stages {
        validations: Vec::new(),
        h2: Err("H²: boom".into()),
        h3: Err("H³: boom".into()),
        obstruction: Err("obstruction map: not computed".into()),
        realizable: Err("realizable subgroup: not computed".into()),
    };
    let report = build_report(&p, "", stages);
    assert_eq!(report.errors, ["H²: boom", "H³: boom"]);
    assert!(!report.succeeded());
    assert!(report.witness.is_none() && report.d_values.is_empty());
}

#[test]
fn reports_round_trip_through_json() {
    for (name, text) in corpus::ALL {
        let p = parse_problem(text).unwrap();
        let report = analyze(&p, text, &DiagonalCheckConfig::default());
        let json = serde_json::to_string(&report).unwrap();
        let back: ObstructionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report, "{name}");
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}

#[test]
fn rationals_serialize_as_strings() {
    let (_, h2) = mapping_torus();
    let mut row = vec![BigRational::zero(); 7];
    row[0] = BigRational::new((-3).into(), 4.into());
    let json = serde_json::to_value(map(&h2, vec![row])).unwrap();
    assert_eq!(json["matrix"][0][0], "-3/4");
    assert_eq!(json["matrix"][0][1], "0");
    assert_eq!(json["torsion"][0], "2");
}

#[test]
fn reports_are_deterministic() {
    for (_, text) in corpus::ALL {
        let p = parse_problem(text).unwrap();
        let a = analyze(&p, text, &DiagonalCheckConfig::full(5));
        let b = analyze(&parse_problem(text).unwrap(), text, &DiagonalCheckConfig::full(5));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
