use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use iaf_core::corpus;
use iaf_core::eqcomplex::{coboundary_matrix, twisted_cohomology, TwistedCochain};
use iaf_core::exactla::IntMatrix;
use iaf_core::grpring::{Coefficients, Letter, Representation, Word};
use iaf_core::obstruction::{dd_evaluate, h3_class, PeriodAssignment};
use iaf_core::problem::{parse_problem, ProblemFile};

fn problems() -> Vec<ProblemFile> {
    corpus::ALL.iter().map(|(_, t)| parse_problem(t).unwrap()).collect()
}

fn evaluate(p: &ProblemFile, c: &TwistedCochain) -> Vec<BigRational> {
    dd_evaluate(&p.complex, &p.diagonal, p.coefficient_rep(), p.form_rep(), &p.periods, c).unwrap()
}

fn cochain(p: &ProblemFile, degree: usize, values: &[i64]) -> TwistedCochain {
    let n = p.coefficient_rep().dim();
    let size = p.complex.cells(degree).len() * n;
    let flat: Vec<BigInt> = values.iter().cycle().take(size).map(|&v| v.into()).collect();
    TwistedCochain::from_flat(degree, n, &flat)
}

fn random_values() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 9)
}

fn short_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..=3)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cup_products_of_coboundaries_are_exact(values in random_values()) {
        for p in problems() {
            let psi = cochain(&p, 1, &values);
            let delta = coboundary_matrix(&p.complex, p.coefficient_rep(), 1).unwrap();
            let n = p.coefficient_rep().dim();
            let dpsi = TwistedCochain::from_flat(2, n, &delta.mul_vec(&psi.flatten()));
            let class = h3_class(&p.complex, &evaluate(&p, &dpsi)).unwrap();
            prop_assert!(class.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn evaluation_is_linear(x in random_values(), y in random_values(), k in -5i64..=5) {
        for p in problems() {
            let (cx, cy) = (cochain(&p, 2, &x), cochain(&p, 2, &y));
            let sum: Vec<BigRational> = evaluate(&p, &cx).iter().zip(evaluate(&p, &cy)).map(|(a, b)| a + b).collect();
            prop_assert_eq!(evaluate(&p, &cx.add(&cy)), sum);
            let k = BigInt::from(k);
            let scaled: Vec<BigRational> =
                evaluate(&p, &cx).iter().map(|a| a * BigRational::from_integer(k.clone())).collect();
            prop_assert_eq!(evaluate(&p, &cx.scale(&k)), scaled);
        }
    }

    #[test]
    fn frame_permutation_covariance(x in random_values(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        for p in problems() {
            let c = cochain(&p, 2, &x);
            let moved_c = TwistedCochain {
                values: c.values.iter().map(|v| permute(v, &perm)).collect(),
                ..c.clone()
            };
            let periods = PeriodAssignment {
                periods: p.periods.periods.iter().map(|v| permute(v, &perm)).collect(),
                ..p.periods.clone()
            };
            let rho = conjugate(p.coefficient_rep(), &perm);
            let ell = conjugate(p.form_rep(), &perm);
            let moved = dd_evaluate(&p.complex, &p.diagonal, &rho, &ell, &periods, &moved_c).unwrap();
            prop_assert_eq!(moved, evaluate(&p, &c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn generator_classes_survive_relifting(w in short_word()) {
        for p in problems() {
            let h2 = twisted_cohomology(&p.complex, p.coefficient_rep(), 2).unwrap();
            for cell in 0..p.complex.cells(3).len() {
                let cx = p.complex.relift(3, cell, &w);
                let diag = p.diagonal.relift(cell, &w);
                for g in &h2.generators {
                    let before = h3_class(&p.complex, &evaluate(&p, g)).unwrap();
                    let value =
                        dd_evaluate(&cx, &diag, p.coefficient_rep(), p.form_rep(), &p.periods, g).unwrap();
                    prop_assert_eq!(h3_class(&cx, &value).unwrap(), before);
                }
            }
        }
    }
}

/// `v'[perm[i]] = v[i]`.
fn permute<T: Clone>(v: &[T], perm: &[usize]) -> Vec<T> {
    let mut out = v.to_vec();
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = x.clone();
    }
    out
}

/// `P·M·Pᵀ` for the permutation matrix of `perm`.
fn conjugate(rep: &Representation, perm: &[usize]) -> Representation {
    let n = rep.dim();
    let mats = rep
        .matrices()
        .iter()
        .map(|m| {
            let mut out = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    out[(perm[i], perm[j])] = m[(i, j)].clone();
                }
            }
            out
        })
        .collect();
    rep.with_matrices(mats)
}

#[test]
fn torsion_generators_map_to_zero() {
    let p = parse_problem(corpus::MAPPING_TORUS).unwrap();
    let h2 = twisted_cohomology(&p.complex, p.coefficient_rep(), 2).unwrap();
    assert_eq!(h2.torsion_generators().len(), 2);
    for t in h2.torsion_generators() {
        let class = h3_class(&p.complex, &evaluate(&p, t)).unwrap();
        assert!(class.iter().all(Zero::is_zero));
    }
}

#[test]
fn heisenberg_witness_is_one_volume_class() {
    let p = parse_problem(corpus::HEISENBERG).unwrap();
    let h2 = twisted_cohomology(&p.complex, p.coefficient_rep(), 2).unwrap();
    let classes: Vec<Vec<BigRational>> =
        h2.generators.iter().map(|g| h3_class(&p.complex, &evaluate(&p, g)).unwrap()).collect();
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::zero();
    assert_eq!(classes, vec![vec![zero.clone()], vec![one.clone()], vec![zero.clone()], vec![zero], vec![one]]);
}
