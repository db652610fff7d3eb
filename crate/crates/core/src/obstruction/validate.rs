use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dd_evaluate, DiagonalApproximation, PeriodAssignment};
use crate::check::CheckReport;
use crate::eqcomplex::{
    coboundary_matrix, twisted_cohomology, untwisted_cohomology_q, EquivariantComplex, TwistedCochain,
};
use crate::grpring::{Coefficients, Letter, Word};

/// Sizes of the randomized part of [`validate_diagonal`]. The deterministic
/// part (every basis one-cochain, every generator and inverse as a re-lift)
/// always runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct DiagonalCheckConfig {
    pub random_cochains: usize,
    pub random_relifts: usize,
    pub seed: u64,
}


impl DiagonalCheckConfig {
    /// 100 random one-cochains with entries in [-5, 5] and 20 random re-lifts
    /// by words of length at most 3.
    pub fn full(seed: u64) -> Self {
        DiagonalCheckConfig { random_cochains: 100, random_relifts: 20, seed }
    }
}

fn random_word(rng: &mut ChaCha8Rng, generators: usize) -> Word {
    let len = rng.gen_range(1..=3);
    Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..generators), rng.gen_bool(0.5))))
}

fn fmt_class(x: &[BigRational]) -> String {
    format!("[{}]", x.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Certifies a diagonal table:
/// (a) cup products of coboundaries are exact,
/// (b) re-lifting a three-cell by a group element leaves the classes of the
///     H² generators unchanged,
/// (c) evaluation is additive.
#[allow(clippy::too_many_arguments)]
pub fn validate_diagonal(
    complex: &EquivariantComplex,
    diagonal: &DiagonalApproximation,
    rep_coeff: &dyn Coefficients,
    rep_form: &dyn Coefficients,
    periods: &PeriodAssignment,
    generator_names: &[String],
    config: &DiagonalCheckConfig,
) -> Vec<CheckReport> {
    let mut a = CheckReport::new("diagonal (a) coboundaries are exact");
    let mut b = CheckReport::new("diagonal (b) re-lift invariance");
    let mut c = CheckReport::new("diagonal (c) additivity");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let generator_count = generator_names.len();
    let n = rep_coeff.dim();
    let ones = complex.cells(1).len();
    let twos = complex.cells(2).len();

    let setup = (|| {
        let h3 = untwisted_cohomology_q(complex, 3)?;
        let delta1 = coboundary_matrix(complex, rep_coeff, 1)?;
        let h2 = twisted_cohomology(complex, rep_coeff, 2)?;
        Ok::<_, super::ObstructionError>((h3, delta1, h2))
    })();
    let (h3, delta1, h2) = match setup {
        Ok(x) => x,
        Err(e) => {
            for r in [&mut a, &mut b, &mut c] {
                r.fail("setup", e.to_string());
            }
            return vec![a, b, c];
        }
    };
    let eval = |cx: &EquivariantComplex, d: &DiagonalApproximation, cochain: &TwistedCochain| {
        dd_evaluate(cx, d, rep_coeff, rep_form, periods, cochain)
    };

    // (a)
    let mut psis: Vec<(String, Vec<BigInt>)> = (0..ones * n)
        .map(|p| {
            let mut v = vec![BigInt::from(0); ones * n];
            v[p] = BigInt::from(1);
            (format!("basis 1-cochain {}[{}]", complex.cells(1)[p / n], p % n + 1), v)
        })
        .collect();
    for s in 0..config.random_cochains {
        let v = (0..ones * n).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect();
        psis.push((format!("random 1-cochain #{s}"), v));
    }
    for (label, psi) in psis {
        let dpsi = TwistedCochain::from_flat(2, n, &delta1.mul_vec(&psi));
        match eval(complex, diagonal, &dpsi).map_err(|e| e.to_string()).and_then(|w| {
            h3.coordinates(&w).map_err(|e| e.to_string())
        }) {
            Ok(cls) if cls.iter().all(num_traits::Zero::is_zero) => {}
            Ok(cls) => a.fail(label, format!("class of the cup product of its coboundary is {}", fmt_class(&cls))),
            Err(e) => a.fail(label, e),
        }
    }

    // (b)
    let baseline: Vec<Result<Vec<BigRational>, String>> = h2
        .generators
        .iter()
        .map(|g| {
            eval(complex, diagonal, g)
                .map_err(|e| e.to_string())
                .and_then(|w| h3.coordinates(&w).map_err(|e| e.to_string()))
        })
        .collect();
    let mut words: Vec<Word> = vec![Word::identity()];
    for g in 0..generator_count {
        words.push(Word::from_letters([Letter::new(g, false)]));
        words.push(Word::from_letters([Letter::new(g, true)]));
    }
    if generator_count > 0 {
        for _ in 0..config.random_relifts {
            words.push(random_word(&mut rng, generator_count));
        }
    }
    for (cell, cell_name) in complex.cells(3).iter().enumerate() {
        for w in &words {
            let cx = complex.relift(3, cell, w);
            let d = diagonal.relift(cell, w);
            let h3w = match untwisted_cohomology_q(&cx, 3) {
                Ok(h) => h,
                Err(e) => {
                    b.fail(format!("{cell_name} re-lifted"), e.to_string());
                    continue;
                }
            };
            for (j, g) in h2.generators.iter().enumerate() {
                let got = eval(&cx, &d, g)
                    .map_err(|e| e.to_string())
                    .and_then(|v| h3w.coordinates(&v).map_err(|e| e.to_string()));
                if got != baseline[j] {
                    let show = |r: &Result<Vec<BigRational>, String>| match r {
                        Ok(v) => fmt_class(v),
                        Err(e) => e.clone(),
                    };
                    b.fail(
                        format!("{cell_name} re-lifted by {}", w.display(generator_names)),
                        format!("generator {} changes from {} to {}", j + 1, show(&baseline[j]), show(&got)),
                    );
                }
            }
        }
    }

    // (c)
    let mut pairs: Vec<(TwistedCochain, TwistedCochain)> =
        h2.generators.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    for _ in 0..config.random_cochains.min(20) {
        let mut r = || {
            let v: Vec<BigInt> = (0..twos * n).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect();
            TwistedCochain::from_flat(2, n, &v)
        };
        pairs.push((r(), r()));
    }
    for (i, (x, y)) in pairs.iter().enumerate() {
        let lhs = eval(complex, diagonal, &x.add(y));
        let rhs = eval(complex, diagonal, x).and_then(|u| {
            eval(complex, diagonal, y).map(|v| u.iter().zip(&v).map(|(p, q)| p + q).collect::<Vec<_>>())
        });
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => c.fail(format!("pair {}", i + 1), format!("{} != {}", fmt_class(&l), fmt_class(&r))),
            (Err(e), _) | (_, Err(e)) => c.fail(format!("pair {}", i + 1), e.to_string()),
        }
    }
    vec![a, b, c]
}
