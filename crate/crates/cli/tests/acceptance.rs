//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use iaf_core::corpus;
use iaf_core::eqcomplex::{coboundary_matrix, twisted_cohomology, untwisted_cohomology_q, validate_complex};
use iaf_core::exactla::{cokernel_invariants, hnf_rows, int_kernel, snf, AbelianGroup, IntMatrix};
use iaf_core::grpring::{check_duality, Augmentation, Coefficients, Representation};
use iaf_core::obstruction::{validate_diagonal, DiagonalCheckConfig};
use iaf_core::problem::{parse_problem, serialize_problem, ProblemFile};
use iaf_core::realizable::{analyze, ObstructionReport};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(text: &str) -> Result<ProblemFile, String> {
    parse_problem(text).map_err(|e| e.to_string())
}

fn report(text: &str) -> Result<ObstructionReport, String> {
    let r = analyze(&load(text)?, text, &DiagonalCheckConfig::default());
    ensure(r.succeeded(), || format!("validation or stage failure: {:?}", r.errors))?;
    Ok(r)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

fn rats(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

fn group(free: usize, torsion: &[i64]) -> AbelianGroup {
    AbelianGroup { free_rank: free, torsion: ints(torsion) }
}

fn check_regression(text: &str, h2: AbelianGroup, d: &[i64], r: AbelianGroup, relation: &str) -> Outcome {
    let rep = report(text)?;
    let got = rep.h2.as_ref().ok_or("no H²")?;
    ensure(got.shape == h2, || format!("H² = {}, expected {h2}", got.shape))?;
    let map = rep.obstruction.as_ref().ok_or("no D")?;
    ensure(map.matrix == vec![rats(d)], || format!("D = {:?}", map.matrix))?;
    let sub = rep.realizable.as_ref().ok_or("no R")?;
    ensure(sub.shape == r, || format!("R = {}, expected {r}", sub.shape))?;
    ensure(rep.defining_relations == [relation], || format!("relations {:?}", rep.defining_relations))
}

fn criterion_1() -> Outcome {
    check_regression(corpus::T3, group(9, &[]), &[1, 0, 0, 0, 1, 0, 0, 0, 1], group(8, &[]), "c11 + c22 + c33 = 0")
}

fn criterion_2() -> Outcome {
    check_regression(corpus::HEISENBERG, group(5, &[]), &[0, 1, 0, 0, 1], group(4, &[]), "c22 + c33 = 0")?;
    let rep = report(corpus::HEISENBERG)?;
    let shape = iaf_core::eqcomplex::format_per_cell(&rep.h2.unwrap().per_cell);
    ensure(shape == "(0⊕0⊕0)⊕(Z⊕Z⊕0)⊕(Z⊕Z⊕Z)", || format!("per-cell shape {shape}"))
}

fn criterion_3() -> Outcome {
    check_regression(
        corpus::MAPPING_TORUS,
        group(5, &[2, 2]),
        &[1, 0, 1, 0, 1, 0, 0],
        group(4, &[2, 2]),
        "c11 + c22 + c33 = 0",
    )?;
    let p = load(corpus::MAPPING_TORUS)?;
    let rho = p.coefficient_rep();
    let h2 = twisted_cohomology(&p.complex, rho, 2).map_err(|e| e.to_string())?;
    ensure(h2.per_cell_string() == "(Z⊕Z/2⊕Z)⊕(0⊕Z⊕0)⊕(Z⊕Z/2⊕Z)", || h2.per_cell_string())?;
    // cocycles: exactly φ₁(e2_2) = 0 = φ₃(e2_2)
    let mut cocycles = Vec::new();
    for i in (0..9).filter(|i| *i != 3 && *i != 5) {
        let mut v = ints(&[0; 9]);
        v[i] = 1.into();
        cocycles.push(v);
    }
    ensure(h2.cocycle_basis().row_vectors() == cocycles, || "cocycle conditions differ".into())?;
    // coboundaries: φ₂(e2_1) = 2k₁ (and likewise on e2_3)
    let delta = coboundary_matrix(&p.complex, rho, 1).map_err(|e| e.to_string())?;
    let image = hnf_rows(&delta.transpose()).row_vectors();
    let expected = vec![ints(&[0, 2, 0, 0, 0, 0, 0, 0, 0]), ints(&[0, 0, 0, 0, 0, 0, 0, 2, 0])];
    ensure(image == expected, || format!("coboundary lattice {image:?}"))
}

fn criterion_4() -> Outcome {
    for (name, text) in corpus::ALL {
        let p = load(text)?;
        let mut systems: Vec<&dyn Coefficients> = p.representations.iter().map(|r| r as &dyn Coefficients).collect();
        systems.push(&Augmentation);
        for r in validate_complex(&p.complex, &systems) {
            ensure(r.passed(), || format!("{name}: {r}"))?;
        }
    }
    let p = load(corpus::T3)?;
    let trivial = Representation::trivial("trivial", 1, 3);
    let mut betti = Vec::new();
    for k in 0..=3 {
        let h = twisted_cohomology(&p.complex, &trivial, k).map_err(|e| e.to_string())?;
        let q = untwisted_cohomology_q(&p.complex, k).map_err(|e| e.to_string())?;
        ensure(h.shape.free_rank == q.dimension(), || format!("degree {k}: Z and Q ranks differ"))?;
        betti.push(h.shape.free_rank);
    }
    ensure(betti == [1, 3, 3, 1], || format!("Betti numbers {betti:?}"))
}

fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

fn to_int(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
            (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Cokernel from the gcds of all k×k minors.
fn cokernel_by_minors(m: &[Vec<i64>]) -> AbelianGroup {
    let (rows, cols) = (m.len(), m[0].len());
    let mut prev = 1;
    let mut rank = 0;
    let mut torsion = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        rank = k;
        if g / prev > 1 {
            torsion.push(BigInt::from(g / prev));
        }
        prev = g;
    }
    AbelianGroup { free_rank: rows - rank, torsion }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let one = BigInt::from(1);
    for case in 0..1000 {
        let rows = random_matrix(&mut rng, 6, 9);
        let a = to_int(&rows);
        let r = snf(&a);
        ensure(&(&r.u * &a) * &r.v == r.s, || format!("case {case}: S != U·A·V"))?;
        ensure(r.u.det().magnitude() == one.magnitude() && r.v.det().magnitude() == one.magnitude(), || {
            format!("case {case}: transforms not unimodular")
        })?;
        let d = r.diagonal();
        for w in d.windows(2) {
            let ok = w[1] == BigInt::from(0) || (w[0] != BigInt::from(0) && &w[1] % &w[0] == BigInt::from(0));
            ensure(ok, || format!("case {case}: divisibility chain broken in {d:?}"))?;
        }
        let k = int_kernel(&a);
        if !k.is_empty() {
            let basis: Vec<Vec<i64>> = k.iter().map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
            let maximal = subsets(basis[0].len(), basis.len())
                .into_iter()
                .map(|cs| det(&basis.iter().map(|r| cs.iter().map(|&j| r[j]).collect()).collect::<Vec<_>>()))
                .fold(0, gcd);
            ensure(maximal == 1, || format!("case {case}: kernel not saturated"))?;
        }
    }
    for case in 0..500 {
        let rows = random_matrix(&mut rng, 3, 3);
        let got = cokernel_invariants(&to_int(&rows));
        let expected = cokernel_by_minors(&rows);
        ensure(got == expected, || format!("cokernel case {case}: {got} vs {expected}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for (name, text) in corpus::ALL {
        let p = load(text)?;
        let reports = validate_diagonal(
            &p.complex,
            &p.diagonal,
            p.coefficient_rep(),
            p.form_rep(),
            &p.periods,
            p.generator_names(),
            &DiagonalCheckConfig::full(6),
        );
        for r in &reports[..2] {
            ensure(r.passed(), || format!("{name}: {r}"))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for (name, text) in corpus::ALL {
        let p = load(text)?;
        let r = check_duality(p.form_rep(), p.coefficient_rep(), p.generator_names());
        ensure(r.passed(), || format!("{name}: {r}"))?;
    }
    let text = std::fs::read_to_string(fixture("t3_corrupt_duality")).map_err(|e| e.to_string())?;
    let p = load(&text)?;
    let r = check_duality(p.form_rep(), p.coefficient_rep(), p.generator_names());
    ensure(!r.passed() && r.check == "duality[rho = ell^-T]", || "corrupted fixture was not rejected".into())?;
    let status = cli(&["validate", &fixture("t3_corrupt_duality")])?.0;
    ensure(status == 1, || format!("validate exited {status}"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}.iaf", env!("CARGO_MANIFEST_DIR"))
}

fn corpus_path(name: &str) -> String {
    format!("{}/../core/corpus/{name}.iaf", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_iaf")).args(args).env_remove("IAF_COLOR").output();
    let out = out.map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_8() -> Outcome {
    for (name, text) in corpus::ALL {
        let p = load(text)?;
        let again = load(&serialize_problem(&p))?;
        ensure(again == p, || format!("{name}: parse(serialize(p)) != p"))?;
        for format in ["text", "json"] {
            let path = corpus_path(name);
            let a = cli(&["report", &path, "--format", format, "--check-diagonal"])?;
            let b = cli(&["report", &path, "--format", format, "--check-diagonal"])?;
            ensure(a.0 == 0, || format!("{name}: report exited {}", a.0))?;
            ensure(a == b, || format!("{name}: {format} reports differ between runs"))?;
        }
    }
    let cases = [
        (corpus_path("heisenberg"), 0),
        (fixture("t3_corrupt_boundary"), 1),
        (fixture("mapping_torus_corrupt_boundary"), 1),
        (fixture("t3_corrupt_duality"), 1),
        (fixture("missing_diagonal"), 2),
        (fixture("parse_error"), 2),
    ];
    for (path, expected) in cases {
        let status = cli(&["validate", &path])?.0;
        ensure(status == expected, || format!("{path}: exit {status}, expected {expected}"))?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("T³ regression", criterion_1),
        ("Heisenberg regression", criterion_2),
        ("mapping-torus regression", criterion_3),
        ("complexes: ∂∂ = 0 and Betti numbers of T³", criterion_4),
        ("linear algebra: Smith form, saturation, cokernels", criterion_5),
        ("obstruction descent and re-lift invariance", criterion_6),
        ("duality check", criterion_7),
        ("CLI contract", criterion_8),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("PASS {}: {label}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {label}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
