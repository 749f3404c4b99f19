//! Acceptance harness: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{cofactor_det, minor_gcd, random_matrix, random_unimodular};
use forms4d::arith::{divisors, euler_phi};
use forms4d::cyclotomic::oracle::embedding_trace_oracle;
use forms4d::cyclotomic::{cyclotomic_polynomial, CyclotomicElement, IntPolynomial};
use forms4d::exactla::{determinant, snf};
use forms4d::fpgroup::{aut_bruteforce, galois_surrogate, FreePart, GroupPresentation};
use forms4d::groupring::{
    abelian_group, frobenius_gram, frobenius_pairing, symmetric_group_s3, wedderburn_decompose,
    CyclotomicSummand, FiniteGroup, GroupRingElement,
};
use forms4d::quadform::{bilinear_value, e8_form, polarize, quadratic_value, short_vectors, Parity};
use forms4d::smooth4::{analyze_intersection_form, analyze_trace_form, fixture, Diagonalizable, TraceFormKind};
use forms4d::{BilinearForm, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn snf_suite() -> Outcome {
    let mut rng = rng(1);
    for case in 0..500 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let a = random_matrix(&mut rng, rows, cols, 9);
        let r = snf(&a).map_err(|e| e.to_string())?;
        ensure!(&(&r.u * &a) * &r.v == r.s, "case {case}: U·A·V != S");
        ensure!(r.s.is_diagonal(), "case {case}: S not diagonal");
        for m in [&r.u, &r.v] {
            ensure!(
                cofactor_det(&m.to_rows()).abs().is_one(),
                "case {case}: transform not unimodular"
            );
        }
        for w in r.diagonal.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure!(ok && !w[0].is_negative(), "case {case}: divisibility chain broken {:?}", r.diagonal);
        }
        let mut prod = BigInt::one();
        for k in 1..=rows.min(cols).min(3) {
            prod *= &r.diagonal[k - 1];
            ensure!(prod == minor_gcd(&a, k), "case {case}: d_1..d_{k} != gcd of {k}x{k} minors");
        }
    }
    Ok("500 matrices".into())
}

fn cyclotomic_trace() -> Outcome {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    for n in [3u64, 4, 5, 7, 8, 9, 12, 15, 16] {
        let dim = euler_phi(n) as usize;
        for _ in 0..50 {
            let coeffs: Vec<i64> = (0..dim).map(|_| rng.gen_range(-9..=9)).collect();
            let a = CyclotomicElement::new(n, coeffs).map_err(|e| e.to_string())?;
            let exact = a.trace().to_f64().unwrap();
            let approx = embedding_trace_oracle(&a, 30);
            let err = (exact - approx).abs();
            worst = worst.max(err);
            ensure!(err < 1e-6, "n = {n}: exact {exact} vs embeddings {approx}");
        }
    }
    for n in 1..=30u64 {
        let product = divisors(n)
            .into_iter()
            .map(|d| cyclotomic_polynomial(d).unwrap())
            .fold(IntPolynomial::one(), |acc, p| acc.mul(&p));
        ensure!(product == IntPolynomial::x_pow_minus_one(n as usize), "product over d | {n} != x^n - 1");
    }
    Ok(format!("max |error| {worst:.1e}"))
}

fn random_element(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>) -> GroupRingElement {
    let coeffs: Vec<i64> = (0..g.order()).map(|_| rng.gen_range(-5..=5)).collect();
    GroupRingElement::new(g, coeffs).unwrap()
}

fn frobenius_identity() -> Outcome {
    let mut rng = rng(3);
    let groups = [
        ("Z/2", abelian_group(&[2]).unwrap()),
        ("Z/6", abelian_group(&[6]).unwrap()),
        ("Z/3+Z/5", abelian_group(&[3, 5]).unwrap()),
        ("S3", symmetric_group_s3()),
    ];
    for (name, g) in &groups {
        for _ in 0..100 {
            let x = random_element(&mut rng, g);
            let y = random_element(&mut rng, g);
            let z = random_element(&mut rng, g);
            let lhs = frobenius_pairing(&x.mul(&y).unwrap(), &z).unwrap();
            let rhs = frobenius_pairing(&x, &y.mul(&z).unwrap()).unwrap();
            ensure!(lhs == rhs, "{name}: Q(xy,z) = {lhs} but Q(x,yz) = {rhs}");
        }
        let det = determinant(&frobenius_gram(g)).unwrap();
        ensure!(!det.is_zero(), "{name}: Frobenius Gram is degenerate");
    }
    Ok("4 groups x 100 triples".into())
}

fn summands(pairs: &[(u64, u64)]) -> Vec<CyclotomicSummand> {
    pairs
        .iter()
        .map(|&(conductor, multiplicity)| CyclotomicSummand { conductor, multiplicity })
        .collect()
}

fn wedderburn_census() -> Outcome {
    let groups: [&[u64]; 20] = [
        &[2, 3], &[2], &[7], &[12], &[2, 2], &[2, 4], &[3, 9], &[2, 2, 2], &[4, 4], &[6, 6],
        &[2, 30], &[64], &[2, 2, 2, 2], &[5, 25], &[3, 3, 3], &[8, 8], &[2, 4, 8], &[16, 32],
        &[2, 2, 2, 2, 2, 2, 2, 2, 2], &[511],
    ];
    for inv in groups {
        let g = abelian_group(inv).map_err(|e| e.to_string())?;
        let w = wedderburn_decompose(&g).map_err(|e| e.to_string())?;
        ensure!(w.dimension() == g.order() as u64, "{inv:?}: sum m_d phi(d) = {} != {}", w.dimension(), g.order());
    }
    for p in [3u64, 5, 7] {
        let w = wedderburn_decompose(&abelian_group(&[p]).unwrap()).unwrap();
        ensure!(w.census == summands(&[(1, 1), (p, 1)]), "Z/{p}: census {:?}", w.census);
        ensure!(w.invariant_summands == Some(summands(&[(p, 1)])), "Z/{p}: factor list {:?}", w.invariant_summands);
        ensure!(w.matches_invariant_summands() == Some(false), "Z/{p}: discrepancy not flagged");
        ensure!(
            w.notes.iter().any(|n| n.contains("trivial summand")),
            "Z/{p}: trivial-summand note missing: {:?}",
            w.notes
        );
    }
    Ok("20 groups; trivial-summand note present for Z/3, Z/5, Z/7".into())
}

fn trace_forms() -> Outcome {
    for p in [3u64, 5, 7, 11] {
        let a = analyze_trace_form(TraceFormKind::OddPrime(p)).map_err(|e| e.to_string())?;
        let f = forms4d::quadform::trace_form_odd_prime(p).unwrap();
        ensure!(f == BilinearForm::identity(p as usize), "odd trace form for {p} is not I_{p}");
        ensure!(a.computed_signature == p as i64, "signature for {p}: {}", a.computed_signature);
    }
    for n in [4u32, 5] {
        let a = analyze_trace_form(TraceFormKind::TwoPower(n)).map_err(|e| e.to_string())?;
        let two_n = 1i64 << n;
        ensure!(a.report.rank == 1 << (n + 1), "n = {n}: rank {}", a.report.rank);
        ensure!(a.computed_signature == two_n - 2, "n = {n}: computed {}", a.computed_signature);
        ensure!(a.asserted_signature == Some(two_n), "n = {n}: asserted {:?}", a.asserted_signature);
        ensure!(a.signature_discrepancy, "n = {n}: discrepancy not flagged");
        let json = serde_json::to_string(&a).unwrap();
        ensure!(
            json.contains(&format!("\"computed_signature\":{}", two_n - 2))
                && json.contains(&format!("\"asserted_signature\":{two_n}")),
            "n = {n}: report lacks one of the two signatures"
        );
    }
    Ok("I_p for p = 3,5,7,11; two-power n = 4,5 computed 14/30 vs asserted 16/32".into())
}

fn strip_notes(mut r: forms4d::smooth4::ObstructionReport) -> forms4d::smooth4::ObstructionReport {
    r.notes.sort();
    r
}

fn obstruction_fixtures() -> Outcome {
    let e8 = e8_form();
    let pairs = short_vectors(&e8, 2).map_err(|e| e.to_string())?;
    ensure!(pairs.len() * 2 == 240, "E8 norm <= 2 vectors: {} counting ±", pairs.len() * 2);
    ensure!(short_vectors(&e8, 1).unwrap().is_empty(), "E8 has norm-1 vectors");

    let r = analyze_intersection_form(&e8).map_err(|e| e.to_string())?;
    ensure!(r.parity == Parity::Even && r.unimodular && r.definite, "E8 invariants: {}", r.to_json());
    ensure!(r.signature_value == 8 && r.signature.positive == 8, "E8 signature {}", r.signature_value);
    ensure!(r.rokhlin_violation, "E8: Rokhlin violation did not fire");

    let r = analyze_intersection_form(&fixture("e8e8").unwrap()).map_err(|e| e.to_string())?;
    ensure!(r.signature_value == 16, "E8+E8 signature {}", r.signature_value);
    ensure!(!r.rokhlin_violation, "E8+E8: Rokhlin fired");
    ensure!(r.donaldson_violation && r.diagonalizable == Diagonalizable::No, "E8+E8: Donaldson did not fire");

    for n in 1..=16 {
        let r = analyze_intersection_form(&BilinearForm::identity(n)).map_err(|e| e.to_string())?;
        ensure!(!r.smooth_obstructed, "I_{n} reported obstructed");
    }

    let mut rng = rng(6);
    let mut cases: Vec<(String, BilinearForm)> = vec![("e8".into(), e8.clone()), ("e8e8".into(), fixture("e8e8").unwrap())];
    cases.extend((1..=16).map(|n| (format!("I_{n}"), BilinearForm::identity(n))));
    for (name, f) in &cases {
        let base = strip_notes(analyze_intersection_form(f).unwrap());
        for _ in 0..20 {
            let p = random_unimodular(&mut rng, f.rank(), 12);
            let g = f.transform(&p).map_err(|e| e.to_string())?;
            let r = strip_notes(analyze_intersection_form(&g).map_err(|e| e.to_string())?);
            ensure!(r == base, "{name}: report changed under basis change: {} vs {}", r.to_json(), base.to_json());
        }
    }
    Ok("240 roots; 18 fixtures x 20 basis changes".into())
}

fn coprime_lists(max_product: u64) -> Vec<Vec<u64>> {
    fn rec(start: u64, product: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for m in start..=max / product {
            if m < 2 || cur.iter().any(|&c| num_integer::gcd(c, m) != 1) {
                continue;
            }
            cur.push(m);
            rec(m + 1, product * m, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(2, 1, max_product, &mut Vec::new(), &mut out);
    out
}

fn aut_validation() -> Outcome {
    let lists = coprime_lists(200);
    for list in &lists {
        let g = abelian_group(list).map_err(|e| e.to_string())?;
        let brute = aut_bruteforce(&g).map_err(|e| e.to_string())?;
        let formula: u64 = list.iter().map(|&m| euler_phi(m)).product();
        ensure!(brute.torsion.order == formula, "{list:?}: brute {} vs formula {formula}", brute.torsion.order);
        ensure!(brute.torsion.is_abelian, "{list:?}: Aut reported nonabelian");
    }
    let klein = aut_bruteforce(&abelian_group(&[2, 2]).unwrap()).unwrap();
    ensure!(klein.torsion.order == 6 && !klein.torsion.is_abelian, "Aut(Z/2+Z/2): {:?}", klein.torsion);
    Ok(format!("{} coprime lists; Aut(Z/2+Z/2) order 6 nonabelian", lists.len()))
}

fn abelianization_golden() -> Outcome {
    let run = |gens: usize, rels: Vec<Vec<i64>>| {
        galois_surrogate(&GroupPresentation::new(gens, rels).unwrap()).unwrap()
    };
    let (h1, aut) = run(2, vec![vec![1, 2, 1, -2, -1, -2]]);
    ensure!(h1.free_rank == 1 && h1.torsion.is_empty(), "trefoil: {h1:?}");
    ensure!(!h1.is_finite(), "trefoil H1 should be infinite");
    ensure!(
        aut.free_part == FreePart::AutZ && aut.split_order == Some(2) && aut.is_abelian,
        "trefoil Aut: {aut:?}"
    );
    let (h1, _) = run(2, vec![vec![1, 2, 1, -2]]);
    ensure!(h1.free_rank == 1 && h1.torsion == vec![2], "Klein bottle: {h1:?}");
    let (h1, aut) = run(1, vec![vec![1; 5]]);
    ensure!(h1.free_rank == 0 && h1.torsion == vec![5], "<a | a^5>: {h1:?}");
    ensure!(aut.split_order == Some(4) && aut.is_abelian, "<a | a^5> Aut: {aut:?}");
    Ok("trefoil Z, Klein Z+Z/2, Z/5 with Aut order 4".into())
}

fn polarization() -> Outcome {
    let mut rng = rng(9);
    for case in 0..100 {
        let n = rng.gen_range(1..=6);
        let mut rows = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let q = BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=7).into());
                rows[i][j] = q.clone();
                rows[j][i] = q;
            }
        }
        let g = RatMatrix::from_rows(rows).unwrap();
        let vec_of = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
            (0..n).map(|_| BigRational::from_integer(rng.gen_range(-10..=10).into())).collect()
        };
        let x = vec_of(&mut rng);
        let y = vec_of(&mut rng);
        let sum: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = BigRational::from_integer(2.into()) * bilinear_value(&g, &x, &y).unwrap();
        let rhs = quadratic_value(&g, &sum).unwrap() - quadratic_value(&g, &x).unwrap() - quadratic_value(&g, &y).unwrap();
        ensure!(lhs == rhs, "case {case}: 2B(x,y) = {lhs}, polarized {rhs}");
        ensure!(polarize(&g).unwrap() == g, "case {case}: polarization does not recover the Gram");
    }
    Ok("100 Grams".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("SNF suite", snf_suite, Some(Duration::from_secs(10))),
        ("cyclotomic trace", cyclotomic_trace, Some(Duration::from_secs(5))),
        ("Frobenius identity", frobenius_identity, None),
        ("Wedderburn census", wedderburn_census, None),
        ("explicit trace forms", trace_forms, None),
        ("obstruction fixtures", obstruction_fixtures, Some(Duration::from_secs(30))),
        ("Aut validation", aut_validation, None),
        ("abelianization golden cases", abelianization_golden, None),
        ("polarization", polarization, None),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => Err(format!("exceeded {}s", limit.as_secs())),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} {name} ({:.2}s): {detail}", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {name} ({:.2}s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 9 criteria passed in {:.2}s", 9 - failed, total.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
