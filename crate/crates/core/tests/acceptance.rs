//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.
//!
//! Run with `cargo test -p abtv-core --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use abtv::{
    bf_partition, bf_partition_from_pairing, bf_tv_relation_check, discrete_bf_double_sum,
    homology, homology_all, pairing_sum_float, smith_normal_form, tensor_product, tv_invariant,
    BigInt, BigRational, EnumerationCap, IntMatrix, Normalization, TorsionPairing, TvMethod,
};
use common::{builders, lens_pairs};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive-enumeration bound for method equivalence and the double sum.
const BRUTE_BOUND: EnumerationCap = EnumerationCap(1_000_000);
const PAIRING_TOL: f64 = 1e-9;
const DOUBLE_SUM_TOL: f64 = 1e-6;
const PAPER_VALUE_BUDGET: Duration = Duration::from_secs(1);
const METHOD_SUITE_BUDGET: Duration = Duration::from_secs(60);

const ALL_METHODS: [TvMethod; 4] = [
    TvMethod::Brute,
    TvMethod::Snf,
    TvMethod::Formula,
    TvMethod::ClosedForm,
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn timed_tv(
    cc: &abtv::ChainComplex,
    p: usize,
    k: u64,
    method: TvMethod,
    norm: Normalization,
) -> Result<BigRational, String> {
    let start = Instant::now();
    let v = tv_invariant(cc, p, k, method, norm, BRUTE_BOUND)
        .map_err(|e| format!("p={p} k={k} {method:?}: {e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < PAPER_VALUE_BUDGET, || {
        format!("p={p} k={k} {method:?} took {elapsed:?}")
    })?;
    Ok(v.value)
}

/// Every method whose cost is acceptable: brute only within `BRUTE_BOUND`.
fn methods_for(cc: &abtv::ChainComplex, p: usize, k: u64) -> Vec<TvMethod> {
    let brute_ok = BRUTE_BOUND.check(k, cc.rank(p), "labelings").is_ok();
    ALL_METHODS
        .into_iter()
        .filter(|m| brute_ok || *m != TvMethod::Brute)
        .collect()
}

/// 1. Paper values, exact.
fn paper_values() -> Outcome {
    let fig = abtv::build_sphere3_figure();
    let mut checked = 0;
    for k in 1..=8u64 {
        for p in 0..3 {
            for m in methods_for(&fig, p, k) {
                let v = timed_tv(&fig, p, k, m, Normalization::Closed)?;
                ensure(v.is_one(), || {
                    format!("Z^{p}_TV(S^3 figure) k={k} {m:?} = {v}")
                })?;
                checked += 1;
            }
        }
    }
    for n in 1..=5 {
        let s = abtv::build_sphere_minimal(n).unwrap();
        for p in 0..n {
            for k in 1..=6u64 {
                for m in methods_for(&s, p, k) {
                    let v = timed_tv(&s, p, k, m, Normalization::Closed)?;
                    ensure(v.is_one(), || format!("Z^{p}_TV(S^{n}) k={k} {m:?} = {v}"))?;
                    checked += 1;
                }
            }
        }
    }
    let s1s2 = tensor_product(
        &abtv::build_sphere_minimal(1).unwrap(),
        &abtv::build_sphere_minimal(2).unwrap(),
    );
    for k in 1..=8u64 {
        for m in methods_for(&fig, 1, k) {
            let v = timed_tv(&fig, 1, k, m, Normalization::Tqft)?;
            ensure(v == rat(1, k as i64), || {
                format!("tqft Z^1_TV(S^3) k={k} {m:?} = {v}")
            })?;
            checked += 1;
        }
        for m in methods_for(&s1s2, 1, k) {
            let v = timed_tv(&s1s2, 1, k, m, Normalization::Tqft)?;
            ensure(v.is_one(), || {
                format!("tqft Z^1_TV(S^1 x S^2) k={k} {m:?} = {v}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} exact values"))
}

/// 2. Lens-space BF by torsion formula and pairing sum, with float oracle.
fn lens_bf() -> Outcome {
    let mut checked = 0;
    for (r, s) in lens_pairs(12) {
        let cc = abtv::build_lens(r, s).unwrap();
        let tp = TorsionPairing::lens(r as u64, s).unwrap();
        for k in 1..=12i64 {
            let expect = BigInt::from(r.gcd(&k) * r);
            let torsion = bf_partition(&cc, 1, k as u64)
                .map_err(|e| e.to_string())?
                .value;
            let pairing = bf_partition_from_pairing(&tp, k as u64)
                .map_err(|e| e.to_string())?
                .value;
            ensure(torsion == expect && pairing == expect, || {
                format!("L({r},{s}) k={k}: torsion {torsion}, pairing {pairing}, expected {expect}")
            })?;
            let (re, im) = pairing_sum_float(&tp, k as u64).map_err(|e| e.to_string())?;
            let exact = expect.to_f64().unwrap();
            ensure(
                (re - exact).abs() <= PAIRING_TOL && im.abs() <= PAIRING_TOL,
                || format!("L({r},{s}) k={k}: float {re}+{im}i vs {exact}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (r,s,k) triples"))
}

/// 3. brute = snf = formula = closed_form wherever brute is feasible.
fn method_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for b in builders() {
        for p in 0..b.cc.dim() {
            for k in 1..=6u64 {
                if BRUTE_BOUND.check(k, b.cc.rank(p), "").is_err() {
                    continue;
                }
                let values = ALL_METHODS
                    .iter()
                    .map(|&m| {
                        tv_invariant(&b.cc, p, k, m, Normalization::Closed, BRUTE_BOUND)
                            .map(|v| v.value)
                            .map_err(|e| format!("{} p={p} k={k} {m:?}: {e}", b.name))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ensure(values.windows(2).all(|w| w[0] == w[1]), || {
                    format!("{} p={p} k={k}: {values:?}", b.name)
                })?;
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < METHOD_SUITE_BUDGET, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{checked} cases in {elapsed:.2?}"))
}

/// 4. Z^p_BF = factor · Z^p_TV on every builder.
fn relation_theorem() -> Outcome {
    let mut checked = 0;
    let mut extra: Vec<(String, abtv::ChainComplex)> = Vec::new();
    let s1 = abtv::build_sphere_minimal(1).unwrap();
    for (r, s) in [(2, 1), (6, 5), (7, 2), (9, 4), (12, 7)] {
        extra.push((
            format!("L({r},{s}) x S^1"),
            tensor_product(&abtv::build_lens(r, s).unwrap(), &s1),
        ));
    }
    let all = builders().into_iter().map(|b| (b.name, b.cc)).chain(extra);
    for (name, cc) in all {
        for p in 1..cc.dim() {
            for k in 1..=6u64 {
                let rep = bf_tv_relation_check(&cc, p, k)
                    .map_err(|e| format!("{name} p={p} k={k}: {e}"))?;
                ensure(rep.ok, || format!("{name} p={p} k={k}: {rep:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (complex,p,k) cases"))
}

/// 5. Discrete BF double sum equals Z^p_TV, exactly and in floating point.
fn discrete_bf() -> Outcome {
    let mut checked = 0;
    for b in builders() {
        for p in 0..b.cc.dim() {
            for k in 1..=6u64 {
                if BRUTE_BOUND
                    .check(k, b.cc.rank(p) + b.cc.rank(p + 1), "")
                    .is_err()
                {
                    continue;
                }
                let d = discrete_bf_double_sum(&b.cc, p, k, BRUTE_BOUND)
                    .map_err(|e| format!("{} p={p} k={k}: {e}", b.name))?;
                let tv = tv_invariant(
                    &b.cc,
                    p,
                    k,
                    TvMethod::Snf,
                    Normalization::Closed,
                    BRUTE_BOUND,
                )
                .map_err(|e| e.to_string())?
                .value;
                let exact = tv.to_f64().unwrap();
                ensure(d.value == tv, || {
                    format!("{} p={p} k={k}: {} vs {tv}", b.name, d.value)
                })?;
                ensure((d.float_value - exact).abs() <= DOUBLE_SUM_TOL, || {
                    format!("{} p={p} k={k}: float {} vs {exact}", b.name, d.float_value)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn cofactor_det(m: &IntMatrix) -> BigInt {
    fn det(rows: &[Vec<BigInt>]) -> BigInt {
        if rows.is_empty() {
            return BigInt::one();
        }
        (0..rows.len())
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = rows[1..]
                    .iter()
                    .map(|r| [&r[..j], &r[j + 1..]].concat())
                    .collect();
                let t = &rows[0][j] * det(&minor);
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }
    det(&(0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>())
}

/// 6. Structural invariants.
fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..200 {
        let (r, c) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let entries: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
        let m = IntMatrix::from_i64(r, c, &entries);
        let snf = smith_normal_form(&m);
        ensure(&(&snf.u * &m) * &snf.v == snf.d, || {
            format!("trial {trial}: u·M·v != d")
        })?;
        ensure(
            cofactor_det(&snf.u).abs().is_one() && cofactor_det(&snf.v).abs().is_one(),
            || format!("trial {trial}: transforms not unimodular"),
        )?;
        let divs = snf.elementary_divisors();
        ensure(
            divs.iter().all(|d| d.is_positive())
                && divs.windows(2).all(|w| w[1].is_multiple_of(&w[0])),
            || format!("trial {trial}: divisors {divs:?}"),
        )?;
        ensure(
            (0..r).all(|i| (0..c).all(|j| (i == j && i < divs.len()) || snf.d[(i, j)].is_zero())),
            || format!("trial {trial}: d not diagonal"),
        )?;
    }
    let list = builders();
    for b in &list {
        b.cc.validate().map_err(|e| format!("{}: {e}", b.name))?;
        let n = b.cc.dim();
        let groups = homology_all(&b.cc);
        for k in 1..=12u64 {
            for p in 0..n {
                let q = n - 1 - p;
                ensure(
                    groups[p].hom_torsion_to_zk_size(k) == groups[q].hom_torsion_to_zk_size(k),
                    || format!("{}: torsion duality fails at p={p} k={k}", b.name),
                )?;
            }
        }
        for p in 0..n {
            let tv = tv_invariant(
                &b.cc,
                p,
                1,
                TvMethod::Snf,
                Normalization::Closed,
                BRUTE_BOUND,
            )
            .map_err(|e| e.to_string())?;
            ensure(tv.value.is_one(), || {
                format!("{}: Z^{p}_TV at k=1 is {}", b.name, tv.value)
            })?;
            if p >= 1 {
                let bf = bf_partition(&b.cc, p, 1).map_err(|e| e.to_string())?.value;
                let torsion = homology(&b.cc, p).unwrap().torsion_order();
                ensure(bf == torsion, || {
                    format!("{}: Z^{p}_BF at k=1 is {bf}, |T_p| = {torsion}", b.name)
                })?;
            }
        }
    }
    Ok(format!("200 random SNFs, {} builders", list.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 6] = [
        ("1 paper values (exact, <1 s each)", paper_values),
        (
            "2 lens-space BF = gcd(r,k)*r, both methods + float oracle 1e-9",
            lens_bf,
        ),
        (
            "3 method equivalence brute=snf=formula=closed_form, <60 s",
            method_equivalence,
        ),
        ("4 BF/TV relation on every builder", relation_theorem),
        (
            "5 discrete BF double sum = TV, exact + float 1e-6",
            discrete_bf,
        ),
        ("6 structural invariants", structural),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
