//! Acceptance criteria 1–9. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::time::{Duration, Instant};

use groupoid::extension::cross_validate_theorem4;
use groupoid::fixtures;
use groupoid::identities::{is_associative, is_cancellative, is_quasigroup, is_right_modular};
use groupoid::inflation::{
    candidate_subgroupoids, classify_witness, constant_witness_to_retraction, find_gen_inflation, find_retraction,
    verify_gen_inflation, verify_retraction,
};
use groupoid::magma::Magma;
use groupoid::morphisms::{apply_permutation, canonical_form, canonical_table, is_isomorphic, Permutation};
use groupoid::search::golden::parse_golden;
use groupoid::search::harness::{
    count_free_extensions_of_w, reproduce_example1, right_modular_catalog, verify_example2, verify_result1_and_lemma,
    verify_theorem1, verify_theorem2, verify_theorem3, verify_uniqueness_of_w, TheoremBounds,
};
use groupoid::search::{hunt_open_question, HuntBounds, HuntMode};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

/// Extensions of W: 4^9 candidates, exactly 4 right modular generalised inflations, all
/// inflations, one isomorphism class. Exact; under 60 s on one thread.
fn criterion1() -> Outcome {
    let start = Instant::now();
    let r = single_threaded(reproduce_example1);
    let elapsed = start.elapsed();
    let ok = r.passed()
        && r.count("candidates") == 262_144
        && r.count("right_modular_generalised_inflations") == 4
        && r.count("isomorphism_classes") == 1
        && within(elapsed, 60);
    Outcome::new(
        ok,
        format!(
            "candidates={} rm_gen_inflations={} classes={} violations={} time={elapsed:.1?} (limit 60s, 1 thread)",
            r.count("candidates"),
            r.count("right_modular_generalised_inflations"),
            r.count("isomorphism_classes"),
            r.violations.len()
        ),
    )
}

/// Fixed-W free enumeration: exactly 5^9 tables, under 120 s.
fn criterion2() -> Outcome {
    let start = Instant::now();
    let r = count_free_extensions_of_w();
    let elapsed = start.elapsed();
    let n = r.count("tables");
    Outcome::new(
        n == 1_953_125 && within(elapsed, 120),
        format!("tables={n} time={elapsed:.1?} (limit 120s)"),
    )
}

/// Independent count of generalised inflations of W among the candidates.
///
/// W is a quasigroup, so for an outside element x each border map is forced: uα_x is the
/// unique t with t·u = x·u, and β_x u the unique t with u·t = u·x. The table is then a
/// generalised inflation iff some class c ∈ W gives x·x = (cα_x)(β_x c).
fn border_cell_oracle() -> u64 {
    let w = fixtures::w();
    let col_solve = |u: usize, v: usize| (0..4).find(|&t| w.mul(t, u) == v).expect("quasigroup");
    let row_solve = |u: usize, v: usize| (0..4).find(|&t| w.mul(u, t) == v).expect("quasigroup");
    let mut count = 0u64;
    // Free cells: x·u (4), u·x (4), x·x (1), each valued in W.
    for code in 0..4u32.pow(9) {
        let digit = |i: u32| ((code / 4u32.pow(i)) % 4) as usize;
        let xu: Vec<usize> = (0..4).map(|u| digit(u as u32)).collect();
        let ux: Vec<usize> = (0..4).map(|u| digit(4 + u as u32)).collect();
        let xx = digit(8);
        let alpha: Vec<usize> = (0..4).map(|u| col_solve(u, xu[u])).collect();
        let beta: Vec<usize> = (0..4).map(|u| row_solve(u, ux[u])).collect();
        if (0..4).any(|c| w.mul(alpha[c], beta[c]) == xx) {
            count += 1;
        }
    }
    count
}

fn golden_counts() -> Option<std::collections::BTreeMap<String, u64>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/counts.txt");
    parse_golden(&std::fs::read_to_string(path).ok()?).ok()
}

/// Census of generalised inflations of W: within [4^8, 4^9], equal to the border-cell
/// oracle, and equal to the pinned value.
fn criterion3() -> Outcome {
    let r = reproduce_example1();
    let x = r.count("generalised_inflations");
    let oracle = border_cell_oracle();
    let pinned = golden_counts().and_then(|g| g.get("example1.generalised_inflations").copied());
    let ok = (65_536..=262_144).contains(&x) && x == oracle && pinned == Some(x);
    Outcome::new(
        ok,
        format!("X={x} oracle={oracle} pinned={pinned:?} bounds=[65536, 262144]"),
    )
}

/// No non-associative idempotent right modular tables of order 2–3; one class at order 4,
/// equal to the canonical form of W, a cancellative quasigroup. Under 120 s.
fn criterion4() -> Outcome {
    let start = Instant::now();
    let r = verify_uniqueness_of_w();
    let elapsed = start.elapsed();
    let w_canon = canonical_form(&fixtures::w()).expect("order 4");
    let ok = r.passed()
        && r.count("labeled_order_2") == 0
        && r.count("labeled_order_3") == 0
        && r.count("classes_order_4") == 1
        && is_quasigroup(&w_canon).holds
        && is_cancellative(&w_canon).holds
        && within(elapsed, 120);
    Outcome::new(
        ok,
        format!(
            "order2={} order3={} order4_classes={} order4_labeled={} time={elapsed:.1?} (limit 120s)",
            r.count("labeled_order_2"),
            r.count("labeled_order_3"),
            r.count("classes_order_4"),
            r.count("labeled_order_4")
        ),
    )
}

/// The `C¹ ∪ {x}` suite: every check, each exact.
fn criterion5() -> Outcome {
    let r = verify_example2();
    let p = fixtures::ex2_printed();
    let detail = if r.passed() {
        format!(
            "associativity {}; right modularity {}",
            is_associative(&p).describe(&p),
            is_right_modular(&p).describe(&p)
        )
    } else {
        r.violations
            .iter()
            .map(|v| v.detail.clone())
            .collect::<Vec<_>>()
            .join("; ")
    };
    Outcome::new(r.passed(), detail)
}

/// Theorem suites at default bounds: zero violations.
fn criterion6() -> Outcome {
    let bounds = TheoremBounds::default();
    let reports = [
        verify_theorem1(bounds),
        verify_theorem2(bounds),
        verify_theorem3(bounds),
        verify_result1_and_lemma(4),
    ];
    let ok = reports.iter().all(|r| r.passed() && r.instances_checked > 0);
    let detail = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} instances, {} violations",
                r.name,
                r.instances_checked,
                r.violations.len()
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome::new(ok, detail)
}

/// One-point extension conditions agree with right modularity: exhaustive on every right
/// modular base of order ≤ 3, and on ≥ 100,000 samples over W.
fn criterion7() -> Outcome {
    let catalog = right_modular_catalog();
    let bases: Vec<&Magma> = (1..=3).flat_map(|n| catalog.labeled(n)).collect();
    let exhaustive: Vec<_> = bases
        .par_iter()
        .map(|g| cross_validate_theorem4(g, 0, 0).expect("right modular base"))
        .collect();
    let specs: u64 = exhaustive.iter().map(|c| c.specs_checked).sum();
    let disc: usize = exhaustive.iter().map(|c| c.discrepancies.len()).sum();
    let all_exhaustive = exhaustive.iter().all(|c| c.exhaustive);
    let order3_full = exhaustive
        .iter()
        .zip(&bases)
        .all(|(c, g)| c.specs_checked == (g.order() as u64).pow(2 * g.order() as u32 + 1));
    let sampled = cross_validate_theorem4(&fixtures::w(), 100_000, 0x5eed).expect("W is right modular");
    let ok = disc == 0
        && all_exhaustive
        && order3_full
        && sampled.specs_checked >= 100_000
        && sampled.discrepancies.is_empty();
    Outcome::new(
        ok,
        format!(
            "{} bases, {specs} specs exhaustive, {disc} discrepancies; W: {} sampled, {} accepted, {} discrepancies",
            bases.len(),
            sampled.specs_checked,
            sampled.accepted,
            sampled.discrepancies.len()
        ),
    )
}

fn random_magma(rng: &mut StdRng, n: usize) -> Magma {
    Magma::new(n, (0..n * n).map(|_| rng.gen_range(0..n)).collect()).expect("valid")
}

/// Soundness: search witnesses verify; constant witnesses round-trip through retractions;
/// tables round-trip through text; canonical forms are relabeling invariant.
fn criterion8() -> Outcome {
    let mut failures = Vec::new();

    // Witness soundness over every order-3 table and every right modular order-4 table.
    let mut instances: Vec<Magma> = (0..3u32.pow(9))
        .map(|code| Magma::new(3, (0..9).map(|i| ((code / 3u32.pow(i)) % 3) as usize).collect()).expect("valid"))
        .collect();
    instances.extend(right_modular_catalog().labeled(4).iter().cloned());
    instances.push(fixtures::ex2_printed());
    instances.push(fixtures::ex2_derived());
    let tallies: Vec<(u64, u64, u64, Vec<String>)> = instances
        .par_iter()
        .map(|g| {
            let (mut gi, mut ret, mut constant, mut bad) = (0u64, 0u64, 0u64, Vec::new());
            for sub in candidate_subgroupoids(g) {
                if let Some(w) = find_gen_inflation(g, &sub).expect("within bounds") {
                    gi += 1;
                    if !verify_gen_inflation(g, &sub, &w).expect("well formed").holds {
                        bad.push(format!("generalised-inflation witness fails on\n{}", g.format_table()));
                    }
                    if classify_witness(&w).is_constant_generalised_inflation() {
                        constant += 1;
                        let phi = constant_witness_to_retraction(&w).expect("constant witness");
                        let back = phi.to_constant_witness(&sub);
                        if !verify_retraction(g, &sub, &phi).expect("well formed").holds
                            || !verify_gen_inflation(g, &sub, &back).expect("well formed").holds
                            || constant_witness_to_retraction(&back).expect("constant") != phi
                        {
                            bad.push(format!("constant witness round trip fails on\n{}", g.format_table()));
                        }
                    }
                }
                if let Some(phi) = find_retraction(g, &sub).expect("within bounds") {
                    ret += 1;
                    if !verify_retraction(g, &sub, &phi).expect("well formed").holds {
                        bad.push(format!("retraction witness fails on\n{}", g.format_table()));
                    }
                }
            }
            (gi, ret, constant, bad)
        })
        .collect();
    let (mut gi, mut ret, mut constant) = (0, 0, 0);
    for (a, b, c, bad) in tallies {
        gi += a;
        ret += b;
        constant += c;
        failures.extend(bad);
    }

    let mut rng = StdRng::seed_from_u64(8);
    for i in 0..1000 {
        let n = 1 + i % 6;
        let mut m = random_magma(&mut rng, n);
        if i % 2 == 0 {
            m = m.with_names((0..n).map(|k| format!("e{k}"))).expect("distinct names");
        }
        match Magma::parse_table(&m.format_table()) {
            Ok(back) if back == m => {}
            _ => failures.push(format!("text round trip fails on\n{}", m.format_table())),
        }
    }
    for i in 0..1000 {
        let n = 1 + i % 5;
        let m = random_magma(&mut rng, n);
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(&mut rng);
        let p = Permutation::new(mapping).expect("permutation");
        let relabeled = apply_permutation(&m, &p).expect("same order");
        if canonical_table(&m).ok() != canonical_table(&relabeled).ok()
            || is_isomorphic(&m, &relabeled).ok().flatten().is_none()
        {
            failures.push(format!("canonical form not invariant on\n{}", m.format_table()));
        }
    }

    Outcome::new(
        failures.is_empty(),
        format!(
            "{} tables: {gi} generalised-inflation witnesses, {ret} retractions, {constant} constant round trips; 1000 text round trips; 1000 relabelings; {} failures{}",
            instances.len(),
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

/// The bounded hunts finish within 10 minutes and emit certificates; no outcome asserted.
fn criterion9() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (mode, bounds) in [
        (
            HuntMode::RightModular,
            HuntBounds {
                max_sub: 3,
                max_outside: 2,
            },
        ),
        (
            HuntMode::CommutativeSemigroup,
            HuntBounds {
                max_sub: 3,
                max_outside: 1,
            },
        ),
    ] {
        match hunt_open_question(bounds, mode) {
            Ok(r) => {
                let cert = r.certificate(1);
                println!("--- certificate ({mode}) ---\n{cert}");
                ok &= cert.contains("tables checked") && r.bases > 0;
                parts.push(format!(
                    "{mode}: {} bases, {} tables, {} counterexamples",
                    r.bases,
                    r.tables_checked,
                    r.counterexamples.len()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{mode}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= within(elapsed, 600);
    Outcome::new(ok, format!("{}; time={elapsed:.1?} (limit 600s)", parts.join("; ")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("extensions of W", criterion1),
        ("fixed-W free enumeration", criterion2),
        ("generalised-inflation census of W", criterion3),
        ("uniqueness of W", criterion4),
        ("C¹ ∪ {x} suite", criterion5),
        ("theorem harnesses", criterion6),
        ("one-point extension cross-validation", criterion7),
        ("structural soundness", criterion8),
        ("bounded hunt for non-inflations", criterion9),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let out = run();
        let status = if out.passed { "PASS" } else { "FAIL" };
        failed += (!out.passed) as usize;
        println!("criterion {}: {status} {title} — {}", i + 1, out.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
