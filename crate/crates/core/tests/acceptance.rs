//! One test per acceptance criterion. Each prints a `criterion N: PASS|FAIL`
//! line and fails when the criterion does not hold or exceeds its time limit.

mod common;

use std::time::{Duration, Instant};

use common::{macaulay_dimension, random_presentation};
use dold_core::f2algebra::{Nilpotency, PolyRing, Polynomial, QuotientAlgebra};
use dold_core::involutions::{check_action, ActionKind, DEFAULT_TOL};
use dold_core::lefschetz::{
    carlsson_check, lefschetz_number, max_free_rank_bruteforce, mod2_rigidity_search,
    theorem_bound, trace_oracle, SignAutomorphism, DEFAULT_RIGIDITY_BUDGET,
    DEFAULT_SEARCH_BUDGET, DEFAULT_TRACE_LIMIT,
};
use dold_core::spaces::dold_cohomology;
use dold_core::spectral::{
    case1, case2, compare_presentation, example2_algebra, presentation1, presentation2, CaseRun,
};
use dold_core::{Flavor, ProductSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ZERO: [bool; 2] = [false, false];
const SEED: u64 = 20_240_601;

fn verdict(n: u32, started: Instant, limit: Option<Duration>, failures: &[String]) {
    let elapsed = started.elapsed();
    let slow = limit.is_some_and(|l| elapsed > l);
    let ok = failures.is_empty() && !slow;
    let limit_text = limit.map_or_else(|| "no limit".to_string(), |l| format!("limit {l:?}"));
    println!(
        "criterion {n}: {} ({elapsed:.2?}, {limit_text})",
        if ok { "PASS" } else { "FAIL" }
    );
    for f in failures.iter().take(10) {
        println!("  {f}");
    }
    assert!(!slow, "criterion {n} took {elapsed:?}");
    assert!(
        failures.is_empty(),
        "criterion {n}: {} failure(s), first: {}",
        failures.len(),
        failures[0]
    );
}

/// Ordered tuples of `k` factors drawn from `choices`.
fn tuples<T: Clone>(choices: &[T], k: usize) -> Vec<Vec<T>> {
    (0..k).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                choices.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect()
    })
}

/// Multisets of size `k` drawn from `choices` (non-decreasing index tuples).
fn multisets<T: Clone>(choices: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(choices: &[T], start: usize, k: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..choices.len() {
            cur.push(choices[i].clone());
            go(choices, i, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(choices, 0, k, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_01_dold_betti_grid() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            if m + n == 0 {
                continue;
            }
            let a = dold_cohomology(m, n).unwrap();
            let expected = ((m + 1) * (n + 1)) as usize;
            if a.total_dimension() != Some(expected) {
                failures.push(format!("P({m},{n}): total {:?} != {expected}", a.total_dimension()));
            }
            let report = a.poincare_duality_check(m + 2 * n);
            if !report.palindromic {
                failures.push(format!("P({m},{n}): series {:?} not palindromic", report.series));
            }
        }
    }
    verdict(1, started, Some(Duration::from_secs(1)), &failures);
}

#[test]
fn criterion_02_lefschetz_oracle_equivalence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let factors: Vec<(u32, u32)> = (0..=2).flat_map(|m| (0..=3).map(move |n| (2 * m, n))).collect();
    let mut checked = 0;
    for k in 1..=2 {
        for f in tuples(&factors, k) {
            let x = ProductSpace::sphere_cp(&f).unwrap();
            for bits in 0u64..1 << (2 * k) {
                let g = SignAutomorphism::from_bits(k, bits);
                if g.validate(&x).is_err() {
                    continue;
                }
                checked += 1;
                let tau = lefschetz_number(&g, &x).unwrap();
                let trace = trace_oracle(&g, &x, DEFAULT_TRACE_LIMIT).unwrap();
                if tau != trace {
                    failures.push(format!("{x} {g}: tau {tau} != trace {trace}"));
                }
            }
        }
    }
    assert!(checked > 0);
    verdict(2, started, Some(Duration::from_secs(1)), &failures);
}

#[test]
fn criterion_03_rank_theorem() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let factors: Vec<(u32, u32)> = [1u32, 2]
        .iter()
        .flat_map(|&m| [1u32, 2, 3].map(|n| (2 * m, n)))
        .collect();
    for k in 1..=3 {
        for f in tuples(&factors, k) {
            let x = ProductSpace::sphere_cp(&f).unwrap();
            let r = max_free_rank_bruteforce(&x, DEFAULT_SEARCH_BUDGET).unwrap();
            let bound = theorem_bound(&x) as usize;
            if r.rank != bound {
                failures.push(format!("{x}: search {} != bound {bound}", r.rank));
            }
            for g in r.certificate.elements().iter().skip(1) {
                if lefschetz_number(g, &x).unwrap() != 0 {
                    failures.push(format!("{x}: certificate element {g} has nonzero tau"));
                }
            }
        }
    }
    verdict(3, started, Some(Duration::from_secs(30)), &failures);
}

#[test]
fn criterion_04_rigidity() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (size, p, bound) in [(1, 3, 3), (2, 3, 2), (2, 5, 2)] {
        let found = mod2_rigidity_search(size, p, bound, DEFAULT_RIGIDITY_BUDGET).unwrap();
        if !found.is_empty() {
            failures.push(format!("({size},{p},{bound}): {found:?}"));
        }
    }
    verdict(4, started, Some(Duration::from_secs(60)), &failures);
}

#[test]
fn criterion_05_case1_spectral_sequence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (m, n) in [(1, 1), (3, 1), (3, 2), (5, 3)] {
        let c = case1(m, n, None).unwrap();
        let d = m + 2 * n;
        let cmp = compare_presentation(&c.series, &presentation1(m, n).unwrap(), d).unwrap();
        if !cmp.equal {
            failures.push(format!(
                "case1({m},{n}): observed {:?}, presentation {:?}",
                cmp.observed, cmp.expected
            ));
        }
        if c.run.degeneration_page != 3 {
            failures.push(format!("case1({m},{n}): degenerates at E_{}", c.run.degeneration_page));
        }
    }
    verdict(5, started, Some(Duration::from_secs(10)), &failures);
}

#[test]
fn criterion_06_case2_spectral_sequence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (m, n) in [(1, 1), (3, 1), (1, 3), (3, 3)] {
        let c = case2(m, n, ZERO, ZERO, None).unwrap();
        let d = m + 2 * n;
        let p2 = presentation2(m, n, ZERO, ZERO, None).unwrap();
        for (name, algebra) in [("presentation", p2), ("example", example2_algebra(m, n).unwrap())] {
            let cmp = compare_presentation(&c.series, &algebra, d).unwrap();
            if !cmp.equal {
                failures.push(format!(
                    "case2({m},{n}) vs {name}: observed {:?}, expected {:?}",
                    cmp.observed, cmp.expected
                ));
            }
        }
        if c.run.degeneration_page != m + 2 {
            failures.push(format!(
                "case2({m},{n}): degenerates at E_{}, expected E_{}",
                c.run.degeneration_page,
                m + 2
            ));
        }
        let expected_total = (3 * (m + 1) * (n + 1) / 2) as usize;
        if c.total_dimension != expected_total {
            failures.push(format!(
                "case2({m},{n}): total {} != {expected_total}",
                c.total_dimension
            ));
        }
    }
    verdict(6, started, Some(Duration::from_secs(30)), &failures);
}

fn page_invariant_failures(name: &str, c: &CaseRun, failures: &mut Vec<String>) {
    let run = &c.run;
    for page in &run.pages {
        for first in &page.differentials {
            for second in page.differentials.iter().filter(|b| b.source == first.target) {
                if !second.matrix.mul(&first.matrix).is_zero() {
                    failures.push(format!("{name}: d∘d != 0 on E_{} at {:?}", page.page, first.source));
                }
            }
        }
    }
    // Alternating sums sum_{p+q=d} (-1)^p dim E_r^{p,q}, compared page to page
    // for d <= cap - r.
    for pair in run.pages.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        for d in 0..=run.cap.saturating_sub(cur.page) {
            let (a, b) = (cur.alternating_sum(d), next.alternating_sum(d));
            if a != b {
                failures.push(format!(
                    "{name}: degree {d} alternating sum {a} on E_{} but {b} on E_{}",
                    cur.page, next.page
                ));
            }
        }
    }
}

#[test]
fn criterion_07_page_invariants() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (m, n) in [(1, 1), (3, 1), (3, 2), (5, 3)] {
        page_invariant_failures(&format!("case1({m},{n})"), &case1(m, n, None).unwrap(), &mut failures);
    }
    for (m, n) in [(1, 1), (3, 1), (1, 3), (3, 3)] {
        page_invariant_failures(
            &format!("case2({m},{n})"),
            &case2(m, n, ZERO, ZERO, None).unwrap(),
            &mut failures,
        );
    }
    verdict(7, started, None, &failures);
}

#[test]
fn criterion_08_coindex() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for m in (1..=7).step_by(2) {
        for n in 0..=6 {
            let a = presentation1(m, n).unwrap();
            let x = Polynomial::variable(a.ring(), "x").unwrap();
            let got = a.nilpotency_index(&x).unwrap();
            if got != Nilpotency::Index(1) {
                failures.push(format!("presentation1({m},{n}): {got:?}"));
            }
        }
    }
    for n in 0..=10u32 {
        let ring = PolyRing::with_variables(&[("t", 1)]).unwrap();
        let a = QuotientAlgebra::truncated_polynomial(ring, &[(0, n + 1)], n + 4).unwrap();
        let t = Polynomial::variable(a.ring(), "t").unwrap();
        let got = a.nilpotency_index(&t).unwrap();
        if got != Nilpotency::Index(n) {
            failures.push(format!("F2[t]/(t^{}): {got:?}", n + 1));
        }
    }
    verdict(8, started, None, &failures);
}

#[test]
fn criterion_09_carlsson() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    // Sphere flavor S^{2m} x CP^n with m <= 3; Dold flavor P(m', n) with
    // m' <= 3 and also P(2m, n) for the even-parameter family.
    let sphere: Vec<(u32, u32)> = (0..=3).flat_map(|m| (0..=4).map(move |n| (2 * m, n))).collect();
    let dold: Vec<(u32, u32)> = [0u32, 1, 2, 3, 4, 6]
        .iter()
        .flat_map(|&m| (0..=4).map(move |n| (m, n)))
        .filter(|&(m, n)| m + n > 0)
        .collect();
    for (flavor, choices) in [(Flavor::SphereCp, &sphere), (Flavor::Dold, &dold)] {
        for k in 1..=4 {
            for f in multisets(choices, k) {
                let x = match flavor {
                    Flavor::SphereCp => ProductSpace::sphere_cp(&f),
                    _ => ProductSpace::dold(&f),
                }
                .unwrap();
                checked += 1;
                let r = carlsson_check(&x);
                if !r.holds {
                    failures.push(format!("{x}: {} < {}", r.betti_sum, r.threshold));
                }
            }
        }
    }
    assert!(checked > 1000);
    verdict(9, started, Some(Duration::from_secs(5)), &failures);
}

#[test]
fn criterion_10_involutions() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let kinds = [
        ActionKind::T1,
        ActionKind::T2,
        ActionKind::T3,
        ActionKind::Z4,
        ActionKind::Z2Z2,
    ];
    for kind in kinds {
        for m in [1, 3] {
            for n in [1, 3] {
                if kind.check_parity(m, n).is_err() {
                    continue;
                }
                let r = check_action(kind, m, n, 10_000, SEED, DEFAULT_TOL).unwrap();
                if !r.involution_ok {
                    failures.push(format!(
                        "{kind} on ({m},{n}): order relation fails on {} of {} samples",
                        r.order_failures, r.samples
                    ));
                }
                if !r.free_ok {
                    failures.push(format!(
                        "{kind} on ({m},{n}): {} sampled fixed points",
                        r.fixed_points
                    ));
                }
                if r.max_norm_error > 1e-12 {
                    failures.push(format!("{kind} on ({m},{n}): norm drift {}", r.max_norm_error));
                }
            }
        }
    }
    let control = check_action(ActionKind::Conjugation, 1, 1, 10_000, SEED, DEFAULT_TOL).unwrap();
    if control.free_ok {
        failures.push("conjugation control was not flagged as non-free".into());
    }
    verdict(10, started, Some(Duration::from_secs(10)), &failures);
}

#[test]
fn criterion_11_groebner_correctness() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..200 {
        let (ring, relations) = random_presentation(&mut rng);
        let a = QuotientAlgebra::new(ring.clone(), relations.clone(), 8).unwrap();
        let series = a.poincare_series(8).unwrap();
        for d in 0..=8u32 {
            let oracle = macaulay_dimension(&ring, &relations, d);
            if series[d as usize] != oracle {
                failures.push(format!(
                    "presentation {i} degree {d}: groebner {} != oracle {oracle}",
                    series[d as usize]
                ));
            }
        }
    }
    verdict(11, started, Some(Duration::from_secs(60)), &failures);
}
