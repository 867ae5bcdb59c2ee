//! Release gate: eight checks covering fixtures, exact identities, oracle
//! equivalence, closed-form validation, plateau constancy, scale targets,
//! qualitative curve shapes, and endpoint degeneracy.
//!
//! Each check prints exactly one `criterion <id>: PASS/FAIL` line (visible
//! with `--nocapture`, and always shown for failing checks).  Tolerances and
//! time budgets are pinned as constants next to the check that uses them.
//! Checks serialize on a global lock so that each one's time budget is
//! measured alone, with the whole machine available.

use std::cmp::Ordering;
use std::sync::{Mutex, MutexGuard, OnceLock, PoisonError};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;

use trapfluct_core::partitions::TableCache;
use trapfluct_core::sweep::{ce_fluctuation_series, mce_series, CanonicalCurvePoint, FluctuationSeries};
use trapfluct_core::{
    distribution, enumerate_fes, moment_sums, verify, Statistics, DEFAULT_ENUMERATION_BUDGET,
};

fn serial() -> MutexGuard<'static, ()> {
    static LOCK: Mutex<()> = Mutex::new(());
    LOCK.lock().unwrap_or_else(PoisonError::into_inner)
}

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(TableCache::new)
}

/// Prints the verdict line for one criterion, then fails the test on FAIL.
fn report(id: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id}: {verdict} — {detail}");
    assert!(passed, "criterion {id} failed: {detail}");
}

fn shell(n: usize, big_n: u32, statistics: &Statistics) -> Vec<BigUint> {
    let dist = distribution(cache(), n, big_n, statistics, DEFAULT_ENUMERATION_BUDGET)
        .expect("in-range shell");
    dist.iter().map(|(_, weight)| weight.clone()).collect()
}

// ---------------------------------------------------------------------------
// 1. Worked low-quanta fixtures, exact equality, under one second.
// ---------------------------------------------------------------------------

const FIXTURE_TIME_LIMIT: Duration = Duration::from_secs(1);

#[test]
fn criterion_1_worked_fixtures() {
    let _guard = serial();
    let start = Instant::now();

    let semion = Statistics::fes(1, 2).unwrap();
    // (n, N, statistics, excited count k, expected multiplicity)
    let fixtures: [(usize, u32, &Statistics, u32, u64); 7] = [
        (2, 2, &Statistics::Fermi, 1, 2),
        (2, 2, &Statistics::Fermi, 2, 0),
        (2, 2, &Statistics::Bose, 1, 1),
        (2, 2, &Statistics::Bose, 2, 1),
        (3, 5, &Statistics::Fermi, 1, 3),
        (3, 5, &semion, 1, 1),
        (3, 5, &semion, 2, 2),
    ];
    let mut bad = Vec::new();
    for (n, big_n, statistics, k, expected) in fixtures {
        let got = shell(n, big_n, statistics)[k as usize - 1].clone();
        if got != BigUint::from(expected) {
            bad.push(format!("omega({n},{k},{big_n})[{statistics}] = {got} != {expected}"));
        }
    }
    // One more semion value plus the two partition totals.
    if shell(3, 5, &semion)[2] != BigUint::from(0u32) {
        bad.push("omega(3,3,5)[semion] != 0".into());
    }
    let table = cache().partition_table(3, 5).unwrap();
    for (n, big_n, expected) in [(2usize, 2u32, 2u32), (3, 5, 3)] {
        let total = table.canonical_multiplicity(n, big_n).unwrap();
        if *total != BigUint::from(expected) {
            bad.push(format!("Omega({n},{big_n}) = {total} != {expected}"));
        }
    }

    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < FIXTURE_TIME_LIMIT;
    let wrong = bad.len();
    report(
        "1",
        ok,
        &format!("10 fixture equalities, {wrong} wrong, in {elapsed:.2?} (limit {FIXTURE_TIME_LIMIT:?}): {bad:?}"),
    );
}

// ---------------------------------------------------------------------------
// 2. Sum identity over every statistics family, N ≤ 30, n ≤ 200, 30 s.
// ---------------------------------------------------------------------------

const IDENTITY_TIME_LIMIT: Duration = Duration::from_secs(30);

#[test]
fn criterion_2_sum_identities() {
    let _guard = serial();
    let start = Instant::now();
    let suite = verify::identities_suite(cache()).expect("suite runs");
    let elapsed = start.elapsed();
    let ok = suite.passed() && elapsed < IDENTITY_TIME_LIMIT;
    report(
        "2",
        ok,
        &format!(
            "four families x N<=30 x n<=200 sum to the partition count, suite {}, in {elapsed:.2?} (limit {IDENTITY_TIME_LIMIT:?})",
            if suite.passed() { "clean" } else { "has failures" }
        ),
    );
}

// ---------------------------------------------------------------------------
// 3. Fast pipelines equal brute-force oracles, 60 s.
// ---------------------------------------------------------------------------

const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);

#[test]
fn criterion_3_oracle_equivalence() {
    let _guard = serial();
    let start = Instant::now();
    let suite = verify::oracle_suite(cache()).expect("suite runs");
    let elapsed = start.elapsed();
    let ok = suite.passed() && elapsed < ORACLE_TIME_LIMIT;
    report(
        "3",
        ok,
        &format!(
            "closed forms vs microstate oracle (N<=8, n<=40) and hole recursion vs direct DP (N<=12), suite {}, in {elapsed:.2?} (limit {ORACLE_TIME_LIMIT:?})",
            if suite.passed() { "clean" } else { "has failures" }
        ),
    );
}

// ---------------------------------------------------------------------------
// 4. Near-boundary coupling closed forms equal the enumerator, 60 s.
// ---------------------------------------------------------------------------

const FES_TIME_LIMIT: Duration = Duration::from_secs(60);

#[test]
fn criterion_4_fes_closed_forms() {
    let _guard = serial();
    let start = Instant::now();
    let suite = verify::fes_suite(cache()).expect("suite runs");
    let elapsed = start.elapsed();
    let ok = suite.passed() && elapsed < FES_TIME_LIMIT;
    report(
        "4",
        ok,
        &format!(
            "coupling closed forms vs quasiparticle enumerator (N<=5, n<=16), suite {}, in {elapsed:.2?} (limit {FES_TIME_LIMIT:?})",
            if suite.passed() { "clean" } else { "has failures" }
        ),
    );
}

// ---------------------------------------------------------------------------
// 5. Coupling plateaus: multiplicities constant on each coarse interval
//    [(N−i−1)/(N−1), (N−i)/(N−1)), sampled at the closed endpoint plus the
//    three interior quartile rationals, for N = 4, 5 and n ≤ 16.
// ---------------------------------------------------------------------------

const PLATEAU_N_MAX: usize = 16;

#[test]
fn criterion_5_coupling_plateaus() {
    let _guard = serial();
    let mut bad = Vec::new();
    let mut cases = 0usize;
    for big_n in [4u32, 5] {
        let d = u64::from(big_n) - 1;
        for i in 1..=d {
            let lo = Ratio::new(d - i, d);
            let hi = Ratio::new(d - i + 1, d);
            let width = hi - lo;
            let samples: Vec<Ratio<u64>> = (0..4)
                .map(|quarter| lo + width * Ratio::new(quarter, 4))
                .collect();
            for n in 0..=PLATEAU_N_MAX {
                cases += 1;
                let reference = enumerate_fes(cache(), n, big_n, samples[0], DEFAULT_ENUMERATION_BUDGET)
                    .expect("enumerable");
                for g in &samples[1..] {
                    let other = enumerate_fes(cache(), n, big_n, *g, DEFAULT_ENUMERATION_BUDGET)
                        .expect("enumerable");
                    if reference.iter().ne(other.iter()) {
                        bad.push(format!(
                            "N={big_n}, n={n}, interval [{lo}, {hi}): omega at g={} is {:?} but at g={g} is {:?}",
                            samples[0],
                            reference.iter().collect::<Vec<_>>(),
                            other.iter().collect::<Vec<_>>(),
                        ));
                    }
                }
            }
        }
    }
    let ok = bad.is_empty();
    report(
        "5",
        ok,
        &format!(
            "{cases} interval/energy combinations, {} broke constancy; first breaks: {:?}",
            bad.len(),
            &bad[..bad.len().min(3)]
        ),
    );
}

// ---------------------------------------------------------------------------
// 6. Scale targets: full fermionic sweeps within wall-clock budgets, with the
//    zero-quanta row identically zero.
// ---------------------------------------------------------------------------

const SWEEP_30_TIME_LIMIT: Duration = Duration::from_secs(300);
const SWEEP_100_TIME_LIMIT: Duration = Duration::from_secs(600);

#[test]
fn criterion_6_scale_targets() {
    let _guard = serial();
    let mut notes = Vec::new();
    let mut ok = true;

    for (big_n, n_max, limit) in [
        (30u32, 6000usize, SWEEP_30_TIME_LIMIT),
        (100, 1000, SWEEP_100_TIME_LIMIT),
    ] {
        let start = Instant::now();
        let series = mce_series(cache(), big_n, &Statistics::Fermi, n_max, DEFAULT_ENUMERATION_BUDGET)
            .expect("sweep completes");
        let elapsed = start.elapsed();
        let origin = series.stats(0);
        let origin_zero = origin.mean_excited == 0.0
            && origin.second_moment == 0.0
            && origin.fluctuation == 0.0;
        ok &= elapsed < limit && origin_zero;
        notes.push(format!(
            "N={big_n} n<={n_max} in {elapsed:.2?} (limit {limit:?}), n=0 row {}",
            if origin_zero { "= (0,0,0)" } else { "nonzero!" }
        ));
    }
    report("6", ok, &notes.join("; "));
}

// ---------------------------------------------------------------------------
// 7. Qualitative curve checks against the N = 30 grid and the crossing rule.
// ---------------------------------------------------------------------------

const CROSSING_N_MAX: usize = 200;
const FIG_GRID_N_MAX: usize = 6000;
/// Accepted window for the canonical−microcanonical δN₀ gap at n = 6000.
const GAP_WINDOW: (f64, f64) = (0.09, 0.19);

fn fermi_grid() -> &'static (FluctuationSeries, Vec<CanonicalCurvePoint>) {
    static GRID: OnceLock<(FluctuationSeries, Vec<CanonicalCurvePoint>)> = OnceLock::new();
    GRID.get_or_init(|| {
        let mce = mce_series(cache(), 30, &Statistics::Fermi, FIG_GRID_N_MAX, DEFAULT_ENUMERATION_BUDGET)
            .expect("microcanonical sweep");
        let ce = ce_fluctuation_series(cache(), 30, &Statistics::Fermi, FIG_GRID_N_MAX, DEFAULT_ENUMERATION_BUDGET)
            .expect("canonical sweep");
        (mce, ce)
    })
}

#[test]
fn criterion_7a_single_fluctuation_crossing() {
    let _guard = serial();
    let mut notes = Vec::new();
    let mut ok = true;
    for big_n in [5u32, 10] {
        let mut flips = Vec::new();
        let mut last = Ordering::Equal;
        for n in 1..=CROSSING_N_MAX {
            let fermi = moment_sums(
                &distribution(cache(), n, big_n, &Statistics::Fermi, DEFAULT_ENUMERATION_BUDGET).unwrap(),
            );
            let bose = moment_sums(
                &distribution(cache(), n, big_n, &Statistics::Bose, DEFAULT_ENUMERATION_BUDGET).unwrap(),
            );
            let ord = fermi
                .compare_variance(&bose)
                .expect("non-empty shells at n >= 1");
            if ord != Ordering::Equal {
                if last != Ordering::Equal && ord != last {
                    flips.push(n);
                }
                last = ord;
            }
        }
        ok &= flips.len() == 1;
        notes.push(format!("N={big_n}: variance order flips at n={flips:?}"));
    }
    report("7a", ok, &format!("exactly one fermi/bose crossing expected; {}", notes.join("; ")));
}

#[test]
fn criterion_7b_microcanonical_below_canonical() {
    let _guard = serial();
    let (mce, ce) = fermi_grid();
    let violations: Vec<usize> = (1..=FIG_GRID_N_MAX)
        .filter(|&n| mce.stats(n).fluctuation >= ce[n].fluctuation)
        .collect();
    report(
        "7b",
        violations.is_empty(),
        &format!(
            "MCE fluctuation < CE fluctuation at every n in 1..={FIG_GRID_N_MAX}; violations: {:?}",
            &violations[..violations.len().min(5)]
        ),
    );
}

#[test]
fn criterion_7c_gap_at_six_thousand_quanta() {
    let _guard = serial();
    let (mce, ce) = fermi_grid();
    let mce_fluct = mce.stats(FIG_GRID_N_MAX).fluctuation;
    let ce_fluct = ce[FIG_GRID_N_MAX].fluctuation;
    let gap = (ce_fluct - mce_fluct) / mce_fluct;
    let variance_gap = (ce_fluct * ce_fluct - mce_fluct * mce_fluct) / (mce_fluct * mce_fluct);
    let ok = gap >= GAP_WINDOW.0 && gap <= GAP_WINDOW.1;
    report(
        "7c",
        ok,
        &format!(
            "delta_N0 gap (CE−MCE)/MCE at n={FIG_GRID_N_MAX} is {gap:.4} (CE {ce_fluct:.6} vs MCE {mce_fluct:.6}), accepted window [{}, {}]; variance-ratio gap {variance_gap:.4} for reference",
            GAP_WINDOW.0, GAP_WINDOW.1
        ),
    );
}

// ---------------------------------------------------------------------------
// 8. Coupling endpoints degenerate to the ideal gases, enumerated afresh.
// ---------------------------------------------------------------------------

const ENDPOINT_N_MAX: usize = 50;
const ENDPOINT_BIG_N_MAX: u32 = 10;

#[test]
fn criterion_8_endpoint_degeneracy() {
    let _guard = serial();
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut cases = 0usize;
    for big_n in 1..=ENDPOINT_BIG_N_MAX {
        for n in 0..=ENDPOINT_N_MAX {
            for (g, ideal) in [
                (Ratio::new(1u64, 1), Statistics::Fermi),
                (Ratio::new(0, 1), Statistics::Bose),
            ] {
                cases += 1;
                let via_quasiparticles =
                    enumerate_fes(cache(), n, big_n, g, u64::MAX).expect("enumerable");
                let direct = distribution(cache(), n, big_n, &ideal, DEFAULT_ENUMERATION_BUDGET)
                    .expect("in range");
                if via_quasiparticles.iter().ne(direct.iter()) {
                    bad.push(format!("g={g}, N={big_n}, n={n}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "8",
        bad.is_empty(),
        &format!(
            "{cases} enumerated shells match the ideal-gas forms, {} mismatches {:?}, in {elapsed:.2?}",
            bad.len(),
            &bad[..bad.len().min(3)]
        ),
    );
}
