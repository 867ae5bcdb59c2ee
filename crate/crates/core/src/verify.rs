//! Self-contained verification suites.
//!
//! Each suite cross-checks a production path against an independent route —
//! brute-force enumeration, a different recurrence, or a closed form — over a
//! fixed grid, and reports per-check case counts.  Check failures are
//! reported, not thrown; `Err` is reserved for infrastructure problems
//! (resource limits, I/O).

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::ensembles::{ce_stats_at, invert_mean_excitation, mean_excitation};
use crate::error::Result;
use crate::fes::{self, Statistics};
use crate::microcanonical::{distribution, DEFAULT_ENUMERATION_BUDGET};
use crate::oracle::{brute_thermal_moments, durfee_side, for_each_partition, oracle_multiplicities};
use crate::partitions::{bounded_multiplicity_direct, TableCache};

/// One named cross-check over many cases.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// Up to five example failures, for diagnosis.
    pub examples: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "  PASS  {} ({} cases)", self.name, self.cases)
        } else {
            write!(
                f,
                "  FAIL  {} ({}/{} cases failed; e.g. {})",
                self.name,
                self.failed,
                self.cases,
                self.examples.first().map(String::as_str).unwrap_or("?")
            )
        }
    }
}

/// All checks of one suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    cases: usize,
    failed: usize,
    examples: Vec<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 5 {
                self.examples.push(detail());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failed += other.failed;
        for e in other.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
        self
    }

    fn into_check(self, name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            cases: self.cases,
            failed: self.failed,
            examples: self.examples,
        }
    }
}

/// Σ_{N_ex} ω(n, N_ex, N) = Ω(n, N) for every statistics with a production
/// formula, N ≤ 30, 1 ≤ n ≤ 200.  (The n = 0 shell is the vacuum: its single
/// microstate sits at N_ex = 0, outside the ω vector.)
pub fn identities_suite(cache: &TableCache) -> Result<Report> {
    let families: [(&str, fn(u32) -> Option<Statistics>); 4] = [
        ("bose shells sum to the partition count", |_| {
            Some(Statistics::Bose)
        }),
        ("fermi shells sum to the partition count", |_| {
            Some(Statistics::Fermi)
        }),
        ("coupling (N-2)/(N-1) shells sum to the partition count", |n| {
            (n >= 2).then(|| Statistics::Fes(fes::near_fermi_coupling(n)))
        }),
        ("coupling 1/(N-1) shells sum to the partition count", |n| {
            (n >= 2).then(|| Statistics::Fes(fes::near_bose_coupling(n)))
        }),
    ];
    // Grow the shared table once; closed forms reach n + N quanta.
    cache.partition_table(230, 30)?;
    let mut checks = Vec::new();
    for (name, pick) in families {
        let tally = (1..=30u32)
            .into_par_iter()
            .map(|big_n| -> Result<Tally> {
                let mut t = Tally::default();
                let Some(statistics) = pick(big_n) else {
                    return Ok(t);
                };
                let table = cache.partition_table(200, big_n)?;
                for n in 1..=200usize {
                    let d =
                        distribution(cache, n, big_n, &statistics, DEFAULT_ENUMERATION_BUDGET)?;
                    let want = table.canonical_multiplicity(n, big_n)?;
                    t.case(d.total() == *want, || {
                        format!("(n={n}, N={big_n}): {} != {want}", d.total())
                    });
                }
                Ok(t)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
        checks.push(tally.into_check(name));
    }
    Ok(Report {
        suite: "identities",
        checks,
    })
}

/// Production multiplicities against brute-force classification, and the
/// level-occupation recursion against a direct bounded-partition count.
pub fn oracle_suite(cache: &TableCache) -> Result<Report> {
    let mut checks = Vec::new();

    // (a) shell vectors vs microstate classification, N ≤ 8, n ≤ 40.
    for (name, statistics) in [
        ("fermi multiplicities equal the corner-square tally", Statistics::Fermi),
        ("bose multiplicities equal the part-count tally", Statistics::Bose),
    ] {
        let tally = (1..=8u32)
            .into_par_iter()
            .map(|big_n| -> Result<Tally> {
                let mut t = Tally::default();
                for n in 0..=40usize {
                    let d =
                        distribution(cache, n, big_n, &statistics, DEFAULT_ENUMERATION_BUDGET)?;
                    let brute = oracle_multiplicities(n, big_n, &statistics);
                    for k in 1..=big_n {
                        t.case(
                            *d.omega(k) == BigUint::from(brute[k as usize - 1]),
                            || {
                                format!(
                                    "(n={n}, n_ex={k}, N={big_n}): {} != {}",
                                    d.omega(k),
                                    brute[k as usize - 1]
                                )
                            },
                        );
                    }
                }
                Ok(t)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
        checks.push(tally.into_check(name));
    }

    // (b) hole-space recursion vs direct dynamic programming, N ≤ 12.
    let mut t = Tally::default();
    for big_n in 2..=12u32 {
        for n_ex in 1..=big_n {
            let table = cache.hole_table(big_n, n_ex)?;
            for total in 0..=table.max_total() {
                let direct = bounded_multiplicity_direct(total, n_ex, big_n - n_ex);
                t.case(table.count(total) == direct, || {
                    format!(
                        "(N={big_n}, n_ex={n_ex}, total={total}): {} != {direct}",
                        table.count(total)
                    )
                });
            }
        }
    }
    checks.push(t.into_check("hole recursion equals the bounded-partition count"));

    // (c) the corner square of a partition of n has side ≤ √n.
    let mut t = Tally::default();
    for n in 0..=40usize {
        for_each_partition(n, 8, |parts| {
            let s = durfee_side(parts);
            t.case(s * s <= n, || format!("{parts:?}: side {s}, n = {n}"));
        });
    }
    checks.push(t.into_check("corner-square side squared never exceeds the quanta"));

    Ok(Report {
        suite: "oracle",
        checks,
    })
}

/// FES closed forms against the quasiparticle enumerator on the desk-scale
/// grid, plus the endpoint degeneracies.
pub fn fes_suite(cache: &TableCache) -> Result<Report> {
    let mut checks = Vec::new();

    let mut t = Tally::default();
    for big_n in 3..=5u32 {
        let g = fes::near_fermi_coupling(big_n);
        for n in 0..=16usize {
            let by_enum = fes::enumerate_fes(cache, n, big_n, g, DEFAULT_ENUMERATION_BUDGET)?;
            for k in 1..=big_n {
                let closed = fes::fes_multiplicity_near_fermi(cache, n, k, big_n)?;
                t.case(closed == *by_enum.omega(k), || {
                    format!("(n={n}, n_ex={k}, N={big_n}): {closed} != {}", by_enum.omega(k))
                });
            }
        }
    }
    checks.push(t.into_check("size-difference form matches the enumerator at g=(N-2)/(N-1)"));

    let mut t = Tally::default();
    for big_n in 2..=5u32 {
        let g = fes::near_bose_coupling(big_n);
        for n in 0..=16usize {
            let by_enum = fes::enumerate_fes(cache, n, big_n, g, DEFAULT_ENUMERATION_BUDGET)?;
            for k in 1..=big_n {
                let closed = fes::fes_multiplicity_near_bose(cache, n, k, big_n)?;
                t.case(closed == *by_enum.omega(k), || {
                    format!("(n={n}, n_ex={k}, N={big_n}): {closed} != {}", by_enum.omega(k))
                });
            }
        }
    }
    checks.push(t.into_check("rewired-boson form matches the enumerator at g=1/(N-1)"));

    let mut t = Tally::default();
    let semion = fes::enumerate_fes(cache, 3, 5, Ratio::new(1, 2), DEFAULT_ENUMERATION_BUDGET)?;
    for (k, want) in [(1u32, 1u64), (2, 2), (3, 0), (4, 0), (5, 0)] {
        t.case(*semion.omega(k) == BigUint::from(want), || {
            format!("semion (3, {k}, 5): {} != {want}", semion.omega(k))
        });
    }
    checks.push(t.into_check("semion worked example (3 quanta, 5 particles)"));

    let mut t = Tally::default();
    for big_n in 1..=5u32 {
        for n in 0..=16usize {
            let g0 = fes::enumerate_fes(cache, n, big_n, Ratio::new(0, 1), DEFAULT_ENUMERATION_BUDGET)?;
            let g1 = fes::enumerate_fes(cache, n, big_n, Ratio::new(1, 1), DEFAULT_ENUMERATION_BUDGET)?;
            let bose = distribution(cache, n, big_n, &Statistics::Bose, DEFAULT_ENUMERATION_BUDGET)?;
            let fermi =
                distribution(cache, n, big_n, &Statistics::Fermi, DEFAULT_ENUMERATION_BUDGET)?;
            for k in 1..=big_n {
                t.case(g0.omega(k) == bose.omega(k), || {
                    format!("g=0 vs bose (n={n}, n_ex={k}, N={big_n})")
                });
                t.case(g1.omega(k) == fermi.omega(k), || {
                    format!("g=1 vs fermi (n={n}, n_ex={k}, N={big_n})")
                });
            }
        }
    }
    checks.push(t.into_check("couplings 0 and 1 degenerate to the ideal gases"));

    Ok(Report {
        suite: "fes",
        checks,
    })
}

/// Canonical mixtures against direct Boltzmann sums and closed-form
/// generating functions; the temperature↔mean-excitation mapping.
pub fn ensembles_suite(cache: &TableCache) -> Result<Report> {
    let mut checks = Vec::new();

    // (a) mixture vs direct microstate Boltzmann sums, N ≤ 4.
    let mut t = Tally::default();
    for statistics in [
        Statistics::Bose,
        Statistics::Fermi,
        Statistics::Fes(Ratio::new(1, 2)),
    ] {
        for big_n in 1..=4u32 {
            for x in [0.2, 0.5, 0.8] {
                let point = ce_stats_at(cache, x, big_n, &statistics, DEFAULT_ENUMERATION_BUDGET)?;
                let cut = crate::oracle::brute_cutoff(big_n, x);
                let (mean, second) = brute_thermal_moments(cut, big_n, &statistics, x);
                let s = point.ce_stats;
                let ok = (s.mean_excited - mean).abs() <= 1e-10 * mean.max(1.0)
                    && (s.second_moment - second).abs() <= 1e-10 * second.max(1.0);
                t.case(ok, || {
                    format!(
                        "({statistics}, N={big_n}, x={x}): ({}, {}) != ({mean}, {second})",
                        s.mean_excited, s.second_moment
                    )
                });
            }
        }
    }
    checks.push(t.into_check("mixture equals the direct Boltzmann sum"));

    // (b) mixture vs closed-form generating-function moments, N ≤ 8.
    let mut t = Tally::default();
    for big_n in 1..=8u32 {
        for x in [0.3, 0.7, 0.9] {
            for (statistics, fermi) in [(Statistics::Bose, false), (Statistics::Fermi, true)] {
                let point = ce_stats_at(cache, x, big_n, &statistics, DEFAULT_ENUMERATION_BUDGET)?;
                let (mean, second) = generating_function_moments(big_n, x, fermi);
                let s = point.ce_stats;
                let ok = (s.mean_excited - mean).abs() <= 1e-10 * mean.max(1.0)
                    && (s.second_moment - second).abs() <= 1e-10 * second.max(1.0);
                t.case(ok, || {
                    format!(
                        "({statistics}, N={big_n}, x={x}): ({}, {}) != ({mean}, {second})",
                        s.mean_excited, s.second_moment
                    )
                });
            }
        }
    }
    checks.push(t.into_check("mixture equals the generating-function moments"));

    // (c) mean-excitation inversion round trips.
    let mut t = Tally::default();
    for big_n in [2u32, 10, 30] {
        for target in [0.5f64, 5.0, 500.0] {
            let x = invert_mean_excitation(big_n, target)?;
            let back = mean_excitation(big_n, x)?;
            t.case((back - target).abs() < 1e-9 * target.max(1.0), || {
                format!("(N={big_n}, target={target}): mean({x}) = {back}")
            });
        }
    }
    checks.push(t.into_check("mean-excitation inversion round trips"));

    Ok(Report {
        suite: "ensembles",
        checks,
    })
}

/// Closed forms for the ideal-gas CE moments (test oracle): the k-excited
/// shells have generating function x^k·Π_{j≤k}(1−x^j)^{−1} for bosons and
/// x^{k²}·Π_{j≤k}(1−x^j)^{−1}·[N k]_x for fermions (Gaussian binomial
/// counting hole configurations).
fn generating_function_moments(big_n: u32, x: f64, fermi: bool) -> (f64, f64) {
    let z_up_to =
        |k: u32| -> f64 { (1..=k).map(|j| 1.0 / (1.0 - x.powi(j as i32))).product() };
    let gaussian_binomial = |k: u32| -> f64 {
        (1..=k)
            .map(|i| (1.0 - x.powi((big_n - k + i) as i32)) / (1.0 - x.powi(i as i32)))
            .product()
    };
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for k in 0..=big_n {
        let gf = if fermi {
            x.powi((k * k) as i32) * z_up_to(k) * gaussian_binomial(k)
        } else {
            x.powi(k as i32) * z_up_to(k)
        };
        s0 += gf;
        s1 += k as f64 * gf;
        s2 += (k as f64) * (k as f64) * gf;
    }
    (s1 / s0, s2 / s0)
}

// =============================================================================
// Tests
// =============================================================================
