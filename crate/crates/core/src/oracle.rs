//! Brute-force reference routes.
//!
//! Everything here trades speed for obviousness: microstates are enumerated
//! one by one and classified with the most literal rule available, so the
//! fast table- and convolution-based paths can be checked against code that
//! shares none of their machinery.
//!
//! * Bose: the excited count of a microstate is its number of nonzero parts.
//! * Fermi: it is the side of the largest square fitting in the Young
//!   diagram's corner (exactly the particles lifted above the Fermi sea).
//! * FES: it is read off the exact rational quasiparticle energies.

use crate::fes::{QuasiparticleState, Statistics};

/// Visits every partition of `n` into at most `max_parts` parts, as
/// non-increasing slices in descending lexicographic order.  `n = 0` visits
/// the empty partition once.
pub fn for_each_partition<F: FnMut(&[usize])>(n: usize, max_parts: usize, mut visit: F) {
    let mut parts = Vec::with_capacity(max_parts);
    descend(&mut parts, n, n, max_parts, &mut visit);
}

fn descend<F: FnMut(&[usize])>(
    parts: &mut Vec<usize>,
    remaining: usize,
    largest: usize,
    slots: usize,
    visit: &mut F,
) {
    if remaining == 0 {
        visit(parts);
        return;
    }
    if slots == 0 {
        return;
    }
    // The next part is the largest left, so it must cover its share.
    let floor = remaining.div_ceil(slots);
    let top = largest.min(remaining);
    for part in (floor..=top).rev() {
        parts.push(part);
        descend(parts, remaining - part, part, slots - 1, visit);
        parts.pop();
    }
}

/// Side of the Durfee square: the largest `d` with at least `d` parts ≥ `d`.
pub fn durfee_side(parts: &[usize]) -> usize {
    parts
        .iter()
        .enumerate()
        .take_while(|&(i, &part)| part >= i + 1)
        .count()
}

fn classify(parts: &[usize], big_n: u32, statistics: &Statistics) -> u32 {
    match statistics {
        Statistics::Bose => parts.len() as u32,
        Statistics::Fermi => durfee_side(parts) as u32,
        Statistics::Fes(g) => QuasiparticleState::from_partition(parts, big_n)
            .expect("enumeration respects the part bound")
            .excited_count(*g),
    }
}

/// ω(n, ·, N) by classifying every microstate one at a time; index `k − 1`
/// holds the count for `k` excited particles.  Intended for small shells.
pub fn oracle_multiplicities(n: usize, big_n: u32, statistics: &Statistics) -> Vec<u64> {
    let mut tally = vec![0u64; big_n as usize];
    for_each_partition(n, big_n as usize, |parts| {
        let k = classify(parts, big_n, statistics);
        if k >= 1 {
            tally[k as usize - 1] += 1;
        }
    });
    tally
}

/// Canonical-ensemble ⟨N_ex⟩ and ⟨N_ex²⟩ at Boltzmann factor `x` by summing
/// x^n over every microstate with n ≤ n_max.  The caller picks n_max large
/// enough that the dropped tail is negligible at the working x.
pub fn brute_thermal_moments(
    n_max: usize,
    big_n: u32,
    statistics: &Statistics,
    x: f64,
) -> (f64, f64) {
    let (mut s0, mut s1, mut s2) = (0.0f64, 0.0f64, 0.0f64);
    for n in 0..=n_max {
        let weight = x.powi(n as i32);
        for_each_partition(n, big_n as usize, |parts| {
            let k = classify(parts, big_n, statistics) as f64;
            s0 += weight;
            s1 += k * weight;
            s2 += k * k * weight;
        });
    }
    (s1 / s0, s2 / s0)
}

/// A safe `n_max` for [`brute_thermal_moments`]: past the returned shell,
/// every Boltzmann-weighted shell contributes less than ~1e-14 of the total
/// (using the crude bound Ω(n, N) ≤ (n + 1)^(N − 1)), so truncating there
/// leaves the moments exact to well inside a 1e-10 relative comparison.
pub fn brute_cutoff(big_n: u32, x: f64) -> usize {
    assert!((0.0..1.0).contains(&x), "need 0 <= x < 1, got {x}");
    if x == 0.0 {
        return 1;
    }
    let log_target = (1e-14 * (1.0 - x)).ln();
    let poly_degree = big_n.saturating_sub(1) as f64;
    let mut n = 1usize;
    while poly_degree * ((n + 1) as f64).ln() + n as f64 * x.ln() >= log_target {
        n += 1;
    }
    n
}

// =============================================================================
// Tests
// =============================================================================
