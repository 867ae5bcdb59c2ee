//! Microcanonical multiplicities ω(n, N_ex, N) and ground-state statistics.
//!
//! At fixed excitation energy `n` (quanta above the ground state) of an
//! `N`-particle ideal gas in a 1D harmonic trap, every microstate is an
//! integer partition of `n` with at most `N` parts, and ω(n, N_ex, N) counts
//! the microstates with exactly `N_ex` particles out of the ground state:
//!
//! * bosons: the parts *are* the single-particle excitations, so
//!   ω(n, N_ex, N) = Ω(n − N_ex, N_ex) — put one quantum on each of the
//!   `N_ex` excited particles, distribute the rest among them;
//! * fermions: an excited block of `N_ex` particles above the Fermi level and
//!   `N_ex` holes below it share the quanta.  Lifting the block costs
//!   N_ex(N_ex+1)/2 quanta and stacking the holes against the Fermi edge
//!   costs N_ex(N_ex−1)/2, so nothing moves until n ≥ N_ex².  The remainder
//!   splits into free particle quanta (partitions with at most N_ex parts)
//!   and hole quanta (at most N_ex parts, each ≤ N − N_ex), counted by a
//!   single convolution.
//!
//! All counts are exact big integers; probabilities are formed by a single
//! floating-point division at the very end.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fes::{self, Statistics};
use crate::numeric::ratio_to_f64;
use crate::partitions::{BoundedPartitionTable, PartitionTable, TableCache};

/// Default refusal threshold for microstate enumeration (number of
/// partitions visited), used by the generic-coupling path.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Minimum quanta to lift a block of `n_ex` fermions above the Fermi level:
/// 1 + 2 + … + n_ex.
pub fn particle_min_quanta(n_ex: u32) -> usize {
    let k = n_ex as usize;
    k * (k + 1) / 2
}

/// Minimum quanta carried by the `n_ex` holes the block leaves behind:
/// 0 + 1 + … + (n_ex − 1).
pub fn hole_min_quanta(n_ex: u32) -> usize {
    let k = n_ex as usize;
    k * (k - 1) / 2
}

pub(crate) fn check_excited_count(n_ex: u32, big_n: u32) -> Result<()> {
    if n_ex == 0 || n_ex > big_n {
        return Err(Error::ExcitedCountOutOfRange { n_ex, big_n });
    }
    Ok(())
}

/// ω for ideal bosons: Ω(n − n_ex, n_ex), zero when n < n_ex.  Independent of
/// `N` apart from the bound n_ex ≤ N.
pub fn bose_multiplicity(cache: &TableCache, n: usize, n_ex: u32, big_n: u32) -> Result<BigUint> {
    check_excited_count(n_ex, big_n)?;
    if n < n_ex as usize {
        return Ok(BigUint::zero());
    }
    let rest = n - n_ex as usize;
    let table = cache.partition_table(rest, n_ex)?;
    Ok(table.canonical_multiplicity(rest, n_ex)?.clone())
}

/// Convolution of free particle quanta against the hole table.
fn fermi_convolution(
    table: &PartitionTable,
    holes: &[BigUint],
    rest: usize,
    n_ex: u32,
) -> Result<BigUint> {
    let mut acc = BigUint::zero();
    for (hole_quanta, hole_count) in holes.iter().enumerate().take(rest + 1) {
        if hole_count.is_zero() {
            continue;
        }
        acc += hole_count * table.canonical_multiplicity(rest - hole_quanta, n_ex)?;
    }
    Ok(acc)
}

/// ω for ideal fermions via the particle–hole decomposition; zero when
/// n < n_ex².
pub fn fermi_multiplicity(cache: &TableCache, n: usize, n_ex: u32, big_n: u32) -> Result<BigUint> {
    check_excited_count(n_ex, big_n)?;
    let threshold = n_ex as usize * n_ex as usize;
    if n < threshold {
        return Ok(BigUint::zero());
    }
    let rest = n - threshold;
    let holes = cache.hole_table(big_n, n_ex)?;
    let table = cache.partition_table(rest, n_ex)?;
    fermi_convolution(&table, holes.counts(), rest, n_ex)
}

/// The full ω(n, ·, N) vector for one energy shell.
#[derive(Clone, Debug)]
pub struct MultiplicityDistribution {
    n: usize,
    big_n: u32,
    statistics: Statistics,
    /// `omega[k − 1]` is ω(n, k, N).
    omega: Vec<BigUint>,
}

impl MultiplicityDistribution {
    pub(crate) fn new(n: usize, big_n: u32, statistics: Statistics, omega: Vec<BigUint>) -> Self {
        debug_assert_eq!(omega.len(), big_n as usize);
        MultiplicityDistribution {
            n,
            big_n,
            statistics,
            omega,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn statistics(&self) -> &Statistics {
        &self.statistics
    }

    /// ω(n, n_ex, N).  Panics if `n_ex` is outside `1..=N`.
    pub fn omega(&self, n_ex: u32) -> &BigUint {
        assert!(
            n_ex >= 1 && n_ex <= self.big_n,
            "n_ex = {n_ex} outside 1..={}",
            self.big_n
        );
        &self.omega[n_ex as usize - 1]
    }

    /// `(n_ex, ω)` pairs for n_ex = 1..=N.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.omega.iter().enumerate().map(|(i, w)| (i as u32 + 1, w))
    }

    /// Σ_{n_ex} ω — equals Ω(n, N) for every n ≥ 1 (the vacuum at n = 0 sits
    /// at N_ex = 0 and is not part of this vector).
    pub fn total(&self) -> BigUint {
        self.omega.iter().sum()
    }
}

/// ω(n, ·, N) under the given statistics.
///
/// Fractional couplings with a closed form — the grid neighbours of Fermi
/// ((N−2)/(N−1)) and Bose (1/(N−1)) plus the endpoints themselves — go
/// through the production formulas; any other coupling falls back to direct
/// microstate enumeration, refused above `budget` visited partitions.
pub fn distribution(
    cache: &TableCache,
    n: usize,
    big_n: u32,
    statistics: &Statistics,
    budget: u64,
) -> Result<MultiplicityDistribution> {
    if big_n == 0 {
        return Err(Error::SystemTooSmall { big_n: 0, min: 1 });
    }
    let omega = match statistics {
        Statistics::Bose => (1..=big_n)
            .map(|k| bose_multiplicity(cache, n, k, big_n))
            .collect::<Result<Vec<_>>>()?,
        Statistics::Fermi => (1..=big_n)
            .map(|k| fermi_multiplicity(cache, n, k, big_n))
            .collect::<Result<Vec<_>>>()?,
        Statistics::Fes(g) => {
            if g.is_zero() {
                return distribution(cache, n, big_n, &Statistics::Bose, budget)
                    .map(|d| d.relabel(statistics.clone()));
            }
            if g.is_one() {
                return distribution(cache, n, big_n, &Statistics::Fermi, budget)
                    .map(|d| d.relabel(statistics.clone()));
            }
            if big_n >= 3 && *g == fes::near_fermi_coupling(big_n) {
                (1..=big_n)
                    .map(|k| fes::fes_multiplicity_near_fermi(cache, n, k, big_n))
                    .collect::<Result<Vec<_>>>()?
            } else if big_n >= 2 && *g == fes::near_bose_coupling(big_n) {
                (1..=big_n)
                    .map(|k| fes::fes_multiplicity_near_bose(cache, n, k, big_n))
                    .collect::<Result<Vec<_>>>()?
            } else {
                return fes::enumerate_fes(cache, n, big_n, *g, budget)
                    .map(|d| d.relabel(statistics.clone()));
            }
        }
    };
    Ok(MultiplicityDistribution::new(
        n,
        big_n,
        statistics.clone(),
        omega,
    ))
}

impl MultiplicityDistribution {
    fn relabel(mut self, statistics: Statistics) -> Self {
        self.statistics = statistics;
        self
    }
}

/// Moments of the excited-particle count over one energy shell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundStateStats {
    /// ⟨N_ex⟩.
    pub mean_excited: f64,
    /// ⟨N_ex²⟩.
    pub second_moment: f64,
    /// δN₀ = sqrt(⟨N_ex²⟩ − ⟨N_ex⟩²), the ground-state number fluctuation.
    pub fluctuation: f64,
}

impl GroundStateStats {
    pub const ZERO: GroundStateStats = GroundStateStats {
        mean_excited: 0.0,
        second_moment: 0.0,
        fluctuation: 0.0,
    };

    pub fn variance(&self) -> f64 {
        self.fluctuation * self.fluctuation
    }
}

/// Exact moment sums over one shell: S_r = Σ_{n_ex} ω·n_ex^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSums {
    pub s0: BigUint,
    pub s1: BigUint,
    pub s2: BigUint,
}

impl MomentSums {
    /// The variance as an exact fraction (numerator, denominator):
    /// (S₂S₀ − S₁²) / S₀².  `None` on the empty vacuum shell.
    pub fn variance_ratio(&self) -> Option<(BigUint, BigUint)> {
        if self.s0.is_zero() {
            return None;
        }
        let num = BigInt::from(&self.s2 * &self.s0) - BigInt::from(&self.s1 * &self.s1);
        let num = num
            .to_biguint()
            .expect("second moment dominates squared mean");
        Some((num, &self.s0 * &self.s0))
    }

    /// Exact ordering of two shell variances by cross-multiplication.
    /// `None` if either shell is the empty vacuum.
    pub fn compare_variance(&self, other: &MomentSums) -> Option<std::cmp::Ordering> {
        let (na, da) = self.variance_ratio()?;
        let (nb, db) = other.variance_ratio()?;
        Some((na * db).cmp(&(nb * da)))
    }
}

/// Σω, Σω·k, Σω·k² in exact arithmetic.
pub fn moment_sums(dist: &MultiplicityDistribution) -> MomentSums {
    let mut s0 = BigUint::zero();
    let mut s1 = BigUint::zero();
    let mut s2 = BigUint::zero();
    for (k, w) in dist.iter() {
        if w.is_zero() {
            continue;
        }
        let k = BigUint::from(k);
        s0 += w;
        s1 += w * &k;
        s2 += w * (&k * &k);
    }
    MomentSums { s0, s1, s2 }
}

/// ⟨N_ex⟩, ⟨N_ex²⟩ and δN₀ from exact integer sums.  The variance numerator
/// Σω·k²·Σω − (Σω·k)² is formed in exact arithmetic before the one final
/// division, so near-cancellation costs no precision.
pub fn ground_state_stats(dist: &MultiplicityDistribution) -> GroundStateStats {
    let sums = moment_sums(dist);
    let Some((var_num, var_den)) = sums.variance_ratio() else {
        // Only the vacuum shell (n = 0) is empty.
        return GroundStateStats::ZERO;
    };
    let mean_excited = ratio_to_f64(&sums.s1, &sums.s0);
    let second_moment = ratio_to_f64(&sums.s2, &sums.s0);
    let variance = ratio_to_f64(&var_num, &var_den);
    GroundStateStats {
        mean_excited,
        second_moment,
        fluctuation: variance.sqrt(),
    }
}

// =============================================================================
// Sweep kernel
// =============================================================================

enum HoleCounts {
    /// Full table shared through the cache.
    Full(Arc<BoundedPartitionTable>),
    /// Degree-capped private copy for large-N sweeps.
    Capped(Vec<BigUint>),
    /// n_ex² exceeds the sweep ceiling; never consulted.
    Unreachable,
}

impl HoleCounts {
    fn slice(&self) -> &[BigUint] {
        match self {
            HoleCounts::Full(t) => t.counts(),
            HoleCounts::Capped(v) => v,
            HoleCounts::Unreachable => &[],
        }
    }
}

/// Precomputed state for evaluating fermionic ω rows over a whole n-sweep:
/// one shared partition table plus one hole table per n_ex, degree-capped at
/// the largest hole energy the sweep can reach.
pub(crate) struct FermiKernel {
    big_n: u32,
    n_max: usize,
    table: Arc<PartitionTable>,
    holes: Vec<HoleCounts>,
}

impl FermiKernel {
    pub(crate) fn new(cache: &TableCache, big_n: u32, n_max: usize) -> Result<Self> {
        if big_n == 0 {
            return Err(Error::SystemTooSmall { big_n: 0, min: 1 });
        }
        let table = cache.partition_table(n_max, big_n)?;
        let mut holes = Vec::with_capacity(big_n as usize);
        for n_ex in 1..=big_n {
            let threshold = n_ex as usize * n_ex as usize;
            if threshold > n_max {
                holes.push(HoleCounts::Unreachable);
                continue;
            }
            let cap = n_max - threshold;
            let full_len = n_ex as usize * (big_n - n_ex) as usize;
            if cap >= full_len {
                holes.push(HoleCounts::Full(cache.hole_table(big_n, n_ex)?));
            } else {
                holes.push(HoleCounts::Capped(crate::partitions::bounded_counts_capped(
                    n_ex,
                    big_n - n_ex,
                    cap,
                )?));
            }
        }
        Ok(FermiKernel {
            big_n,
            n_max,
            table,
            holes,
        })
    }

    pub(crate) fn omega(&self, n: usize, n_ex: u32) -> Result<BigUint> {
        debug_assert!(n <= self.n_max);
        let threshold = n_ex as usize * n_ex as usize;
        if n < threshold {
            return Ok(BigUint::zero());
        }
        let rest = n - threshold;
        fermi_convolution(
            &self.table,
            self.holes[n_ex as usize - 1].slice(),
            rest,
            n_ex,
        )
    }

    pub(crate) fn omega_row(&self, n: usize) -> Result<Vec<BigUint>> {
        (1..=self.big_n).map(|k| self.omega(n, k)).collect()
    }
}

// =============================================================================
// Tests
// =============================================================================
