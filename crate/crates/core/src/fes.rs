//! Fractional exclusion statistics (FES) in the harmonic trap.
//!
//! A coupling `g ∈ [0, 1]` interpolates between ideal bosons (g = 0) and
//! ideal fermions (g = 1); the trapped Calogero–Sutherland gas realizes it
//! microscopically.  Each fermionic microstate maps onto an FES microstate
//! with the same excitation energy: a particle occupying level `k` with `i−1`
//! particles below it carries the quasiparticle energy
//!
//! ```text
//! ε_g(k, i) = (k − 1/2) − (1 − g)·(i − 1),
//! ```
//!
//! and it counts as excited exactly when ε_g lies *strictly* above the
//! ground-state top quasiparticle (the FES "Fermi level"), no matter how
//! close.  That comparison is carried out in exact rational arithmetic.
//!
//! Two couplings adjacent to the endpoints on the grid {k/(N−1)} admit closed
//! forms in terms of the ideal-gas multiplicities and are the production path
//! for sweeps:
//!
//! * `g = (N−2)/(N−1)`: a size-difference of fermionic counts,
//!   ω(n, n_ex) = ω^F(n+N, n_ex, N) − ω^F(n+N, n_ex, N−1);
//! * `g = 1/(N−1)`: bosonic counts with the two topmost n_ex values rewired,
//!   ω(n, N−1) = ω^B(n, N−1, N) + ω^B(n−1, N−1, N) and
//!   ω(n, N) = ω^B(n−N, N, N).
//!
//! [`enumerate_fes`] classifies every microstate directly and works for any
//! rational coupling; it is the validation path and is budget-guarded.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::microcanonical::{
    bose_multiplicity, check_excited_count, fermi_multiplicity, MultiplicityDistribution,
};
use crate::oracle::for_each_partition;
use crate::partitions::TableCache;

/// Exclusion-statistics coupling, an exact rational in `[0, 1]`.
pub type Coupling = Ratio<u64>;

/// Which single-particle counting rule governs the gas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statistics {
    Bose,
    Fermi,
    /// Fractional exclusion statistics at coupling `g`.
    Fes(Coupling),
}

impl Statistics {
    /// FES at `numer/denom`; rejects couplings outside `[0, 1]`.
    pub fn fes(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 || numer > denom {
            return Err(Error::UnsupportedStatistics {
                got: format!("fes:{numer}/{denom}"),
            });
        }
        Ok(Statistics::Fes(Ratio::new(numer, denom)))
    }

    /// The coupling this rule corresponds to (0 for Bose, 1 for Fermi).
    pub fn coupling(&self) -> Coupling {
        match self {
            Statistics::Bose => Coupling::zero(),
            Statistics::Fermi => Coupling::one(),
            Statistics::Fes(g) => *g,
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Bose => write!(f, "bose"),
            Statistics::Fermi => write!(f, "fermi"),
            Statistics::Fes(g) => write!(f, "fes:{}/{}", g.numer(), g.denom()),
        }
    }
}

impl FromStr for Statistics {
    type Err = Error;

    /// Accepts `bose`, `fermi`, and `fes:p/q` (or `fes:p` for integer p).
    fn from_str(s: &str) -> Result<Self> {
        let unsupported = || Error::UnsupportedStatistics { got: s.to_string() };
        match s {
            "bose" => Ok(Statistics::Bose),
            "fermi" => Ok(Statistics::Fermi),
            _ => {
                let body = s.strip_prefix("fes:").ok_or_else(unsupported)?;
                let (p, q) = match body.split_once('/') {
                    Some((p, q)) => (p, q),
                    None => (body, "1"),
                };
                let p: u64 = p.parse().map_err(|_| unsupported())?;
                let q: u64 = q.parse().map_err(|_| unsupported())?;
                Statistics::fes(p, q)
            }
        }
    }
}

/// The grid coupling just below Fermi: (N−2)/(N−1).
pub fn near_fermi_coupling(big_n: u32) -> Coupling {
    assert!(big_n >= 2, "coupling grid needs N >= 2");
    Ratio::new(big_n as u64 - 2, big_n as u64 - 1)
}

/// The grid coupling just above Bose: 1/(N−1).
pub fn near_bose_coupling(big_n: u32) -> Coupling {
    assert!(big_n >= 2, "coupling grid needs N >= 2");
    Ratio::new(1, big_n as u64 - 1)
}

/// The discrete couplings {1, (N−2)/(N−1), …, 1/(N−1), 0} at which the FES
/// "Fermi level" N − (1−g)(N−1) is integral, listed from Fermi to Bose.
pub fn discrete_g_grid(big_n: u32) -> Result<Vec<Coupling>> {
    if big_n < 2 {
        return Err(Error::SystemTooSmall { big_n, min: 2 });
    }
    Ok((0..big_n as u64)
        .rev()
        .map(|k| Ratio::new(k, big_n as u64 - 1))
        .collect())
}

/// Ground-state energy g·N(N−1)/2 + N/2 in trap units (ħω = 1).
pub fn ground_state_energy(big_n: u32, statistics: &Statistics) -> Coupling {
    let n = big_n as u64;
    let g = statistics.coupling();
    Ratio::new(n * (n - 1), 2) * g + Ratio::new(n, 2)
}

/// One N-particle microstate viewed through the quasiparticle spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiparticleState {
    big_n: u32,
    /// Occupied levels, strictly increasing, 1-based.
    levels: Vec<usize>,
}

impl QuasiparticleState {
    /// Builds the state whose excitation pattern is the given partition
    /// (non-increasing parts): the topmost particle absorbs the largest part.
    pub fn from_partition(parts: &[usize], big_n: u32) -> Result<Self> {
        if parts.len() > big_n as usize {
            return Err(Error::PartsOutOfRange {
                parts: parts.len() as u32,
                max_parts: big_n,
            });
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let n = big_n as usize;
        let levels = (1..=n)
            .map(|i| i + parts.get(n - i).copied().unwrap_or(0))
            .collect();
        Ok(QuasiparticleState { big_n, levels })
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Total quanta above the ground state; independent of the coupling.
    pub fn excitation(&self) -> usize {
        let n = self.big_n as usize;
        self.levels.iter().sum::<usize>() - n * (n + 1) / 2
    }

    /// ε_g for each particle, bottom to top.
    pub fn quasi_energies(&self, g: Coupling) -> Vec<Ratio<i64>> {
        let p = *g.numer() as i64;
        let q = *g.denom() as i64;
        self.levels
            .iter()
            .enumerate()
            .map(|(below, &k)| {
                // (k − 1/2) − (1 − g)·below, over the common denominator 2q.
                Ratio::new((2 * k as i64 - 1) * q - 2 * (q - p) * below as i64, 2 * q)
            })
            .collect()
    }

    /// The ground-state top quasiparticle position, N − 1/2 − (1−g)(N−1).
    pub fn fermi_level(big_n: u32, g: Coupling) -> Ratio<i64> {
        let p = *g.numer() as i64;
        let q = *g.denom() as i64;
        let n = big_n as i64;
        Ratio::new((2 * n - 1) * q - 2 * (q - p) * (n - 1), 2 * q)
    }

    /// How many particles sit strictly above the FES Fermi level.
    pub fn excited_count(&self, g: Coupling) -> u32 {
        let fermi = Self::fermi_level(self.big_n, g);
        self.quasi_energies(g)
            .iter()
            .filter(|e| **e > fermi)
            .count() as u32
    }
}

/// Fast form of the same classification, straight off the partition: the
/// particle `m` levels from the top (m = 1 is the topmost) is excited iff
/// λ_m > g·(m−1).  Integer cross-multiplication, no rationals allocated.
pub(crate) fn excited_count(parts: &[usize], g: Coupling) -> u32 {
    let p = *g.numer() as u128;
    let q = *g.denom() as u128;
    parts
        .iter()
        .enumerate()
        .filter(|(idx, &part)| part as u128 * q > p * *idx as u128)
        .count() as u32
}

/// ω(n, ·, N) at an arbitrary coupling by classifying every microstate.
/// Refuses once the shell holds more than `budget` partitions.
pub fn enumerate_fes(
    cache: &TableCache,
    n: usize,
    big_n: u32,
    g: Coupling,
    budget: u64,
) -> Result<MultiplicityDistribution> {
    if big_n == 0 {
        return Err(Error::SystemTooSmall { big_n: 0, min: 1 });
    }
    if g > Coupling::one() {
        return Err(Error::UnsupportedStatistics {
            got: format!("fes:{}/{}", g.numer(), g.denom()),
        });
    }
    let table = cache.partition_table(n, big_n)?;
    let states = table.canonical_multiplicity(n, big_n)?;
    if *states > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            n,
            max_parts: big_n,
            states: states.clone(),
            budget,
        });
    }
    let mut tally = vec![0u64; big_n as usize];
    for_each_partition(n, big_n as usize, |parts| {
        let k = excited_count(parts, g);
        if k >= 1 {
            tally[k as usize - 1] += 1;
        }
    });
    let omega = tally.into_iter().map(BigUint::from).collect();
    Ok(MultiplicityDistribution::new(
        n,
        big_n,
        Statistics::Fes(g),
        omega,
    ))
}

/// Closed form at g = (N−2)/(N−1): the fermionic count of the same shell
/// lifted by one quantum per particle, minus the states that fit in an
/// (N−1)-particle system.
///
/// The lifted shell has one extra microstate at n = 0 — the all-ones column,
/// whose difference count would land on n_ex = 1 even though nothing is
/// excited — so the vacuum shell is answered directly.
pub fn fes_multiplicity_near_fermi(
    cache: &TableCache,
    n: usize,
    n_ex: u32,
    big_n: u32,
) -> Result<BigUint> {
    if big_n < 3 {
        return Err(Error::SystemTooSmall { big_n, min: 3 });
    }
    check_excited_count(n_ex, big_n)?;
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let lifted = n + big_n as usize;
    let wide = fermi_multiplicity(cache, lifted, n_ex, big_n)?;
    let narrow = if n_ex < big_n {
        fermi_multiplicity(cache, lifted, n_ex, big_n - 1)?
    } else {
        BigUint::zero()
    };
    if narrow > wide {
        return Err(Error::NegativeMultiplicity { n, n_ex, big_n });
    }
    Ok(wide - narrow)
}

/// Closed form at g = 1/(N−1): bosonic counts except at the top of the
/// n_ex range, where fully occupied towers reshuffle between N−1 and N.
pub fn fes_multiplicity_near_bose(
    cache: &TableCache,
    n: usize,
    n_ex: u32,
    big_n: u32,
) -> Result<BigUint> {
    if big_n < 2 {
        return Err(Error::SystemTooSmall { big_n, min: 2 });
    }
    check_excited_count(n_ex, big_n)?;
    if n_ex == big_n {
        return if n >= big_n as usize {
            bose_multiplicity(cache, n - big_n as usize, big_n, big_n)
        } else {
            Ok(BigUint::zero())
        };
    }
    if n_ex == big_n - 1 {
        let mut v = bose_multiplicity(cache, n, n_ex, big_n)?;
        if n >= 1 {
            v += bose_multiplicity(cache, n - 1, n_ex, big_n)?;
        }
        return Ok(v);
    }
    bose_multiplicity(cache, n, n_ex, big_n)
}

// =============================================================================
// Tests
// =============================================================================
