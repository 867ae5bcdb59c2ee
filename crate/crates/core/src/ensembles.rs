//! Canonical-ensemble comparison curves.
//!
//! At temperature T the N-particle gas occupies the energy shell `n` with
//! probability P(n) ∝ Ω(n, N)·xⁿ, where x = e^{−1/T} (trap units, k_B = 1)
//! and the ground-state energy prefactor cancels.  Canonical moments of the
//! excited-particle count are therefore thermal mixtures of the exact
//! microcanonical shell moments; [`CanonicalMixture`] holds the per-shell
//! data and reweights it for any x up to the window it was built for.
//!
//! The shell series is truncated against the closed-form total
//! Σ_n Ω(n, N)·xⁿ = Π_{j=1}^{N} (1 − x^j)^{−1}, so the discarded tail is
//! certified — not estimated — to carry relative weight below
//! [`CE_TAIL_TOLERANCE`].
//!
//! The CE mean excitation has the closed form ⟨n⟩(x) = Σ_j j·x^j/(1 − x^j),
//! which is strictly increasing in x; [`invert_mean_excitation`] uses it to
//! express CE curves against mean excitation instead of temperature, the
//! convention used to compare them with microcanonical curves.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fes::{Coupling, Statistics};
use crate::microcanonical::{distribution, ground_state_stats, GroundStateStats};
use crate::numeric::ln_biguint;
use crate::partitions::{TableCache, PARTITION_ENTRY_LIMIT};

/// Relative thermal weight allowed beyond the truncation window.
pub const CE_TAIL_TOLERANCE: f64 = 1e-12;

/// Largest x the bisection will consider; targets needing more are refused.
const X_CEILING: f64 = 1.0 - 1e-12;

fn check_boltzmann_factor(x: f64) -> Result<()> {
    if x.is_finite() && 0.0 < x && x < 1.0 {
        Ok(())
    } else {
        Err(Error::BoltzmannFactorOutOfRange { x })
    }
}

/// ln Π_{j=1}^{N} (1 − x^j)^{−1}, the closed form of ln Σ_n Ω(n, N)·xⁿ.
fn ln_partition_function(big_n: u32, x: f64) -> f64 {
    let ln_x = x.ln();
    (1..=big_n)
        .map(|j| -(-(j as f64 * ln_x).exp_m1()).ln())
        .sum()
}

/// CE mean excitation ⟨n⟩(x) = Σ_{j=1}^{N} j·x^j/(1 − x^j); exact up to
/// rounding, stable arbitrarily close to x = 1 via expm1.
pub fn mean_excitation(big_n: u32, x: f64) -> Result<f64> {
    check_boltzmann_factor(x)?;
    let ln_x = x.ln();
    Ok((1..=big_n)
        .map(|j| {
            let e = (j as f64 * ln_x).exp_m1(); // x^j − 1
            j as f64 * (1.0 + e) / -e
        })
        .sum())
}

/// Solves ⟨n⟩(x) = target by bisection, to |⟨n⟩ − target| < 1e−9·max(1, target).
/// The mean is strictly increasing in x, so the root is unique.
pub fn invert_mean_excitation(big_n: u32, target: f64) -> Result<f64> {
    if big_n == 0 {
        return Err(Error::SystemTooSmall { big_n: 0, min: 1 });
    }
    if !target.is_finite() || target <= 0.0 {
        return Err(Error::TargetUnreachable { target });
    }
    if mean_excitation(big_n, X_CEILING)? < target {
        return Err(Error::TargetUnreachable { target });
    }
    let tolerance = 1e-9 * target.max(1.0);
    // The lower endpoint is the x → 0 limit (mean 0), kept virtual because
    // the mean is only defined on the open interval.
    let (mut lo, mut hi) = (0.0f64, X_CEILING);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval has collapsed to adjacent floats
        }
        let mean = mean_excitation(big_n, mid)?;
        if (mean - target).abs() < tolerance {
            return Ok(mid);
        }
        if mean < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::BisectionStalled { target, tolerance })
}

/// Shells needed so that Σ_{n ≥ len} Ω(n, N)·xⁿ is below [`CE_TAIL_TOLERANCE`]
/// of the closed-form total.  Marches a floating-point image of the Ω
/// recurrence — the window length needs no exactness, the certification
/// comes from the closed-form denominator.
fn window_len(big_n: u32, x: f64) -> Result<usize> {
    let ln_x = x.ln();
    let ln_total = ln_partition_function(big_n, x);
    let cols = big_n as usize + 1;
    // Ring of the last N+1 rows of Ω(·, k), jointly rescaled to stay finite.
    let mut ring = vec![vec![0.0f64; cols]; cols];
    let mut scale_ln = 0.0f64;
    let mut covered = 0.0f64;
    let mut n = 0usize;
    loop {
        let mut row = vec![0.0f64; cols];
        row[0] = if n == 0 { (-scale_ln).exp() } else { 0.0 };
        for k in 1..cols {
            row[k] = row[k - 1] + if k <= n { ring[(n - k) % cols][k] } else { 0.0 };
        }
        covered += (row[cols - 1].ln() + scale_ln + n as f64 * ln_x - ln_total).exp();
        if 1.0 - covered < CE_TAIL_TOLERANCE {
            return Ok(n + 1);
        }
        let entries = (n as u128 + 2) * cols as u128;
        if entries > PARTITION_ENTRY_LIMIT {
            return Err(Error::TableTooLarge {
                entries,
                limit: PARTITION_ENTRY_LIMIT,
            });
        }
        if row[cols - 1] > 1e250 {
            let down = 1e-250;
            scale_ln += 250.0 * std::f64::consts::LN_10;
            for r in ring.iter_mut() {
                for v in r.iter_mut() {
                    *v *= down;
                }
            }
            for v in row.iter_mut() {
                *v *= down;
            }
        }
        ring[n % cols] = row;
        n += 1;
    }
}

/// One temperature point of the canonical ensemble.
#[derive(Clone, Copy, Debug)]
pub struct ThermalPoint {
    /// Boltzmann factor e^{−1/T}, in (0, 1).
    pub x: f64,
    /// CE mean excitation ⟨n⟩ at this x (closed form).
    pub mean_excitation: f64,
    /// CE moments of the excited-particle count.
    pub ce_stats: GroundStateStats,
}

/// Thermal mixture of exact microcanonical shells, reusable across the whole
/// x range it was built for.
pub struct CanonicalMixture {
    big_n: u32,
    statistics: Statistics,
    x_max: f64,
    /// ln Ω(n, N) for n = 0..window.
    ln_omega: Vec<f64>,
    /// Per-shell ⟨N_ex⟩ and ⟨N_ex²⟩ (shell 0 is the vacuum: both zero).
    m1: Vec<f64>,
    m2: Vec<f64>,
}

impl CanonicalMixture {
    /// Builds per-shell data valid for every x ≤ `x_max`.  Arbitrary FES
    /// couplings go through the microstate enumerator shell by shell and are
    /// guarded by `budget`; the ideal gases and the two grid couplings next
    /// to them use their closed-form multiplicities.
    pub fn new(
        cache: &TableCache,
        big_n: u32,
        statistics: &Statistics,
        x_max: f64,
        budget: u64,
    ) -> Result<Self> {
        if big_n == 0 {
            return Err(Error::SystemTooSmall { big_n: 0, min: 1 });
        }
        check_boltzmann_factor(x_max)?;
        let len = window_len(big_n, x_max)?;
        // Grow the shared table once (closed forms reach n + N quanta), so
        // the parallel shell pass below only takes read locks.
        let table = cache.partition_table(len - 1 + big_n as usize, big_n)?;
        let shells: Vec<GroundStateStats> = (0..len)
            .into_par_iter()
            .map(|n| Ok(ground_state_stats(&distribution(cache, n, big_n, statistics, budget)?)))
            .collect::<Result<Vec<_>>>()?;
        let ln_omega = (0..len)
            .map(|n| Ok(ln_biguint(table.canonical_multiplicity(n, big_n)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CanonicalMixture {
            big_n,
            statistics: statistics.clone(),
            x_max,
            ln_omega,
            m1: shells.iter().map(|s| s.mean_excited).collect(),
            m2: shells.iter().map(|s| s.second_moment).collect(),
        })
    }

    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn statistics(&self) -> &Statistics {
        &self.statistics
    }

    /// Largest x this mixture's window is certified for.
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Number of energy shells retained.
    pub fn window(&self) -> usize {
        self.ln_omega.len()
    }

    /// Canonical moments at `x`, which must not exceed the built window.
    pub fn stats_at(&self, x: f64) -> Result<ThermalPoint> {
        check_boltzmann_factor(x)?;
        if x > self.x_max {
            return Err(Error::MixtureWindowExceeded {
                x,
                x_max: self.x_max,
            });
        }
        let ln_x = x.ln();
        let peak = self
            .ln_omega
            .iter()
            .enumerate()
            .map(|(n, lw)| lw + n as f64 * ln_x)
            .fold(f64::NEG_INFINITY, f64::max);
        let (mut s0, mut s1, mut s2) = (0.0f64, 0.0f64, 0.0f64);
        for (n, lw) in self.ln_omega.iter().enumerate() {
            let w = (lw + n as f64 * ln_x - peak).exp();
            s0 += w;
            s1 += w * self.m1[n];
            s2 += w * self.m2[n];
        }
        let mean_excited = s1 / s0;
        let second_moment = s2 / s0;
        let variance = (second_moment - mean_excited * mean_excited).max(0.0);
        Ok(ThermalPoint {
            x,
            mean_excitation: mean_excitation(self.big_n, x)?,
            ce_stats: GroundStateStats {
                mean_excited,
                second_moment,
                fluctuation: variance.sqrt(),
            },
        })
    }
}

/// One-shot canonical moments at `x`.
pub fn ce_stats_at(
    cache: &TableCache,
    x: f64,
    big_n: u32,
    statistics: &Statistics,
    budget: u64,
) -> Result<ThermalPoint> {
    CanonicalMixture::new(cache, big_n, statistics, x, budget)?.stats_at(x)
}

/// Coupling-weighted blend of the ideal-gas CE variances:
/// g·(δN₀)²_Fermi + (1 − g)·(δN₀)²_Bose.
pub fn blend_variances(g: Coupling, fermi_variance: f64, bose_variance: f64) -> f64 {
    let g = *g.numer() as f64 / *g.denom() as f64;
    g * fermi_variance + (1.0 - g) * bose_variance
}

/// Canonical ground-state fluctuation of the FES gas at coupling `g`:
/// the variance blend of the two ideal gases at the same x.  Returns
/// (variance, fluctuation).
pub fn ce_fluctuation_fes(
    cache: &TableCache,
    x: f64,
    big_n: u32,
    g: Coupling,
    budget: u64,
) -> Result<(f64, f64)> {
    if g > Coupling::new(1, 1) {
        return Err(Error::UnsupportedStatistics {
            got: format!("fes:{}/{}", g.numer(), g.denom()),
        });
    }
    let fermi = ce_stats_at(cache, x, big_n, &Statistics::Fermi, budget)?;
    let bose = ce_stats_at(cache, x, big_n, &Statistics::Bose, budget)?;
    let variance = blend_variances(g, fermi.ce_stats.variance(), bose.ce_stats.variance());
    Ok((variance, variance.sqrt()))
}

// =============================================================================
// Tests
// =============================================================================
