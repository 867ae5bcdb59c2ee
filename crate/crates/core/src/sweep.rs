//! Fluctuation curves over a whole range of excitation energies.
//!
//! [`mce_series`] evaluates the exact microcanonical δN₀(n) for every shell
//! n = 0..=n_max; [`ce_fluctuation_series`] produces the canonical comparison
//! curve on the same axis, plotting each CE point at the Boltzmann factor
//! whose mean excitation equals n (energy matching).

use rayon::prelude::*;

use crate::ensembles::{invert_mean_excitation, blend_variances, CanonicalMixture};
use crate::error::Result;
use crate::fes::Statistics;
use crate::microcanonical::{
    distribution, ground_state_stats, FermiKernel, GroundStateStats, MultiplicityDistribution,
};
use crate::partitions::TableCache;

/// Exact microcanonical moments for every shell 0..=n_max.
pub struct FluctuationSeries {
    big_n: u32,
    statistics: Statistics,
    stats: Vec<GroundStateStats>,
}

impl FluctuationSeries {
    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn statistics(&self) -> &Statistics {
        &self.statistics
    }

    pub fn n_max(&self) -> usize {
        self.stats.len() - 1
    }

    pub fn stats(&self, n: usize) -> &GroundStateStats {
        &self.stats[n]
    }

    /// `(n, stats)` in increasing n.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &GroundStateStats)> {
        self.stats.iter().enumerate()
    }
}

/// δN₀(n) for n = 0..=n_max at the given statistics.
///
/// Fermions run through a sweep kernel holding degree-capped hole tables —
/// the caps keep the N = 100 tables small — and all shells are evaluated in
/// parallel.  Other statistics reuse the one-shot shell path, which is just
/// as fast for them.
pub fn mce_series(
    cache: &TableCache,
    big_n: u32,
    statistics: &Statistics,
    n_max: usize,
    budget: u64,
) -> Result<FluctuationSeries> {
    let stats = match statistics {
        Statistics::Fermi => {
            let kernel = FermiKernel::new(cache, big_n, n_max)?;
            (0..=n_max)
                .into_par_iter()
                .map(|n| {
                    let row = kernel.omega_row(n)?;
                    let dist = MultiplicityDistribution::new(n, big_n, Statistics::Fermi, row);
                    Ok(ground_state_stats(&dist))
                })
                .collect::<Result<Vec<_>>>()?
        }
        _ => {
            // Grow the shared table up front (the grid couplings reach
            // n + N quanta) so the parallel pass only takes read locks.
            cache.partition_table(n_max + big_n as usize, big_n)?;
            (0..=n_max)
                .into_par_iter()
                .map(|n| Ok(ground_state_stats(&distribution(cache, n, big_n, statistics, budget)?)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(FluctuationSeries {
        big_n,
        statistics: statistics.clone(),
        stats,
    })
}

/// One point of a canonical curve drawn against mean excitation.
#[derive(Clone, Copy, Debug)]
pub struct CanonicalCurvePoint {
    /// The shell energy this point is matched to: ⟨n⟩(x) = n.
    pub n: usize,
    /// Matching Boltzmann factor (0 for the n = 0 limit point).
    pub x: f64,
    /// CE ground-state variance (δN₀)².
    pub variance: f64,
    /// CE δN₀.
    pub fluctuation: f64,
}

/// The canonical δN₀ curve over n = 0..=n_max under energy matching.  For
/// ideal gases this reweights one shell mixture per point; FES couplings
/// blend the two ideal variances, g·(δN₀)²_F + (1−g)·(δN₀)²_B.  The n = 0
/// point is the exact x → 0 limit (zero fluctuation).
pub fn ce_fluctuation_series(
    cache: &TableCache,
    big_n: u32,
    statistics: &Statistics,
    n_max: usize,
    budget: u64,
) -> Result<Vec<CanonicalCurvePoint>> {
    let mut points = vec![CanonicalCurvePoint {
        n: 0,
        x: 0.0,
        variance: 0.0,
        fluctuation: 0.0,
    }];
    if n_max == 0 {
        return Ok(points);
    }
    let x_grid: Vec<f64> = (1..=n_max)
        .map(|n| invert_mean_excitation(big_n, n as f64))
        .collect::<Result<_>>()?;
    let x_top = *x_grid.last().expect("n_max >= 1");
    let variances: Vec<f64> = match statistics {
        Statistics::Fes(g) => {
            let fermi = CanonicalMixture::new(cache, big_n, &Statistics::Fermi, x_top, budget)?;
            let bose = CanonicalMixture::new(cache, big_n, &Statistics::Bose, x_top, budget)?;
            x_grid
                .iter()
                .map(|&x| {
                    Ok(blend_variances(
                        *g,
                        fermi.stats_at(x)?.ce_stats.variance(),
                        bose.stats_at(x)?.ce_stats.variance(),
                    ))
                })
                .collect::<Result<_>>()?
        }
        _ => {
            let mixture = CanonicalMixture::new(cache, big_n, statistics, x_top, budget)?;
            x_grid
                .iter()
                .map(|&x| Ok(mixture.stats_at(x)?.ce_stats.variance()))
                .collect::<Result<_>>()?
        }
    };
    for (i, (&x, &variance)) in x_grid.iter().zip(&variances).enumerate() {
        points.push(CanonicalCurvePoint {
            n: i + 1,
            x,
            variance,
            fluctuation: variance.sqrt(),
        });
    }
    Ok(points)
}

// =============================================================================
// Tests
// =============================================================================
