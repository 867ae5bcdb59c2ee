//! Exact occupation statistics for quantum gases in a 1D harmonic trap.
//!
//! Counting the microstates of N trapped particles at fixed excitation
//! energy n (in trap quanta) is integer-partition combinatorics: every
//! microstate is a partition of n into at most N parts, and the number of
//! particles excited out of the T = 0 ground state is a statistics-dependent
//! feature of the partition's shape.  This crate computes, in exact
//! arbitrary-precision arithmetic:
//!
//! * canonical multiplicities Ω(n, N) — [`partitions`];
//! * microcanonical multiplicities ω(n, N_ex, N) for ideal bosons, ideal
//!   fermions (via the particle–hole decomposition), and fractional
//!   exclusion statistics at rational coupling g ∈ [0, 1], including closed
//!   forms at the grid couplings (N−2)/(N−1) and 1/(N−1) — [`microcanonical`]
//!   and [`fes`];
//! * ground-state number fluctuations δN₀(n) and their canonical-ensemble
//!   counterparts under energy matching — [`microcanonical`], [`ensembles`],
//!   [`sweep`];
//! * brute-force reference routes and named verification suites —
//!   [`oracle`] and [`verify`].
//!
//! Counts are exact [`num_bigint::BigUint`]s end to end; a statistic becomes
//! floating point only in the final division.  Shared dynamic-programming
//! tables live in a [`TableCache`] that grows on demand and is safe to use
//! from parallel sweeps.
//!
//! ```
//! use trapfluct_core::{distribution, ground_state_stats, Statistics, TableCache};
//!
//! let cache = TableCache::new();
//! // Five semions sharing three quanta: one or two particles leave the
//! // ground state, never three.
//! let d = distribution(&cache, 3, 5, &"fes:1/2".parse::<Statistics>()?, 1 << 20)?;
//! assert_eq!(
//!     d.iter().map(|(_, w)| u64::try_from(w).unwrap()).collect::<Vec<_>>(),
//!     [1, 2, 0, 0, 0],
//! );
//! let stats = ground_state_stats(&d);
//! assert!((stats.mean_excited - 5.0 / 3.0).abs() < 1e-15);
//! # Ok::<(), trapfluct_core::Error>(())
//! ```

pub mod ensembles;
pub mod error;
pub mod fes;
pub mod microcanonical;
mod numeric;
pub mod oracle;
pub mod partitions;
pub mod sweep;
pub mod verify;

pub use ensembles::{
    ce_fluctuation_fes, ce_stats_at, invert_mean_excitation, mean_excitation, CanonicalMixture,
    ThermalPoint,
};
pub use error::{Error, Result};
pub use fes::{
    discrete_g_grid, enumerate_fes, ground_state_energy, Coupling, QuasiparticleState, Statistics,
};
pub use microcanonical::{
    bose_multiplicity, distribution, fermi_multiplicity, ground_state_stats, moment_sums,
    GroundStateStats, MomentSums, MultiplicityDistribution, DEFAULT_ENUMERATION_BUDGET,
};
pub use partitions::TableCache;
pub use sweep::{ce_fluctuation_series, mce_series, CanonicalCurvePoint, FluctuationSeries};
