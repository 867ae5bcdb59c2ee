use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// The variants split into caller mistakes (bad indices, bad couplings, bad
/// Boltzmann factors), refusals (enumeration or memory budgets), and internal
/// consistency failures that indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("quanta n = {n} exceeds the table bound max_n = {max_n}")]
    QuantaOutOfRange { n: usize, max_n: usize },

    #[error("part bound {parts} exceeds the table bound max_parts = {max_parts}")]
    PartsOutOfRange { parts: u32, max_parts: u32 },

    #[error("excited count n_ex = {n_ex} is outside 1..=N for N = {big_n}")]
    ExcitedCountOutOfRange { n_ex: u32, big_n: u32 },

    #[error("system size N = {big_n} is below the minimum {min} required here")]
    SystemTooSmall { big_n: u32, min: u32 },

    #[error(
        "unsupported statistics `{got}`; supported forms are `bose`, `fermi`, \
         and `fes:p/q` with 0 <= p/q <= 1"
    )]
    UnsupportedStatistics { got: String },

    #[error(
        "enumeration budget exceeded: {states} partitions of {n} into at most \
         {max_parts} parts (budget {budget})"
    )]
    BudgetExceeded {
        n: usize,
        max_parts: u32,
        states: BigUint,
        budget: u64,
    },

    #[error("table of {entries} entries exceeds the resource limit of {limit} entries")]
    TableTooLarge { entries: u128, limit: u128 },

    #[error("level-occupation recursion produced a non-integer coefficient at degree {degree}")]
    NonIntegerCoefficient { degree: usize },

    #[error(
        "size-difference multiplicity went negative at (n = {n}, n_ex = {n_ex}, N = {big_n})"
    )]
    NegativeMultiplicity { n: usize, n_ex: u32, big_n: u32 },

    #[error("Boltzmann factor x = {x} is outside the open interval (0, 1)")]
    BoltzmannFactorOutOfRange { x: f64 },

    #[error("Boltzmann factor x = {x} exceeds the mixture window built for x <= {x_max}")]
    MixtureWindowExceeded { x: f64, x_max: f64 },

    #[error("mean excitation target {target} is not reachable for x < 1")]
    TargetUnreachable { target: f64 },

    #[error("bisection failed to bracket mean excitation {target} to tolerance {tolerance}")]
    BisectionStalled { target: f64, tolerance: f64 },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
