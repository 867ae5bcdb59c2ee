//! Integer-partition counting tables.
//!
//! Everything downstream reduces to two kinds of exact counts:
//!
//! * [`PartitionTable`] — Ω(n, k), the number of partitions of `n` into at
//!   most `k` parts, built row by row from the recurrence
//!   Ω(n, k) = Ω(n, k−1) + Ω(n−k, k).  Since Ω(n, k) = Ω(n, n) for k ≥ n, the
//!   rows are stored triangularly and wide queries are served from column `n`.
//! * [`BoundedPartitionTable`] — partitions with at most `max_parts` parts and
//!   every part ≤ `max_part`.  Equivalently: the energy-resolved canonical
//!   partition function of `max_parts` bosons on `max_part + 1` evenly spaced
//!   levels, which is how the hole side of the particle–hole decomposition
//!   consumes it.
//!
//! The bounded table is built with the boson recursion
//!
//! ```text
//! Z_k(x) = (1/k) · Σ_{j=1..k} Z_1(x^j) · Z_{k−j}(x),      Z_0(x) = 1,
//! ```
//!
//! carried out over exact rational coefficients; every coefficient of the
//! final level is asserted to be a non-negative integer before it is handed
//! out.  [`bounded_multiplicity_direct`] is a deliberately independent
//! dynamic-programming count of the same quantity, kept around so the two
//! routes can be compared in tests and verification runs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Hard cap on partition-table entries; a coarse guard against runaway
/// `(max_n, max_parts)` requests rather than a precise memory model.
pub(crate) const PARTITION_ENTRY_LIMIT: u128 = 50_000_000;

/// Hard cap on bounded-table entries (`max_parts · max_part + 1`).
const BOUNDED_ENTRY_LIMIT: u128 = 10_000_000;

/// Triangular table of Ω(n, k) = partitions of `n` into at most `k` parts.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    max_n: usize,
    max_parts: u32,
    /// `rows[n][k]` for `k ≤ min(n, max_parts)`.
    rows: Vec<Vec<BigUint>>,
}

impl PartitionTable {
    /// Builds the table for all `n ≤ max_n`, `k ≤ min(n, max_parts)`.
    pub fn new(max_n: usize, max_parts: u32) -> Self {
        let mut table = PartitionTable {
            max_n: 0,
            max_parts: 0,
            rows: vec![vec![BigUint::one()]],
        };
        table.grow(max_n, max_parts);
        table
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_parts(&self) -> u32 {
        self.max_parts
    }

    /// Ω(n, parts).  Queries with `parts > n` are served from column `n`,
    /// so only `n ≤ max_n` and `min(parts, n) ≤ max_parts` are required.
    pub fn canonical_multiplicity(&self, n: usize, parts: u32) -> Result<&BigUint> {
        if n > self.max_n {
            return Err(Error::QuantaOutOfRange {
                n,
                max_n: self.max_n,
            });
        }
        let col = (parts as usize).min(n);
        if col > self.max_parts as usize {
            return Err(Error::PartsOutOfRange {
                parts,
                max_parts: self.max_parts,
            });
        }
        Ok(&self.rows[n][col])
    }

    /// Extends the table in place to cover `new_n` and `new_parts`.
    fn grow(&mut self, new_n: usize, new_parts: u32) {
        let new_parts = new_parts.max(self.max_parts);
        let new_n = new_n.max(self.max_n);

        // Widen existing rows first (ascending n, so shallower rows are
        // already wide enough when deeper rows need them).
        if new_parts > self.max_parts {
            for n in 1..=self.max_n {
                let width = n.min(new_parts as usize);
                for k in self.rows[n].len()..=width {
                    let val = &self.rows[n][k - 1] + &self.rows[n - k][k.min(n - k)];
                    self.rows[n].push(val);
                }
            }
            self.max_parts = new_parts;
        }

        // Then append new rows.
        for n in self.max_n + 1..=new_n {
            let width = n.min(self.max_parts as usize);
            let mut row = Vec::with_capacity(width + 1);
            row.push(BigUint::zero());
            for k in 1..=width {
                let val = &row[k - 1] + &self.rows[n - k][k.min(n - k)];
                row.push(val);
            }
            self.rows.push(row);
        }
        self.max_n = new_n;
    }
}

/// Counts of partitions with at most `max_parts` parts and each part
/// ≤ `max_part`, indexed by the partitioned total.
#[derive(Clone, Debug)]
pub struct BoundedPartitionTable {
    max_parts: u32,
    max_part: u32,
    counts: Vec<BigUint>,
}

impl BoundedPartitionTable {
    pub fn max_parts(&self) -> u32 {
        self.max_parts
    }

    pub fn max_part(&self) -> u32 {
        self.max_part
    }

    /// Largest total with a non-zero count.
    pub fn max_total(&self) -> usize {
        self.max_parts as usize * self.max_part as usize
    }

    /// Count for a given total; zero beyond `max_total`.
    pub fn count(&self, total: usize) -> BigUint {
        self.counts.get(total).cloned().unwrap_or_else(BigUint::zero)
    }

    /// All counts, index = total.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Sum of all counts; equals C(max_parts + max_part, max_parts).
    pub fn total_configurations(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Energy-resolved count of `max_parts` bosons on levels `0..=max_part`, via
/// the exact-rational boson recursion.  `degree_cap` truncates every
/// polynomial at that degree — the retained coefficients are unaffected
/// because all exponents in the recursion are non-negative.
fn bounded_counts(max_parts: u32, max_part: u32, degree_cap: Option<usize>) -> Result<Vec<BigUint>> {
    let full_len = max_parts as u128 * max_part as u128 + 1;
    let len = match degree_cap {
        Some(cap) => full_len.min(cap as u128 + 1),
        None => full_len,
    };
    if len > BOUNDED_ENTRY_LIMIT {
        return Err(Error::TableTooLarge {
            entries: len,
            limit: BOUNDED_ENTRY_LIMIT,
        });
    }
    let len = len as usize;

    // levels[k] = coefficients of Z_k, truncated at `len`.
    let mut levels: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for k in 1..=max_parts as usize {
        let width = (k * max_part as usize + 1).min(len);
        let mut acc = vec![BigRational::zero(); width];
        for j in 1..=k {
            let lower = &levels[k - j];
            // Z_1(x^j) = Σ_{i=0..=max_part} x^{i·j}, applied as shifted adds.
            for i in 0..=max_part as usize {
                let shift = i * j;
                if shift >= width {
                    break;
                }
                for (d, c) in lower.iter().enumerate() {
                    let e = shift + d;
                    if e >= width {
                        break;
                    }
                    acc[e] += c;
                }
            }
        }
        let divisor = BigRational::from_integer(BigInt::from(k));
        for c in acc.iter_mut() {
            *c = &*c / &divisor;
        }
        levels.push(acc);
    }

    let last = levels.pop().expect("at least the vacuum level exists");
    let mut counts = Vec::with_capacity(last.len());
    for (degree, c) in last.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient { degree });
        }
        let int = c.to_integer();
        let uint = int
            .to_biguint()
            .ok_or(Error::NonIntegerCoefficient { degree })?;
        counts.push(uint);
    }
    Ok(counts)
}

/// Table of hole configurations: `n_ex` holes spread over the `N − n_ex`
/// levels left inside the Fermi sea, i.e. partitions of the hole quanta into
/// at most `n_ex` parts with each part ≤ `N − n_ex`.
pub fn hole_partition_function(big_n: u32, n_ex: u32) -> Result<BoundedPartitionTable> {
    if n_ex == 0 || n_ex > big_n {
        return Err(Error::ExcitedCountOutOfRange { n_ex, big_n });
    }
    let level_cap = big_n - n_ex;
    let counts = bounded_counts(n_ex, level_cap, None)?;
    Ok(BoundedPartitionTable {
        max_parts: n_ex,
        max_part: level_cap,
        counts,
    })
}

/// Same counts again via a dynamic program over allowed part sizes:
/// f(i, m, c) = f(i, m, c−1) + f(i−c, m−1, c).  Deliberately shares no code
/// with the recursion above.
pub fn bounded_multiplicity_direct(total: usize, max_parts: u32, max_part: u32) -> BigUint {
    if total == 0 {
        return BigUint::one();
    }
    if max_parts == 0 || max_part == 0 {
        return BigUint::zero();
    }
    // dp[m][i] after the c-th sweep = partitions of i, ≤ m parts, parts ≤ c.
    let mut dp = vec![vec![BigUint::zero(); total + 1]; max_parts as usize + 1];
    for row in dp.iter_mut() {
        row[0] = BigUint::one();
    }
    for c in 1..=max_part as usize {
        for m in 1..=max_parts as usize {
            for i in c..=total {
                let add = dp[m - 1][i - c].clone();
                dp[m][i] += add;
            }
        }
    }
    dp[max_parts as usize][total].clone()
}

/// Shared, lazily grown table storage.
///
/// The partition table grows geometrically under a write lock (readers keep
/// whatever snapshot they already hold); hole tables are built at most once
/// per `(max_parts, max_part)` key, with concurrent requests serialized.
pub struct TableCache {
    partition: RwLock<Arc<PartitionTable>>,
    bounded: Mutex<HashMap<(u32, u32), Arc<BoundedPartitionTable>>>,
}

impl TableCache {
    pub fn new() -> Self {
        TableCache {
            partition: RwLock::new(Arc::new(PartitionTable::new(0, 0))),
            bounded: Mutex::new(HashMap::new()),
        }
    }

    /// A partition table covering at least `(min_n, min_parts)`.
    pub fn partition_table(&self, min_n: usize, min_parts: u32) -> Result<Arc<PartitionTable>> {
        {
            let guard = self.partition.read().expect("partition lock poisoned");
            if guard.max_n() >= min_n && guard.max_parts() >= min_parts.min(min_n as u32) {
                return Ok(Arc::clone(&guard));
            }
        }
        let mut guard = self.partition.write().expect("partition lock poisoned");
        let need_parts = min_parts.min(min_n as u32);
        if guard.max_n() >= min_n && guard.max_parts() >= need_parts {
            return Ok(Arc::clone(&guard));
        }
        // Grow with headroom so ascending-n call patterns don't rebuild per call.
        let target_n = min_n.max(guard.max_n() + guard.max_n() / 2);
        let target_parts = need_parts.max(guard.max_parts());
        let entries = (target_n as u128 + 1) * (target_parts.min(target_n as u32) as u128 + 1);
        if entries > PARTITION_ENTRY_LIMIT {
            return Err(Error::TableTooLarge {
                entries,
                limit: PARTITION_ENTRY_LIMIT,
            });
        }
        Arc::make_mut(&mut guard).grow(target_n, target_parts);
        Ok(Arc::clone(&guard))
    }

    /// The memoized bounded table for a `(max_parts, max_part)` pair.  Hole
    /// tables for an `N`-particle system use `max_part = N − max_parts`, so
    /// keying on the pair lets different `N` share identical tables.
    pub fn bounded_table(&self, max_parts: u32, max_part: u32) -> Result<Arc<BoundedPartitionTable>> {
        let mut map = self.bounded.lock().expect("bounded-table lock poisoned");
        if let Some(t) = map.get(&(max_parts, max_part)) {
            return Ok(Arc::clone(t));
        }
        let counts = bounded_counts(max_parts, max_part, None)?;
        let table = Arc::new(BoundedPartitionTable {
            max_parts,
            max_part,
            counts,
        });
        map.insert((max_parts, max_part), Arc::clone(&table));
        Ok(table)
    }

    /// Hole table for `n_ex` excited particles out of `N`.
    pub fn hole_table(&self, big_n: u32, n_ex: u32) -> Result<Arc<BoundedPartitionTable>> {
        if n_ex == 0 || n_ex > big_n {
            return Err(Error::ExcitedCountOutOfRange { n_ex, big_n });
        }
        self.bounded_table(n_ex, big_n - n_ex)
    }
}

impl Default for TableCache {
    fn default() -> Self {
        Self::new()
    }
}

/// Degree-capped bounded counts for sweep kernels that only ever need totals
/// up to a known bound.  Exact for the retained range.
pub(crate) fn bounded_counts_capped(
    max_parts: u32,
    max_part: u32,
    degree_cap: usize,
) -> Result<Vec<BigUint>> {
    bounded_counts(max_parts, max_part, Some(degree_cap))
}

// =============================================================================
// Tests
// =============================================================================
