//! Figure datasets: one CSV per curve, filenames encoding figure id, N, and
//! statistics.
//!
//! * figure 1 — fermions, N = 30: exact microcanonical δN₀(n) up to
//!   n = 6000 next to the canonical curve under energy matching.
//! * figure 3a/3b — δN₀(n) for the coupling family g = 1, (N−2)/(N−1),
//!   1/(N−1), 0 at N = 5 and N = 10, plus symbol files: the same quantity
//!   recomputed for n ≤ 16 by direct microstate enumeration, the points the
//!   closed-form curves must hit exactly.
//! * figure 4a/4b — the two fractional couplings at N = 5 and N = 10, each
//!   with its canonical companion curve (the coupling-weighted blend of the
//!   ideal-gas canonical variances).

use std::fs;
use std::path::{Path, PathBuf};

use trapfluct_core::fes::{enumerate_fes, near_bose_coupling, near_fermi_coupling};
use trapfluct_core::sweep::{ce_fluctuation_series, mce_series};
use trapfluct_core::{ground_state_stats, Coupling, Error, Statistics, TableCache};

use crate::output::{fmt_real, CsvSink};
use crate::FigureId;

/// Shell range for the fluctuation-versus-quanta curves (covers the
/// Bose–Fermi crossing for both system sizes shown).
const CURVE_N_MAX: usize = 200;
/// Shell range of figure 1.
const FIGURE1_N_MAX: usize = 6000;
/// Symbol points cover the desk-scale enumeration grid.
const SYMBOL_N_MAX: usize = 16;

fn stat_label(statistics: &Statistics) -> String {
    match statistics {
        Statistics::Bose => "bose".into(),
        Statistics::Fermi => "fermi".into(),
        Statistics::Fes(g) => format!("g{}-{}", g.numer(), g.denom()),
    }
}

fn mce_file(
    cache: &TableCache,
    dir: &Path,
    figure: &str,
    big_n: u32,
    statistics: &Statistics,
    n_max: usize,
    digits: u8,
    budget: u64,
) -> Result<PathBuf, Error> {
    let series = mce_series(cache, big_n, statistics, n_max, budget)?;
    let path = dir.join(format!(
        "figure{figure}_mce_N{big_n}_{}.csv",
        stat_label(statistics)
    ));
    let meta = format!(
        "figure {figure} | mce curve --stats {statistics} --N {big_n} --n-max {n_max} --digits {digits}"
    );
    let mut sink = CsvSink::new(Some(&path), &meta, "n,delta_N0")?;
    for (n, s) in series.iter() {
        sink.row(format_args!("{n},{}", fmt_real(s.fluctuation, digits)))?;
    }
    sink.finish()?;
    Ok(path)
}

fn ce_file(
    cache: &TableCache,
    dir: &Path,
    figure: &str,
    big_n: u32,
    statistics: &Statistics,
    n_max: usize,
    digits: u8,
    budget: u64,
) -> Result<PathBuf, Error> {
    let curve = ce_fluctuation_series(cache, big_n, statistics, n_max, budget)?;
    let path = dir.join(format!(
        "figure{figure}_ce_N{big_n}_{}.csv",
        stat_label(statistics)
    ));
    let meta = format!(
        "figure {figure} | ce curve --stats {statistics} --N {big_n} --n-max {n_max} --digits {digits}"
    );
    let mut sink = CsvSink::new(Some(&path), &meta, "n,delta_N0_CE")?;
    for point in curve {
        sink.row(format_args!(
            "{},{}",
            point.n,
            fmt_real(point.fluctuation, digits)
        ))?;
    }
    sink.finish()?;
    Ok(path)
}

/// Fluctuations recomputed by brute microstate enumeration — deliberately
/// not the closed-form path the curves use.
fn symbols_file(
    cache: &TableCache,
    dir: &Path,
    figure: &str,
    big_n: u32,
    g: Coupling,
    digits: u8,
    budget: u64,
) -> Result<PathBuf, Error> {
    let statistics = Statistics::Fes(g);
    let path = dir.join(format!(
        "figure{figure}_symbols_N{big_n}_{}.csv",
        stat_label(&statistics)
    ));
    let meta = format!(
        "figure {figure} | enumerated points --stats {statistics} --N {big_n} --n-max {SYMBOL_N_MAX} --digits {digits}"
    );
    let mut sink = CsvSink::new(Some(&path), &meta, "n,delta_N0")?;
    for n in 0..=SYMBOL_N_MAX {
        let stats = ground_state_stats(&enumerate_fes(cache, n, big_n, g, budget)?);
        sink.row(format_args!("{n},{}", fmt_real(stats.fluctuation, digits)))?;
    }
    sink.finish()?;
    Ok(path)
}

/// Writes every file of the requested figure into `dir`; returns the paths.
pub fn emit(
    cache: &TableCache,
    id: FigureId,
    dir: &Path,
    digits: u8,
    budget: u64,
) -> Result<Vec<PathBuf>, Error> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    match id {
        FigureId::One => {
            let n = 30;
            files.push(mce_file(
                cache,
                dir,
                "1",
                n,
                &Statistics::Fermi,
                FIGURE1_N_MAX,
                digits,
                budget,
            )?);
            files.push(ce_file(
                cache,
                dir,
                "1",
                n,
                &Statistics::Fermi,
                FIGURE1_N_MAX,
                digits,
                budget,
            )?);
        }
        FigureId::ThreeA | FigureId::ThreeB => {
            let (figure, big_n) = match id {
                FigureId::ThreeA => ("3a", 5),
                _ => ("3b", 10),
            };
            let couplings = [near_fermi_coupling(big_n), near_bose_coupling(big_n)];
            let family = [
                Statistics::Fermi,
                Statistics::Fes(couplings[0]),
                Statistics::Fes(couplings[1]),
                Statistics::Bose,
            ];
            for statistics in &family {
                files.push(mce_file(
                    cache, dir, figure, big_n, statistics, CURVE_N_MAX, digits, budget,
                )?);
            }
            for g in couplings {
                files.push(symbols_file(cache, dir, figure, big_n, g, digits, budget)?);
            }
        }
        FigureId::FourA | FigureId::FourB => {
            let (figure, big_n) = match id {
                FigureId::FourA => ("4a", 5),
                _ => ("4b", 10),
            };
            for g in [near_fermi_coupling(big_n), near_bose_coupling(big_n)] {
                let statistics = Statistics::Fes(g);
                files.push(mce_file(
                    cache, dir, figure, big_n, &statistics, CURVE_N_MAX, digits, budget,
                )?);
                files.push(ce_file(
                    cache, dir, figure, big_n, &statistics, CURVE_N_MAX, digits, budget,
                )?);
            }
        }
    }
    Ok(files)
}
