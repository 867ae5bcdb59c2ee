//! `trapfluct` — exact occupation statistics of trapped 1D quantum gases.
//!
//! Subcommands compute single energy shells (`omega`), microcanonical and
//! canonical fluctuation sweeps (`fluct`, `ce-fluct`), ready-to-plot figure
//! datasets (`figure`), and run the library's verification suites
//! (`verify`).  All data goes out as CSV with one `#` metadata line so that
//! identical invocations are byte-identical.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/domain error,
//! 3 resource or budget exhaustion.

mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use trapfluct_core::sweep::mce_series;
use trapfluct_core::verify;
use trapfluct_core::{
    distribution, CanonicalMixture, Error, Statistics, TableCache, DEFAULT_ENUMERATION_BUDGET,
};

use output::{fmt_real, CsvSink};

#[derive(Parser)]
#[command(
    name = "trapfluct",
    version,
    about = "Exact ground-state occupation statistics of 1D harmonically trapped quantum gases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_statistics(s: &str) -> Result<Statistics, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Microcanonical multiplicities ω(n, N_ex, N) of one energy shell
    Omega {
        /// Statistics: bose, fermi, or fes:p/q with 0 <= p/q <= 1
        #[arg(long = "stats", value_parser = parse_statistics)]
        stats: Statistics,
        /// Number of particles
        #[arg(long = "N")]
        big_n: u32,
        /// Excitation quanta of the shell
        #[arg(long)]
        n: usize,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Microstate-enumeration budget for couplings without a closed form
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Microcanonical fluctuation sweep: δN₀(n) for n = 0..=n_max
    Fluct {
        #[arg(long = "stats", value_parser = parse_statistics)]
        stats: Statistics,
        #[arg(long = "N")]
        big_n: u32,
        /// Largest excitation shell
        #[arg(long = "n-max")]
        n_max: usize,
        /// Significant digits for real columns
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(3..=17))]
        digits: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Canonical-ensemble moments at given Boltzmann factors
    CeFluct {
        #[arg(long = "stats", value_parser = parse_statistics)]
        stats: Statistics,
        #[arg(long = "N")]
        big_n: u32,
        /// Boltzmann factors x = e^{-1/T}, comma separated, each in (0,1)
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(3..=17))]
        digits: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Emit the dataset files behind one published-style figure
    Figure {
        /// Which figure: 1, 3a, 3b, 4a, or 4b
        id: FigureId,
        /// Directory for the CSV files (created if missing)
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(3..=17))]
        digits: u8,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Run a verification suite and report per-check results
    Verify {
        suite: SuiteId,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FigureId {
    #[value(name = "1")]
    One,
    #[value(name = "3a")]
    ThreeA,
    #[value(name = "3b")]
    ThreeB,
    #[value(name = "4a")]
    FourA,
    #[value(name = "4b")]
    FourB,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteId {
    Identities,
    Oracle,
    Fes,
    Ensembles,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            // Resource exhaustion is distinguishable from bad input so that
            // callers can retry with a bigger budget instead of fixing flags.
            match err {
                Error::BudgetExceeded { .. } | Error::TableTooLarge { .. } | Error::Io(_) => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    let cache = TableCache::new();
    match command {
        Command::Omega {
            stats,
            big_n,
            n,
            out,
            budget,
        } => {
            let d = distribution(&cache, n, big_n, &stats, budget)?;
            let meta = format!("omega --stats {stats} --N {big_n} --n {n}");
            let mut sink = CsvSink::new(out.as_deref(), &meta, "N_ex,omega")?;
            for (k, w) in d.iter() {
                sink.row(format_args!("{k},{w}"))?;
            }
            sink.finish()?;
        }
        Command::Fluct {
            stats,
            big_n,
            n_max,
            digits,
            out,
            budget,
        } => {
            let series = mce_series(&cache, big_n, &stats, n_max, budget)?;
            let meta = format!("fluct --stats {stats} --N {big_n} --n-max {n_max} --digits {digits}");
            let mut sink = CsvSink::new(out.as_deref(), &meta, "n,mean_excited,fluctuation")?;
            for (n, s) in series.iter() {
                sink.row(format_args!(
                    "{n},{},{}",
                    fmt_real(s.mean_excited, digits),
                    fmt_real(s.fluctuation, digits)
                ))?;
            }
            sink.finish()?;
        }
        Command::CeFluct {
            stats,
            big_n,
            x,
            digits,
            out,
            budget,
        } => {
            for &xi in &x {
                if !(xi.is_finite() && 0.0 < xi && xi < 1.0) {
                    return Err(Error::BoltzmannFactorOutOfRange { x: xi });
                }
            }
            let x_top = x.iter().cloned().fold(0.0f64, f64::max);
            let x_list = x
                .iter()
                .map(|v| fmt_real(*v, digits))
                .collect::<Vec<_>>()
                .join(",");
            let meta =
                format!("ce-fluct --stats {stats} --N {big_n} --x {x_list} --digits {digits}");
            let mut sink = CsvSink::new(
                out.as_deref(),
                &meta,
                "x,mean_excitation,variance,fluctuation",
            )?;
            match &stats {
                Statistics::Fes(g) => {
                    let fermi =
                        CanonicalMixture::new(&cache, big_n, &Statistics::Fermi, x_top, budget)?;
                    let bose =
                        CanonicalMixture::new(&cache, big_n, &Statistics::Bose, x_top, budget)?;
                    for &xi in &x {
                        let pf = fermi.stats_at(xi)?;
                        let pb = bose.stats_at(xi)?;
                        let variance = trapfluct_core::ensembles::blend_variances(
                            *g,
                            pf.ce_stats.variance(),
                            pb.ce_stats.variance(),
                        );
                        sink.row(format_args!(
                            "{},{},{},{}",
                            fmt_real(xi, digits),
                            fmt_real(pf.mean_excitation, digits),
                            fmt_real(variance, digits),
                            fmt_real(variance.sqrt(), digits)
                        ))?;
                    }
                }
                _ => {
                    let mixture = CanonicalMixture::new(&cache, big_n, &stats, x_top, budget)?;
                    for &xi in &x {
                        let p = mixture.stats_at(xi)?;
                        sink.row(format_args!(
                            "{},{},{},{}",
                            fmt_real(xi, digits),
                            fmt_real(p.mean_excitation, digits),
                            fmt_real(p.ce_stats.variance(), digits),
                            fmt_real(p.ce_stats.fluctuation, digits)
                        ))?;
                    }
                }
            }
            sink.finish()?;
        }
        Command::Figure {
            id,
            out,
            digits,
            budget,
        } => {
            let files = figures::emit(&cache, id, &out, digits, budget)?;
            for f in files {
                println!("wrote {}", f.display());
            }
        }
        Command::Verify { suite } => {
            let report = match suite {
                SuiteId::Identities => verify::identities_suite(&cache)?,
                SuiteId::Oracle => verify::oracle_suite(&cache)?,
                SuiteId::Fes => verify::fes_suite(&cache)?,
                SuiteId::Ensembles => verify::ensembles_suite(&cache)?,
            };
            print!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
