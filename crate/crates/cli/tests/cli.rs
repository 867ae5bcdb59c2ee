//! End-to-end tests of the `trapfluct` binary: CSV shape, fixture values,
//! determinism, exit codes, and agreement between independent routes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

use trapfluct_core::{distribution, ground_state_stats, Statistics, TableCache};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trapfluct"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// Data rows of a CSV document: everything but `#` comments and the header.
fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn scratch_dir() -> PathBuf {
    static COUNTER: AtomicU32 = AtomicU32::new(0);
    let dir = std::env::temp_dir().join(format!(
        "trapfluct-cli-test-{}-{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

#[test]
fn omega_prints_header_metadata_and_exact_fermi_counts() {
    let text = stdout(&["omega", "--stats", "fermi", "--N", "5", "--n", "3"]);
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# trapfluct "), "metadata line: {meta}");
    assert!(meta.contains("omega --stats fermi --N 5 --n 3"));
    assert_eq!(lines.next().unwrap(), "N_ex,omega");
    let rows = data_rows(&text);
    let expect = [("1", "3"), ("2", "0"), ("3", "0"), ("4", "0"), ("5", "0")];
    assert_eq!(rows.len(), expect.len());
    for (row, (k, w)) in rows.iter().zip(expect) {
        assert_eq!(row, &vec![k.to_string(), w.to_string()]);
    }
}

#[test]
fn omega_semion_and_bose_fixtures() {
    let semion = data_rows(&stdout(&["omega", "--stats", "fes:1/2", "--N", "5", "--n", "3"]));
    let counts: Vec<&str> = semion.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(counts, ["1", "2", "0", "0", "0"]);

    let bose = data_rows(&stdout(&["omega", "--stats", "bose", "--N", "2", "--n", "2"]));
    let counts: Vec<&str> = bose.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(counts, ["1", "1"]);
}

#[test]
fn fluct_rows_match_statistics_computed_in_process() {
    let text = stdout(&["fluct", "--stats", "fes:3/4", "--N", "5", "--n-max", "16"]);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 17);

    let cache = TableCache::new();
    for (n, row) in rows.iter().enumerate() {
        let dist = distribution(&cache, n, 5, &Statistics::fes(3, 4).unwrap(), 1 << 20).unwrap();
        let stats = ground_state_stats(&dist);
        assert_eq!(row[0], n.to_string());
        assert_eq!(row[1], format!("{:.11e}", stats.mean_excited), "n = {n}");
        assert_eq!(row[2], format!("{:.11e}", stats.fluctuation), "n = {n}");
    }
}

#[test]
fn fluct_first_row_is_all_zero() {
    let text = stdout(&["fluct", "--stats", "fermi", "--N", "6", "--n-max", "4"]);
    let rows = data_rows(&text);
    assert_eq!(rows[0], ["0", "0.00000000000e0", "0.00000000000e0"]);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["fluct", "--stats", "bose", "--N", "7", "--n-max", "40"];
    assert_eq!(stdout(&args), stdout(&args));

    let dir = scratch_dir();
    let out_a = dir.join("a.csv");
    let out_b = dir.join("b.csv");
    for (path, _) in [(&out_a, "a"), (&out_b, "b")] {
        let mut full: Vec<&str> = args.to_vec();
        full.push("--out");
        full.push(path.to_str().unwrap());
        stdout(&full);
    }
    assert_eq!(read(&out_a), read(&out_b));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn ce_fluct_reports_the_mixture_statistics() {
    let text = stdout(&["ce-fluct", "--stats", "bose", "--N", "3", "--x", "0.5"]);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);

    let cache = TableCache::new();
    let point =
        trapfluct_core::ce_stats_at(&cache, 0.5, 3, &Statistics::Bose, 1 << 20).unwrap();
    assert_eq!(rows[0][0], format!("{:.11e}", 0.5f64));
    assert_eq!(rows[0][1], format!("{:.11e}", point.mean_excitation));
    assert_eq!(rows[0][2], format!("{:.11e}", point.ce_stats.variance()));
    assert_eq!(rows[0][3], format!("{:.11e}", point.ce_stats.fluctuation));
}

#[test]
fn usage_errors_exit_with_code_two() {
    // Coupling above one is not a valid exclusion parameter.
    let bad_stats = run(&["omega", "--stats", "fes:5/4", "--N", "5", "--n", "3"]);
    assert_eq!(bad_stats.status.code(), Some(2));

    // Boltzmann factor outside (0, 1) diverges the series.
    let bad_x = run(&["ce-fluct", "--stats", "bose", "--N", "3", "--x", "1.5"]);
    assert_eq!(bad_x.status.code(), Some(2));

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn exhausted_budgets_exit_with_code_three_and_write_nothing() {
    let dir = scratch_dir();
    let out = dir.join("partial.csv");
    // A generic coupling forces enumeration; ten states are nowhere near
    // enough for 60 quanta over 12 particles.
    let output = run(&[
        "omega",
        "--stats",
        "fes:2/5",
        "--N",
        "12",
        "--n",
        "60",
        "--budget",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
    assert!(!out.exists(), "no partial file may be left behind");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_suites_pass_and_report_checks() {
    for suite in ["oracle", "fes", "ensembles"] {
        let out = run(&["verify", suite]);
        assert_eq!(out.status.code(), Some(0), "suite {suite}");
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        assert!(text.contains(&format!("suite {suite}: PASS")), "{text}");
        assert!(text.contains("PASS  "), "{text}");
        assert!(!text.contains("FAIL"), "{text}");
    }
}

#[test]
fn figure_three_a_symbol_points_lie_on_the_curves() {
    let dir = scratch_dir();
    let listing = stdout(&["figure", "3a", "--out", dir.to_str().unwrap()]);
    for name in [
        "figure3a_mce_N5_fermi.csv",
        "figure3a_mce_N5_g3-4.csv",
        "figure3a_mce_N5_g1-4.csv",
        "figure3a_mce_N5_bose.csv",
        "figure3a_symbols_N5_g3-4.csv",
        "figure3a_symbols_N5_g1-4.csv",
    ] {
        assert!(listing.contains(name), "missing {name} in:\n{listing}");
        assert!(dir.join(name).exists(), "missing file {name}");
    }
    for g in ["g3-4", "g1-4"] {
        let curve = data_rows(&read(&dir.join(format!("figure3a_mce_N5_{g}.csv"))));
        let symbols = data_rows(&read(&dir.join(format!("figure3a_symbols_N5_{g}.csv"))));
        assert_eq!(symbols.len(), 17, "{g}");
        for row in &symbols {
            let n: usize = row[0].parse().unwrap();
            assert_eq!(curve[n], *row, "{g}, n = {n}");
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
}
