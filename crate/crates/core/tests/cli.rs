use std::path::Path;
use std::process::{Command, Output};

use goldbach_lab::sieve::build_mangoldt_table;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldbach-lab"))
        .current_dir(dir)
        .env_remove("GOLDBACH_LAB_OUT")
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn sieve_writes_psi_at_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["sieve", "--limit", "10000", "--out", "o"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(dir.path().join("o/mangoldt_summary.csv"));
    let last = csv.lines().last().unwrap();
    let cells: Vec<&str> = last.split(',').collect();
    assert_eq!(cells[0], "10000");
    let psi: f64 = cells[1].parse().unwrap();
    let want = build_mangoldt_table(10_000)
        .unwrap()
        .chebyshev_psi(1e4)
        .unwrap();
    assert!((psi - want).abs() <= 1e-12 * want);
    assert_eq!(cells[2], "1229");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(dir.path(), &["sieve", "--limit", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(
            dir.path(),
            &["sieve", "--limit", "100", "--checkpoints", "50,20"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(dir.path(), &["fujii", "--limit", "1000", "--K", "500"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_file_is_optional_and_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["sieve", "--limit", "500"])
        .status
        .success());
    std::fs::write(
        dir.path().join("goldbach_lab.conf"),
        "limit = 300\nout = from_conf\n",
    )
    .unwrap();
    assert!(run(dir.path(), &["sieve"]).status.success());
    assert!(read(dir.path().join("from_conf/mangoldt_summary.csv"))
        .lines()
        .last()
        .unwrap()
        .starts_with("300,"));
    assert!(run(dir.path(), &["sieve", "--limit", "400"])
        .status
        .success());
    assert!(read(dir.path().join("from_conf/mangoldt_summary.csv"))
        .lines()
        .last()
        .unwrap()
        .starts_with("400,"));
    assert_eq!(
        run(dir.path(), &["sieve", "--config", "missing.conf"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn out_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_goldbach-lab"))
        .current_dir(dir.path())
        .env("GOLDBACH_LAB_OUT", "env_out")
        .args(["sieve", "--limit", "200", "--out", "flag_out"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("env_out/mangoldt_summary.csv").exists());
    assert!(!dir.path().join("flag_out").exists());
}

#[test]
fn goldbach_table_has_one_row_per_n() {
    let dir = tempfile::tempdir().unwrap();
    for method in ["direct", "convolution", "verify"] {
        let out = run(
            dir.path(),
            &[
                "goldbach", "--limit", "10000", "--method", method, "--out", method,
            ],
        );
        assert!(
            out.status.success(),
            "{method}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let table = read(dir.path().join(method).join("goldbach_table.csv"));
        assert_eq!(table.lines().count(), 1 + 10_000);
        assert!(dir
            .path()
            .join(method)
            .join("goldbach_summary.csv")
            .exists());
    }
    assert_eq!(
        read(dir.path().join("direct/goldbach_table.csv"))
            .lines()
            .nth(4),
        read(dir.path().join("verify/goldbach_table.csv"))
            .lines()
            .nth(4)
    );
    let out = run(
        dir.path(),
        &[
            "goldbach",
            "--limit",
            "1000000",
            "--no-table",
            "--checkpoints",
            "1000000",
        ],
    );
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("exceptions=0"));
    let summary = read(dir.path().join("goldbach_lab_out/goldbach_summary.csv"));
    assert_eq!(summary.lines().nth(1).unwrap().split(',').nth(4), Some("0"));
}

#[test]
fn direct_method_is_capped() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "goldbach",
            "--limit",
            "200000",
            "--method",
            "direct",
            "--no-table",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fujii_scans_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["fujii", "--limit", "1000000", "--out", "f"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(dir.path().join("f/fujii_residuals.csv"));
    let mut by_k: std::collections::BTreeMap<usize, Vec<f64>> = Default::default();
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        by_k.entry(cells[1].parse().unwrap())
            .or_default()
            .push(cells[2].parse().unwrap());
    }
    assert_eq!(by_k.keys().copied().collect::<Vec<_>>(), vec![25, 50, 100]);
    let rms: Vec<f64> = by_k
        .values()
        .map(|v| (v.iter().map(|r| r * r).sum::<f64>() / v.len() as f64).sqrt())
        .collect();
    // Non-increasing up to 5% slack; more zeros do not enlarge the residual.
    assert!(
        rms[1] <= 1.05 * rms[0] && rms[2] <= 1.05 * rms[1],
        "{rms:?}"
    );
    let gp = read(dir.path().join("f/fujii_plot.gp"));
    assert!(gp.contains("set datafile separator ','") && gp.contains("set logscale x"));
    assert!(gp.contains("'fujii_residuals.csv' using 1:"));
}

#[test]
fn missing_zeros_file_is_an_ingestion_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["fujii", "--limit", "1000", "--zeros", "nope.txt"],
    );
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(dir.path().join("bad.txt"), "14.134725\n13.0\n").unwrap();
    let out = run(
        dir.path(),
        &["fujii", "--limit", "1000", "--zeros", "bad.txt"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn progressions_are_deterministic_and_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    let args = |o: &'static str| {
        [
            "progressions",
            "--limit",
            "20000",
            "--seed",
            "99",
            "--moduli",
            "3,5,12",
            "--out",
            o,
        ]
    };
    assert!(run(dir.path(), &args("a")).status.success());
    assert!(run(dir.path(), &args("b")).status.success());
    for name in [
        "progressions.csv",
        "exceptional_residues.csv",
        "identity_checks.csv",
        "constant_fits.csv",
    ] {
        let a = std::fs::read(dir.path().join("a").join(name)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }
    let checks = read(dir.path().join("a/identity_checks.csv"));
    let rows: Vec<&str> = checks.lines().skip(1).collect();
    let count = |suite: &str| {
        rows.iter()
            .filter(|r| r.starts_with(suite) && r.contains(",true,"))
            .count()
    };
    assert_eq!(count("montgomery,"), 200);
    assert_eq!(count("t1_centered,"), 200);
    assert_eq!(count("t1_plain,"), 200);
    assert_eq!(rows.len(), 600);
}

#[test]
fn verify_all_writes_everything() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "verify-all",
            "--limit",
            "5000",
            "--out",
            "v",
            "--K",
            "10,20",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for name in [
        "mangoldt_summary.csv",
        "goldbach_table.csv",
        "goldbach_summary.csv",
        "fujii_residuals.csv",
        "fujii_plot.gp",
        "progressions.csv",
        "identity_checks.csv",
    ] {
        assert!(dir.path().join("v").join(name).exists(), "{name}");
    }
}
