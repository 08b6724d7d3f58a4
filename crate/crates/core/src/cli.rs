//! Command-line driver: builds tables, runs the suites and writes CSV reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::explicit_formula::{fujii_residual, write_residual_csv, ZetaZeros};
use crate::goldbach::{
    exceptional_set, goldbach_convolution, goldbach_direct, summarize, GoldbachTable,
};
use crate::progressions::{
    ea2_fit, exceptional_moduli, exceptional_residues, halasz_row_check, montgomery_suite,
    progression_report, t1_suite, t2_decomposition, write_checks_csv, write_progressions_csv,
    SequenceWindow,
};
use crate::report::{fmt_real, CsvOut};
use crate::sieve::{build_mangoldt_table, MangoldtTable};

pub const DEFAULT_CONFIG_FILE: &str = "goldbach_lab.conf";
pub const OUT_ENV: &str = "GOLDBACH_LAB_OUT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Direct,
    Convolution,
    /// Run both and compare.
    Verify,
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Self as ValueEnum>::from_str(s, true)
            .map_err(|_| Error::Argument(format!("unknown method {s:?}")))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "goldbach-lab",
    version,
    about = "Goldbach statistics and explicit-formula checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Build the von Mangoldt table and write ψ and π at the checkpoints.
    Sieve,
    /// Goldbach functions per n plus summary statistics.
    Goldbach,
    /// Residual of the Goldbach average after the zeta-zero term.
    Fujii,
    /// Progression sums, exceptional counts and the large-sieve suites.
    Progressions,
    /// Every command above, in order.
    VerifyAll,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    /// Upper limit N of the tables.
    #[arg(long, global = true)]
    pub limit: Option<u64>,
    /// Ascending comma-separated x values.
    #[arg(long, global = true, value_delimiter = ',')]
    pub checkpoints: Option<Vec<u64>>,
    /// File of zeta zero ordinates (defaults to the bundled 100 zeros).
    #[arg(long, global = true)]
    pub zeros: Option<PathBuf>,
    /// Zero counts for the oscillating term.
    #[arg(long = "K", global = true, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory; the GOLDBACH_LAB_OUT variable takes precedence.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub moduli: Option<Vec<u64>>,
    /// Exponents C for the exceptional thresholds.
    #[arg(long = "C", global = true, value_delimiter = ',')]
    pub c: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodChoice>,
    /// key=value file; ./goldbach_lab.conf is read when present.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Skip the per-n Goldbach table CSV.
    #[arg(long, global = true)]
    pub no_table: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub limit: u64,
    pub checkpoints: Vec<u64>,
    pub zeros_path: Option<PathBuf>,
    pub zero_counts: Vec<usize>,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub moduli: Vec<u64>,
    pub thresholds: Vec<f64>,
    pub threads: Option<usize>,
    pub method: MethodChoice,
    pub write_table: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            limit: 1_000_000,
            checkpoints: Vec::new(),
            zeros_path: None,
            zero_counts: vec![25, 50, 100],
            seed: 20_240_601,
            output_dir: PathBuf::from("goldbach_lab_out"),
            moduli: vec![3, 4, 5],
            thresholds: vec![1.0],
            threads: None,
            method: MethodChoice::Convolution,
            write_table: true,
        }
    }
}

/// Powers of ten from 100 up to `limit`, then `limit` itself.
pub fn default_checkpoints(limit: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(100u64), |&x| x.checked_mul(10))
        .take_while(|&x| x <= limit)
        .collect();
    if out.last() != Some(&limit) {
        out.push(limit);
    }
    out
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Argument(format!("config key {key}: cannot parse {s:?}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Argument(format!("config key {key}: cannot parse {value:?}")))
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Argument(format!(
                "config line {}: expected key=value",
                idx + 1
            )));
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    /// Flags win over the config file, which wins over the defaults.
    pub fn resolve(
        flags: &Flags,
        file: &BTreeMap<String, String>,
        env_out: Option<PathBuf>,
    ) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut checkpoints = None;
        for (key, value) in file {
            match key.as_str() {
                "limit" => cfg.limit = parse_one(key, value)?,
                "checkpoints" => checkpoints = Some(parse_list(key, value)?),
                "zeros" => cfg.zeros_path = Some(PathBuf::from(value)),
                "K" => cfg.zero_counts = parse_list(key, value)?,
                "seed" => cfg.seed = parse_one(key, value)?,
                "out" => cfg.output_dir = PathBuf::from(value),
                "moduli" => cfg.moduli = parse_list(key, value)?,
                "C" => cfg.thresholds = parse_list(key, value)?,
                "threads" => cfg.threads = Some(parse_one(key, value)?),
                "method" => cfg.method = parse_one(key, value)?,
                other => return Err(Error::Argument(format!("unknown config key {other:?}"))),
            }
        }
        if let Some(v) = flags.limit {
            cfg.limit = v;
        }
        if let Some(v) = &flags.checkpoints {
            checkpoints = Some(v.clone());
        }
        if let Some(v) = &flags.zeros {
            cfg.zeros_path = Some(v.clone());
        }
        if let Some(v) = &flags.k {
            cfg.zero_counts = v.clone();
        }
        if let Some(v) = flags.seed {
            cfg.seed = v;
        }
        if let Some(v) = &flags.out {
            cfg.output_dir = v.clone();
        }
        if let Some(v) = &flags.moduli {
            cfg.moduli = v.clone();
        }
        if let Some(v) = &flags.c {
            cfg.thresholds = v.clone();
        }
        if flags.threads.is_some() {
            cfg.threads = flags.threads;
        }
        if let Some(v) = flags.method {
            cfg.method = v;
        }
        cfg.write_table = !flags.no_table;
        if let Some(dir) = env_out {
            cfg.output_dir = dir;
        }
        cfg.checkpoints = checkpoints.unwrap_or_else(|| default_checkpoints(cfg.limit));
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.limit < 2 {
            return Err(Error::Argument(format!(
                "--limit must be at least 2, got {}",
                self.limit
            )));
        }
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument(
                "--checkpoints must be strictly ascending".into(),
            ));
        }
        if let Some(&last) = self.checkpoints.last() {
            if last > self.limit {
                return Err(Error::Argument(format!(
                    "checkpoint {last} exceeds --limit {}",
                    self.limit
                )));
            }
        }
        if self.zero_counts.is_empty() || self.zero_counts.contains(&0) {
            return Err(Error::Argument("--K values must be at least 1".into()));
        }
        if self.moduli.contains(&0) {
            return Err(Error::Argument("--moduli must be positive".into()));
        }
        if self.thresholds.iter().any(|&c| !(c > 0.0)) {
            return Err(Error::Argument("--C values must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Argument("--threads must be at least 1".into()));
        }
        Ok(())
    }

    fn create(&self, name: &str) -> Result<BufWriter<File>> {
        std::fs::create_dir_all(&self.output_dir).map_err(|e| Error::io(&self.output_dir, e))?;
        let path = self.output_dir.join(name);
        File::create(&path)
            .map(BufWriter::new)
            .map_err(|e| Error::io(&path, e))
    }

    fn write_with(
        &self,
        name: &str,
        f: impl FnOnce(BufWriter<File>) -> std::io::Result<()>,
    ) -> Result<PathBuf> {
        let path = self.output_dir.join(name);
        f(self.create(name)?).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

fn load_file_config(flags: &Flags) -> Result<BTreeMap<String, String>> {
    let (path, required) = match &flags.config {
        Some(p) => (p.clone(), true),
        None => (PathBuf::from(DEFAULT_CONFIG_FILE), false),
    };
    match std::fs::read_to_string(&path) {
        Ok(text) => parse_config_file(&text),
        Err(e) if !required && e.kind() == std::io::ErrorKind::NotFound => Ok(BTreeMap::new()),
        Err(e) => Err(Error::io(&path, e)),
    }
}

fn build_table(cfg: &RunConfig) -> Result<MangoldtTable> {
    build_mangoldt_table(cfg.limit)
}

/// Writes `mangoldt_summary.csv` with ψ and π at the checkpoints.
pub fn cmd_sieve(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let table = build_table(cfg)?;
    let path = cfg.write_with("mangoldt_summary.csv", |out| {
        let mut csv = CsvOut::new(out);
        csv.header(&["x", "psi", "pi", "psi_minus_x"])?;
        for &x in &cfg.checkpoints {
            let psi = table.psi_prefix()[x as usize];
            csv.row(&[
                x.to_string(),
                fmt_real(psi),
                table.prime_count(x as usize).to_string(),
                fmt_real(psi - x as f64),
            ])?;
        }
        csv.finish()
    })?;
    println!(
        "sieve: limit={} psi={} primes={}",
        cfg.limit,
        fmt_real(table.psi_prefix()[cfg.limit as usize]),
        table.prime_count(cfg.limit as usize)
    );
    Ok(vec![path])
}

/// Maximum relative G difference and the number of g mismatches.
pub fn compare_tables(a: &GoldbachTable, b: &GoldbachTable) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut mismatches = 0;
    for n in 0..=a.limit().min(b.limit()) as usize {
        let (x, y) = (a.big_g(n), b.big_g(n));
        worst = worst.max((x - y).abs() / y.abs().max(1.0));
        mismatches += usize::from(a.g(n) != b.g(n));
    }
    (worst, mismatches)
}

pub const VERIFY_TOLERANCE: f64 = 1e-6;

fn goldbach_table(cfg: &RunConfig, table: &MangoldtTable) -> Result<GoldbachTable> {
    match cfg.method {
        MethodChoice::Direct => goldbach_direct(cfg.limit, table),
        MethodChoice::Convolution => goldbach_convolution(cfg.limit, table),
        MethodChoice::Verify => {
            let direct = goldbach_direct(cfg.limit, table)?;
            let conv = goldbach_convolution(cfg.limit, table)?;
            let (worst, mismatches) = compare_tables(&conv, &direct);
            println!(
                "goldbach verify: max relative G difference {} g mismatches {mismatches}",
                fmt_real(worst)
            );
            if mismatches > 0 || worst > VERIFY_TOLERANCE {
                return Err(Error::Precision {
                    index: 0,
                    residue: worst,
                    threshold: VERIFY_TOLERANCE,
                });
            }
            Ok(direct)
        }
    }
}

/// Writes `goldbach_table.csv` (unless skipped) and `goldbach_summary.csv`.
pub fn cmd_goldbach(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let table = build_table(cfg)?;
    let gt = goldbach_table(cfg, &table)?;
    goldbach_outputs(cfg, &gt)
}

fn goldbach_outputs(cfg: &RunConfig, gt: &GoldbachTable) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    if cfg.write_table {
        paths.push(cfg.write_with("goldbach_table.csv", |out| gt.write_csv(out))?);
    }
    let summary = summarize(gt, &cfg.checkpoints)?;
    paths.push(cfg.write_with("goldbach_summary.csv", |out| summary.write_csv(out))?);
    let exceptions = exceptional_set(gt, &[])?.exceptions;
    println!(
        "goldbach: limit={} method={} C2={} exceptions={}",
        cfg.limit,
        gt.method(),
        fmt_real(gt.c2()),
        exceptions.len()
    );
    for n in exceptions.iter().take(20) {
        println!("  exception {n}");
    }
    Ok(paths)
}

fn zeros(cfg: &RunConfig) -> Result<ZetaZeros> {
    match &cfg.zeros_path {
        Some(p) => ZetaZeros::load(p),
        None => Ok(ZetaZeros::bundled()),
    }
}

fn plot_script(csv: &Path, ks: &[usize]) -> String {
    let name = csv
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let curves: Vec<String> = ks
        .iter()
        .map(|k| format!("'{name}' using 1:($2=={k} ? $4 : 1/0) with linespoints title 'K={k}'"))
        .collect();
    format!(
        "set datafile separator ','\n\
         set logscale x\n\
         set xlabel 'x'\n\
         set ylabel 'residual / x^(3/2)'\n\
         plot {}\n",
        curves.join(", \\\n     ")
    )
}

/// Writes `fujii_residuals.csv` and the gnuplot script `fujii_plot.gp`.
pub fn cmd_fujii(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let zeros = zeros(cfg)?;
    if let Some(&k) = cfg.zero_counts.iter().find(|&&k| k > zeros.len()) {
        return Err(Error::Argument(format!(
            "--K {k} exceeds the {} zeros available",
            zeros.len()
        )));
    }
    let checkpoints: Vec<u64> = cfg
        .checkpoints
        .iter()
        .copied()
        .filter(|&x| x >= 2)
        .collect();
    let table = build_table(cfg)?;
    let gt = goldbach_table(cfg, &table)?;
    let summary = summarize(&gt, &checkpoints)?;
    let scans = cfg
        .zero_counts
        .iter()
        .map(|&k| fujii_residual(&summary, &zeros, k))
        .collect::<Result<Vec<_>>>()?;
    for scan in &scans {
        println!(
            "fujii: K={} rms(residual)={} rms(normalized)={}",
            scan.k,
            fmt_real(scan.rms_residual()),
            fmt_real(scan.rms_normalized())
        );
    }
    let csv = cfg.write_with("fujii_residuals.csv", |out| write_residual_csv(&scans, out))?;
    let script = plot_script(&csv, &cfg.zero_counts);
    let gp = cfg.write_with("fujii_plot.gp", |mut out| {
        out.write_all(script.as_bytes())?;
        out.flush()
    })?;
    Ok(vec![csv, gp])
}

/// Writes `progressions.csv`, `exceptional_residues.csv`, `identity_checks.csv`
/// and `constant_fits.csv`.
pub fn cmd_progressions(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let table = build_table(cfg)?;
    let gt = goldbach_table(cfg, &table)?;
    progressions_outputs(cfg, &table, &gt)
}

fn progressions_outputs(
    cfg: &RunConfig,
    table: &MangoldtTable,
    gt: &GoldbachTable,
) -> Result<Vec<PathBuf>> {
    let x = cfg.limit as f64;
    let reports = cfg
        .moduli
        .iter()
        .map(|&q| progression_report(x, q, table, gt))
        .collect::<Result<Vec<_>>>()?;
    let mut paths = vec![cfg.write_with("progressions.csv", |out| {
        write_progressions_csv(&reports, out)
    })?];

    let exceptions = exceptional_set(gt, &[])?.exceptions;
    let mut residue_rows = Vec::new();
    for r in &reports {
        for &c in &cfg.thresholds {
            let h = exceptional_residues(x, r.q, c, &r.exceptional)?;
            let residues = h
                .residues
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            residue_rows.push([
                r.q.to_string(),
                fmt_real(c),
                fmt_real(h.threshold),
                fmt_real(h.size_bound),
                residues,
            ]);
        }
    }
    paths.push(cfg.write_with("exceptional_residues.csv", |out| {
        let mut csv = CsvOut::new(out);
        csv.header(&["q", "C", "threshold", "size_bound", "residues"])?;
        for row in &residue_rows {
            csv.row(row)?;
        }
        csv.finish()
    })?);

    let mut checks = montgomery_suite(cfg.seed, crate::progressions::large_sieve::SUITE_SIZE);
    checks.extend(t1_suite(
        cfg.seed,
        crate::progressions::large_sieve::SUITE_SIZE,
    ));
    let passed = checks.iter().filter(|r| r.check.pass).count();
    paths.push(cfg.write_with("identity_checks.csv", |out| write_checks_csv(&checks, out))?);

    // Implied-constant reports.
    let mut fits: Vec<[String; 5]> = Vec::new();
    let n = cfg.limit.min(10_000) as usize;
    if n >= 4 {
        let primes = SequenceWindow::prime_indicator(n, 0, table);
        let big_q = (n as f64).sqrt().floor().max(2.0);
        for h in [2.0, 4.0, 8.0, 16.0] {
            let r = t2_decomposition(big_q, h, &primes);
            fits.push([
                "t2".into(),
                format!("N={n};Q={big_q};H={h}"),
                fmt_real(r.lhs()),
                fmt_real(r.rhs()),
                fmt_real(r.constant()),
            ]);
        }
        let lambda = SequenceWindow::mangoldt(n, table);
        let q = (n as f64 / 300.0).floor().max(1.0);
        for a in [1i64, 2, 3, 5, 7] {
            let c = halasz_row_check(q, a, &lambda);
            fits.push([
                "halasz".into(),
                format!("x={n};Q={q};a={a}"),
                fmt_real(c.lhs),
                fmt_real(c.rhs),
                fmt_real(c.ratio()),
            ]);
        }
        for (i, a) in [1.0, 1.5, 2.0, 2.5, 3.0].into_iter().enumerate() {
            let f = ea2_fit(n as u64, big_q, a, cfg.seed.wrapping_add(i as u64));
            fits.push([
                "ea2".into(),
                format!("x={n};Q={big_q};A={a};B={}", f.count),
                fmt_real(f.lhs),
                fmt_real(f.shape),
                fmt_real(f.constant()),
            ]);
        }
        for &c in &cfg.thresholds {
            let flagged = exceptional_moduli(x, x.sqrt().floor() / 2.0, c, &exceptions)?;
            fits.push([
                "exceptional_moduli".into(),
                format!("x={x};Q={};C={c}", x.sqrt().floor() / 2.0),
                flagged.len().to_string(),
                String::new(),
                String::new(),
            ]);
        }
    }
    paths.push(cfg.write_with("constant_fits.csv", |out| {
        let mut csv = CsvOut::new(out);
        csv.header(&["kind", "parameters", "lhs", "rhs", "ratio"])?;
        for row in &fits {
            csv.row(row)?;
        }
        csv.finish()
    })?);

    for r in &reports {
        let ratios: Vec<f64> = r
            .coprime_main_term_ratios()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "progressions: q={} main-term ratio in [{}, {}] delta={}",
            r.q,
            fmt_real(lo),
            fmt_real(hi),
            fmt_real(r.delta_restricted)
        );
    }
    println!("identity checks: {passed}/{} pass", checks.len());
    Ok(paths)
}

/// Runs every command with one set of tables.
pub fn cmd_verify_all(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let mut paths = cmd_sieve(cfg)?;
    let table = build_table(cfg)?;
    let gt = goldbach_table(cfg, &table)?;
    paths.extend(goldbach_outputs(cfg, &gt)?);
    paths.extend(cmd_fujii(cfg)?);
    paths.extend(progressions_outputs(cfg, &table, &gt)?);
    Ok(paths)
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    if let Some(n) = cfg.threads {
        // A pool that is already installed is kept.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match command {
        Command::Sieve => cmd_sieve(cfg),
        Command::Goldbach => cmd_goldbach(cfg),
        Command::Fujii => cmd_fujii(cfg),
        Command::Progressions => cmd_progressions(cfg),
        Command::VerifyAll => cmd_verify_all(cfg),
    }
}

/// Parses arguments, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let env_out = std::env::var_os(OUT_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    let result = load_file_config(&cli.flags)
        .and_then(|file| RunConfig::resolve(&cli.flags, &file, env_out))
        .and_then(|cfg| run(cli.command, &cfg));
    match result {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
