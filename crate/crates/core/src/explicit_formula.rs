//! Zeta zeros, the oscillating term of the Goldbach average, the Goldbach
//! Dirichlet series and the power-series recovery of ψ.
//!
//! Zeros are taken on the critical line, ρ = 1/2 + iγ. Each positive γ stands
//! for the conjugate pair, so sums over ρ become `2·Re` of sums over γ > 0.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::goldbach::{GoldbachTable, SummarySeries};
use crate::report::{fmt_real, CsvOut};
use crate::sieve::MangoldtTable;
use crate::sum::{pairwise, ComplexNeumaier};

const BUNDLED_ZEROS: &str = include_str!("../data/zeta_zeros.txt");

/// Default number of zeros in the truncated oscillating term.
pub const DEFAULT_ZERO_COUNT: usize = 100;

/// Imaginary parts of the first nontrivial zeros of ζ, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaZeros {
    gammas: Vec<f64>,
    source: String,
}

impl ZetaZeros {
    /// The first 100 zeros shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_ZEROS, "bundled:zeta_zeros.txt").expect("bundled zeros are valid")
    }

    /// Parses one decimal per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let fail = |line: usize, message: String| Error::Ingestion {
            origin: source.to_string(),
            line,
            message,
        };
        let mut gammas: Vec<f64> = Vec::new();
        let mut first_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let g: f64 = s
                .parse()
                .map_err(|_| fail(line, format!("cannot parse {s:?} as a decimal")))?;
            if !g.is_finite() || g <= 0.0 {
                return Err(fail(
                    line,
                    format!("zero ordinate {s} is not a positive number"),
                ));
            }
            if let Some(&prev) = gammas.last() {
                if g <= prev {
                    return Err(fail(
                        line,
                        format!("{g} does not exceed the previous entry {prev}"),
                    ));
                }
            } else {
                first_line = line;
            }
            gammas.push(g);
        }
        let Some(&first) = gammas.first() else {
            return Err(fail(0, "no zeros found".into()));
        };
        if !(14.0..14.3).contains(&first) {
            return Err(fail(
                first_line,
                format!("first ordinate {first} is not the first zeta zero 14.1347..."),
            ));
        }
        Ok(Self {
            gammas,
            source: source.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|err| Error::Ingestion {
            origin: path.display().to_string(),
            line: 0,
            message: err.to_string(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    fn check_count(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.gammas.len() {
            return Err(Error::Argument(format!(
                "zero count K={k} must be in 1..={}",
                self.gammas.len()
            )));
        }
        Ok(())
    }
}

/// Loads a zeros file; see [`ZetaZeros::parse`] for the format.
pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZetaZeros> {
    ZetaZeros::load(path)
}

/// `1 / ((1/2 + iγ)(3/2 + iγ))`.
fn pair_weight(gamma: f64) -> Complex64 {
    Complex64::new(0.75 - gamma * gamma, 2.0 * gamma).inv()
}

/// Truncated oscillating term
/// `H_K(x) = -4 x^{3/2} Re Σ_{k≤K} x^{iγ_k} / ((1/2+iγ_k)(3/2+iγ_k))`.
pub fn oscillating_term(x: f64, zeros: &ZetaZeros, k: usize) -> Result<f64> {
    zeros.check_count(k)?;
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "oscillating term needs finite x >= 2, got {x}"
        )));
    }
    let log_x = x.ln();
    let terms: Vec<f64> = zeros.gammas[..k]
        .iter()
        .map(|&g| {
            let (s, c) = (g * log_x).sin_cos();
            (Complex64::new(c, s) * pair_weight(g)).re
        })
        .collect();
    Ok(-4.0 * x.powf(1.5) * pairwise(&terms))
}

/// Triangle-inequality bound `4 x^{3/2} Σ_{k≤K} |1/((1/2+iγ_k)(3/2+iγ_k))|`.
pub fn oscillating_term_bound(x: f64, zeros: &ZetaZeros, k: usize) -> Result<f64> {
    zeros.check_count(k)?;
    let terms: Vec<f64> = zeros.gammas[..k]
        .iter()
        .map(|&g| pair_weight(g).norm())
        .collect();
    Ok(4.0 * x.powf(1.5) * pairwise(&terms))
}

/// Size of the omitted zeros beyond γ_K: `4 x^{3/2} ∫_{γ_K}^∞ dN(t)/t²` with
/// the zero density `dN(t) = ln(t/2π)/(2π) dt`.
pub fn truncation_tail_estimate(x: f64, zeros: &ZetaZeros, k: usize) -> Result<f64> {
    zeros.check_count(k)?;
    let t = zeros.gammas[k - 1];
    let two_pi = std::f64::consts::TAU;
    Ok(4.0 * x.powf(1.5) * ((t / two_pi).ln() + 1.0) / (two_pi * t))
}

/// `S(x) - x²/2 - H_K(x)` over the checkpoints of a summary.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualScan {
    pub xs: Vec<u64>,
    pub k: usize,
    pub residual: Vec<f64>,
    /// `residual / x^{3/2}`.
    pub normalized: Vec<f64>,
}

fn rms(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    (xs.iter().map(|v| v * v).sum::<f64>() / xs.len() as f64).sqrt()
}

impl ResidualScan {
    pub fn rms_residual(&self) -> f64 {
        rms(&self.residual)
    }

    pub fn rms_normalized(&self) -> f64 {
        rms(&self.normalized)
    }

    /// `|residual| / (x ln⁵ x)` at each checkpoint.
    pub fn log5_ratios(&self) -> Vec<f64> {
        self.xs
            .iter()
            .zip(&self.residual)
            .map(|(&x, r)| {
                let x = x as f64;
                r.abs() / (x * x.ln().powi(5))
            })
            .collect()
    }
}

pub fn fujii_residual(
    summary: &SummarySeries,
    zeros: &ZetaZeros,
    k: usize,
) -> Result<ResidualScan> {
    zeros.check_count(k)?;
    let mut residual = Vec::with_capacity(summary.len());
    let mut normalized = Vec::with_capacity(summary.len());
    for (&x, &s) in summary.checkpoints.iter().zip(&summary.s) {
        let xf = x as f64;
        let r = s - 0.5 * xf * xf - oscillating_term(xf, zeros, k)?;
        residual.push(r);
        normalized.push(r / xf.powf(1.5));
    }
    Ok(ResidualScan {
        xs: summary.checkpoints.clone(),
        k,
        residual,
        normalized,
    })
}

/// Writes `x,K,residual,normalized` rows for several scans into one file.
pub fn write_residual_csv<W: Write>(scans: &[ResidualScan], out: W) -> std::io::Result<()> {
    let mut csv = CsvOut::new(out);
    csv.header(&["x", "K", "residual", "normalized"])?;
    for scan in scans {
        for i in 0..scan.xs.len() {
            csv.row(&[
                scan.xs[i].to_string(),
                scan.k.to_string(),
                fmt_real(scan.residual[i]),
                fmt_real(scan.normalized[i]),
            ])?;
        }
    }
    csv.finish()
}

/// Partial sum `Σ_{n≤N} G(n) n^{-s}` of the Goldbach Dirichlet series.
pub fn dirichlet_series_partial(s: Complex64, table: &GoldbachTable) -> Complex64 {
    let mut acc = ComplexNeumaier::new();
    for (n, &g) in table.big_g_slice().iter().enumerate().skip(1) {
        if g != 0.0 {
            acc.add((-s * (n as f64).ln()).exp() * g);
        }
    }
    acc.value()
}

/// `C₁ = 1/2 + Σ_ρ r(ρ)/(ρ+1)` with `r(ρ) = -2/ρ`, truncated to K zero pairs.
pub fn c1_truncated(zeros: &ZetaZeros, k: usize) -> Result<f64> {
    zeros.check_count(k)?;
    let terms: Vec<f64> = zeros.gammas[..k]
        .iter()
        .map(|&g| pair_weight(g).re)
        .collect();
    Ok(0.5 - 4.0 * pairwise(&terms))
}

/// Pole part `1/(s-2) + C₁ + Σ_ρ r(ρ)/(s-ρ-1)` of the Dirichlet series,
/// truncated to K zero pairs. The remaining integral of the error term is not
/// modelled.
pub fn pole_prediction(s: Complex64, zeros: &ZetaZeros, k: usize) -> Result<Complex64> {
    let mut acc = ComplexNeumaier::new();
    acc.add((s - 2.0).inv());
    acc.add(Complex64::new(c1_truncated(zeros, k)?, 0.0));
    for &g in &zeros.gammas[..k] {
        for rho in [Complex64::new(0.5, g), Complex64::new(0.5, -g)] {
            acc.add(-2.0 / rho / (s - rho - 1.0));
        }
    }
    Ok(acc.value())
}

/// `f(z) = Σ_{n≤terms} Λ(n) zⁿ` by Horner's rule.
pub fn power_series_eval(z: Complex64, table: &MangoldtTable, terms: u64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!(
            "power series needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    if terms > table.limit() {
        return Err(Error::OutOfRange {
            value: terms as f64,
            limit: table.limit(),
        });
    }
    let lambda = table.lambda_slice();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..=terms as usize).rev() {
        acc = acc * z + lambda[n];
    }
    Ok(acc * z)
}

/// `K(z) = z^{-N-1} + z^{-N} + ... + z^{-2} = z^{-N-1}(1 - z^N)/(1 - z)`.
pub fn kernel_eval(z: Complex64, n: u64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("kernel is singular at z = 0".into()));
    }
    if n == 0 || n >= i32::MAX as u64 {
        return Err(Error::Argument(format!("kernel length N={n} out of range")));
    }
    let n = n as i32;
    let head = z.powi(-n - 1);
    if (Complex64::new(1.0, 0.0) - z).norm() < 1e-12 {
        return Ok(head * f64::from(n));
    }
    Ok(head * (1.0 - z.powi(n)) / (1.0 - z))
}

/// Both contour readings at one `(N, samples)`, with the sieve values they
/// should reproduce.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourRecovery {
    pub n: u64,
    pub samples: usize,
    /// Circle mean of `f·K`: coefficients 2..=N+1 of f, i.e. `Σ_{2≤n≤N+1} Λ(n)`.
    pub windowed: f64,
    /// `(1/2πi)∮ f(z)K(z) dz`: coefficients 1..=N of f, i.e. ψ(N).
    pub cauchy: f64,
    /// `Σ_{2≤n≤N+1} Λ(n)` from the sieve.
    pub sieve_windowed: f64,
    /// ψ(N) from the sieve.
    pub sieve_psi: f64,
}

impl ContourRecovery {
    /// `windowed - cauchy`, which should equal Λ(N+1) - Λ(1) = Λ(N+1).
    pub fn discrepancy(&self) -> f64 {
        self.windowed - self.cauchy
    }

    pub fn windowed_rel_error(&self) -> f64 {
        (self.windowed - self.sieve_windowed).abs()
            / self.sieve_windowed.abs().max(f64::MIN_POSITIVE)
    }

    pub fn cauchy_rel_error(&self) -> f64 {
        (self.cauchy - self.sieve_psi).abs() / self.sieve_psi.abs().max(f64::MIN_POSITIVE)
    }
}

/// Samples `f·K` on `|z| = e^{-1/N}` at `samples` equispaced points and
/// returns the two trapezoid-rule readings.
///
/// f is truncated at degree `min(samples, limit)`. With `samples >= 4N` every
/// exponent that survives the discrete average is then a genuine one, so the
/// result carries no aliasing from higher coefficients.
pub fn contour_report(n: u64, samples: usize, table: &MangoldtTable) -> Result<ContourRecovery> {
    if n == 0 {
        return Err(Error::Argument(
            "contour length N must be at least 1".into(),
        ));
    }
    if !samples.is_power_of_two() || (samples as u64) < 4 * n {
        return Err(Error::Argument(format!(
            "samples must be a power of two >= 4N = {}, got {samples}",
            4 * n
        )));
    }
    if n + 1 > table.limit() {
        return Err(Error::OutOfRange {
            value: (n + 1) as f64,
            limit: table.limit(),
        });
    }
    let m = samples;
    let nn = n as usize;
    let inv_n = 1.0 / n as f64;
    let degree = m.min(table.limit() as usize);

    // f(R ω^j) = Σ_k Λ(k) R^k ω^{jk}: an unnormalised inverse DFT.
    let lambda = table.lambda_slice();
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for k in 1..=degree.min(m - 1) {
        buf[k] = Complex64::new(lambda[k] * (-(k as f64) * inv_n).exp(), 0.0);
    }
    if degree == m {
        // Degree m folds onto index 0 (ω^{jm} = 1).
        buf[0] = Complex64::new(lambda[m] * (-(m as f64) * inv_n).exp(), 0.0);
    }
    FftPlanner::<f64>::new()
        .plan_fft_inverse(m)
        .process(&mut buf);

    let roots: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64))
        .collect();
    let r_pow = |e: f64| (-e * inv_n).exp();
    let head_scale = r_pow(-((nn + 1) as f64));
    let tail_scale = r_pow(nn as f64);

    let mut windowed = ComplexNeumaier::new();
    let mut cauchy = ComplexNeumaier::new();
    for (j, &f) in buf.iter().enumerate() {
        let z = roots[j] * r_pow(1.0);
        let head = roots[(m - (j * (nn + 1)) % m) % m] * head_scale;
        let z_n = roots[(j * nn) % m] * tail_scale;
        let kernel = head * (1.0 - z_n) / (1.0 - z);
        let fk = f * kernel;
        windowed.add(fk);
        cauchy.add(fk * z);
    }
    let scale = 1.0 / m as f64;
    let psi = table.psi_prefix();
    Ok(ContourRecovery {
        n,
        samples,
        windowed: windowed.value().re * scale,
        cauchy: cauchy.value().re * scale,
        sieve_windowed: psi[nn + 1] - psi[1],
        sieve_psi: psi[nn],
    })
}

/// Circle mean of `f·K` on `|z| = e^{-1/N}`, recovering `Σ_{2≤n≤N+1} Λ(n)`.
pub fn psi_via_contour(n: u64, samples: usize, table: &MangoldtTable) -> Result<f64> {
    Ok(contour_report(n, samples, table)?.windowed)
}

/// Cauchy's formula `ψ(N) = (1/2πi)∮ f(z)K(z) dz` on `|z| = e^{-1/N}`.
pub fn psi_via_cauchy(n: u64, samples: usize, table: &MangoldtTable) -> Result<f64> {
    Ok(contour_report(n, samples, table)?.cauchy)
}

/// One point of the major-arc comparison of f(z) with 1/(1-z).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MajorArcSample {
    pub z: Complex64,
    /// `|1 - z|`.
    pub distance: f64,
    /// `|f(z) - 1/(1-z)| · |1 - z|`.
    pub ratio: f64,
}

/// Samples the arc of `|z| = e^{-1/N}` where `|1 - z| <= N^{-2/3}` at `count`
/// equispaced angles, endpoints included. f is summed up to the table limit.
pub fn major_arc_samples(
    n: u64,
    table: &MangoldtTable,
    count: usize,
) -> Result<Vec<MajorArcSample>> {
    if n < 2 || count < 2 {
        return Err(Error::Argument(
            "major arc sampling needs N >= 2 and count >= 2".into(),
        ));
    }
    let nf = n as f64;
    let radius = (-1.0 / nf).exp();
    let width = nf.powf(-2.0 / 3.0);
    // |1 - R e^{iθ}|² = 1 + R² - 2R cos θ
    let cos_max = (1.0 + radius * radius - width * width) / (2.0 * radius);
    if cos_max > 1.0 {
        return Err(Error::Domain("major arc is empty for this N".into()));
    }
    let theta_max = cos_max.acos();
    let one = Complex64::new(1.0, 0.0);
    (0..count)
        .map(|i| {
            let theta = theta_max * (2.0 * i as f64 / (count - 1) as f64 - 1.0);
            let z = Complex64::from_polar(radius, theta);
            let f = power_series_eval(z, table, table.limit())?;
            let gap = one - z;
            Ok(MajorArcSample {
                z,
                distance: gap.norm(),
                ratio: (f - gap.inv()).norm() * gap.norm(),
            })
        })
        .collect()
}
