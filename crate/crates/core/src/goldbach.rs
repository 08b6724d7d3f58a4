//! Goldbach representation functions.
//!
//! For `n <= limit` a [`GoldbachTable`] holds
//!
//! * `g(n)`: ordered pairs of primes `(p1, p2)` with `p1 + p2 = n`,
//! * `G(n) = Σ_{m1+m2=n} Λ(m1)Λ(m2)`, also over ordered pairs,
//! * `J(n) = n·C₂·Π_{p|n, p>2} (p-1)/(p-2)` for even `n`, `J(n) = 0` for odd `n`,
//! * `F(n) = G(n) - J(n)`.
//!
//! Two builders produce the same table: [`goldbach_direct`] sums over pairs of
//! prime powers and serves as the oracle; [`goldbach_convolution`] squares the
//! Λ and prime-indicator sequences with one packed FFT.

use std::io::Write;
use std::sync::OnceLock;

use crate::convolution::self_convolve_pair;
use crate::error::{Error, Result};
use crate::report::{fmt_real, CsvOut};
use crate::sieve::MangoldtTable;
use crate::sum::Neumaier;

/// Soft cap for the quadratic builder.
pub const DIRECT_CAP: u64 = 100_000;
/// Default cap for the transform builder.
pub const CONVOLUTION_CAP: u64 = 10_000_000;
/// Largest rounding residue accepted on the integer convolution `g`.
pub const ROUNDING_THRESHOLD: f64 = 0.01;
/// Prime limit used for C₂ unless the caller supplies one.
pub const DEFAULT_C2_PRIME_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Convolution,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Convolution => "convolution",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GoldbachTable {
    limit: usize,
    counts: Vec<u64>,
    weighted: Vec<f64>,
    singular: Vec<f64>,
    deviation: Vec<f64>,
    method: Method,
    c2: f64,
}

impl GoldbachTable {
    fn assemble(
        limit: usize,
        counts: Vec<u64>,
        weighted: Vec<f64>,
        method: Method,
        c2: f64,
        table: &MangoldtTable,
    ) -> Self {
        let singular = singular_series_from(limit, c2, table);
        let deviation = weighted.iter().zip(&singular).map(|(g, j)| g - j).collect();
        Self {
            limit,
            counts,
            weighted,
            singular,
            deviation,
            method,
            c2,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// The twin prime constant used for `J`.
    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// g(n), ordered prime pairs.
    pub fn g(&self, n: usize) -> u64 {
        self.counts[n]
    }

    /// G(n), Λ-weighted ordered pairs.
    pub fn big_g(&self, n: usize) -> f64 {
        self.weighted[n]
    }

    /// J(n), the singular-series prediction.
    pub fn j(&self, n: usize) -> f64 {
        self.singular[n]
    }

    /// F(n) = G(n) - J(n).
    pub fn f(&self, n: usize) -> f64 {
        self.deviation[n]
    }

    pub fn g_slice(&self) -> &[u64] {
        &self.counts
    }

    pub fn big_g_slice(&self) -> &[f64] {
        &self.weighted
    }

    pub fn j_slice(&self) -> &[f64] {
        &self.singular
    }

    pub fn f_slice(&self) -> &[f64] {
        &self.deviation
    }

    /// Representations `p1 <= p2`: `(g(n) + [n/2 prime]) / 2` for even `n`.
    ///
    /// For odd `n` the ordered count is returned halved, rounding up for the
    /// single `2 + p` pair.
    pub fn unordered(&self, n: usize, table: &MangoldtTable) -> u64 {
        let diagonal = u64::from(n % 2 == 0 && table.is_prime(n / 2));
        (self.counts[n] + diagonal).div_ceil(2)
    }

    /// Writes `n,g,G,J,F` for `1 <= n <= limit`.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut csv = CsvOut::new(out);
        csv.header(&["n", "g", "G", "J", "F"])?;
        for n in 1..=self.limit {
            csv.row(&[
                n.to_string(),
                self.counts[n].to_string(),
                fmt_real(self.weighted[n]),
                fmt_real(self.singular[n]),
                fmt_real(self.deviation[n]),
            ])?;
        }
        csv.finish()
    }
}

fn check_limit(limit: u64, table: &MangoldtTable) -> Result<usize> {
    if limit > table.limit() {
        return Err(Error::OutOfRange {
            value: limit as f64,
            limit: table.limit(),
        });
    }
    Ok(limit as usize)
}

/// Exact pairwise evaluation of g and G up to [`DIRECT_CAP`].
pub fn goldbach_direct(limit: u64, table: &MangoldtTable) -> Result<GoldbachTable> {
    if limit > DIRECT_CAP {
        return Err(Error::Capacity(format!(
            "the direct builder is quadratic and capped at {DIRECT_CAP}; use the convolution \
             builder or goldbach_direct_uncapped for limit {limit}"
        )));
    }
    goldbach_direct_uncapped(limit, table, default_c2())
}

/// [`goldbach_direct`] without the soft cap, with an explicit C₂.
pub fn goldbach_direct_uncapped(
    limit: u64,
    table: &MangoldtTable,
    c2: f64,
) -> Result<GoldbachTable> {
    let n = check_limit(limit, table)?;
    let powers: Vec<(usize, f64)> = table.prime_powers().take_while(|&(m, _)| m <= n).collect();
    let primes: Vec<usize> = table.primes().take_while(|&p| p <= n).collect();

    let mut weighted = vec![0.0f64; n + 1];
    for &(m1, l1) in &powers {
        for &(m2, l2) in &powers {
            if m1 + m2 > n {
                break;
            }
            weighted[m1 + m2] += l1 * l2;
        }
    }
    let mut counts = vec![0u64; n + 1];
    for &p1 in &primes {
        for &p2 in &primes {
            if p1 + p2 > n {
                break;
            }
            counts[p1 + p2] += 1;
        }
    }
    Ok(GoldbachTable::assemble(
        n,
        counts,
        weighted,
        Method::Direct,
        c2,
        table,
    ))
}

/// g and G through one packed FFT, up to [`CONVOLUTION_CAP`].
pub fn goldbach_convolution(limit: u64, table: &MangoldtTable) -> Result<GoldbachTable> {
    goldbach_convolution_with(limit, table, default_c2(), CONVOLUTION_CAP)
}

pub fn goldbach_convolution_with(
    limit: u64,
    table: &MangoldtTable,
    c2: f64,
    cap: u64,
) -> Result<GoldbachTable> {
    if limit > cap {
        return Err(Error::Capacity(format!(
            "convolution limit {limit} exceeds the configured maximum {cap}"
        )));
    }
    let n = check_limit(limit, table)?;
    let lambda = &table.lambda_slice()[..=n];
    let indicator: Vec<f64> = (0..=n)
        .map(|m| f64::from(u8::from(table.is_prime(m))))
        .collect();
    let (mut weighted, raw_counts) = self_convolve_pair(lambda, &indicator, n + 1);
    drop(indicator);

    let mut counts = Vec::with_capacity(n + 1);
    for (idx, &v) in raw_counts.iter().enumerate() {
        let rounded = v.round();
        let residue = (v - rounded).abs();
        if residue >= ROUNDING_THRESHOLD || rounded < 0.0 {
            return Err(Error::Precision {
                index: idx,
                residue,
                threshold: ROUNDING_THRESHOLD,
            });
        }
        counts.push(rounded as u64);
    }

    // Every nonzero G(n) is a sum of products Λ(m1)Λ(m2) >= (ln 2)^2, so
    // anything below half of that is transform noise on an exact zero.
    let floor = 0.5 * std::f64::consts::LN_2 * std::f64::consts::LN_2;
    for v in weighted.iter_mut() {
        if *v < floor {
            *v = 0.0;
        }
    }
    Ok(GoldbachTable::assemble(
        n,
        counts,
        weighted,
        Method::Convolution,
        c2,
        table,
    ))
}

/// C₂ together with a lower bound on the omitted tail product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwinPrimeConstant {
    /// `2·Π_{2<p<=prime_limit} (1 - 1/(p-1)^2)`.
    pub value: f64,
    /// Lower bound `exp(-2/(prime_limit-1))` on `Π_{p>prime_limit}(1 - 1/(p-1)^2)`,
    /// so the true constant lies in `[value·tail_bound, value]`.
    pub tail_bound: f64,
    pub prime_limit: u64,
}

impl TwinPrimeConstant {
    pub fn lower(&self) -> f64 {
        self.value * self.tail_bound
    }
}

/// Truncated Euler product for the twin prime constant.
///
/// The tail uses `ln(1-u) >= -2u` for `u <= 1/2` and
/// `Σ_{p>P} (p-1)^{-2} <= Σ_{m>=P} m^{-2} <= ∫_{P-1}^∞ t^{-2} dt`.
pub fn twin_prime_constant(prime_limit: u64) -> Result<TwinPrimeConstant> {
    if prime_limit < 3 {
        return Err(Error::Domain(format!(
            "twin prime constant needs prime_limit >= 3, got {prime_limit}"
        )));
    }
    let log_product: f64 = crate::sum::compensated(
        crate::arith::primes_up_to(prime_limit)
            .into_iter()
            .skip(1)
            .map(|p| {
                let d = (p - 1) as f64;
                (-1.0 / (d * d)).ln_1p()
            }),
    );
    Ok(TwinPrimeConstant {
        value: 2.0 * log_product.exp(),
        tail_bound: (-2.0 / (prime_limit - 1) as f64).exp(),
        prime_limit,
    })
}

/// C₂ at [`DEFAULT_C2_PRIME_LIMIT`], computed once per process.
pub fn default_c2() -> f64 {
    static C2: OnceLock<f64> = OnceLock::new();
    *C2.get_or_init(|| {
        twin_prime_constant(DEFAULT_C2_PRIME_LIMIT)
            .expect("default prime limit is valid")
            .value
    })
}

/// J(0..=limit) from the table's smallest-prime-factor data.
pub fn singular_series(limit: u64, c2: f64, table: &MangoldtTable) -> Result<Vec<f64>> {
    if limit < 2 {
        return Err(Error::Argument(format!(
            "singular series needs limit >= 2, got {limit}"
        )));
    }
    let n = check_limit(limit, table)?;
    Ok(singular_series_from(n, c2, table))
}

fn singular_series_from(limit: usize, c2: f64, table: &MangoldtTable) -> Vec<f64> {
    let mut out = vec![0.0; limit + 1];
    for n in (2..=limit).step_by(2) {
        let local: f64 = table
            .distinct_prime_factors(n)
            .filter(|&p| p > 2)
            .map(|p| (p - 1) as f64 / (p - 2) as f64)
            .product();
        out[n] = n as f64 * c2 * local;
    }
    out
}

/// Even numbers without a representation, with running counts E(x).
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalSet {
    /// Even `4 <= n <= limit` with `g(n) = 0`.
    pub exceptions: Vec<u64>,
    pub checkpoints: Vec<u64>,
    /// E(x) at each checkpoint, counting even `4 <= n <= x` only.
    pub counts: Vec<u64>,
}

impl ExceptionalSet {
    /// Counts under the convention that also treats `n = 2` as exceptional.
    pub fn counts_including_two(&self) -> Vec<u64> {
        self.checkpoints
            .iter()
            .zip(&self.counts)
            .map(|(&x, &c)| c + u64::from(x >= 2))
            .collect()
    }
}

pub fn exceptional_set(table: &GoldbachTable, checkpoints: &[u64]) -> Result<ExceptionalSet> {
    check_checkpoints(checkpoints, table.limit())?;
    let exceptions: Vec<u64> = (4..=table.limit)
        .step_by(2)
        .filter(|&n| table.counts[n] == 0)
        .map(|n| n as u64)
        .collect();
    let counts = checkpoints
        .iter()
        .map(|&x| exceptions.partition_point(|&n| n <= x) as u64)
        .collect();
    Ok(ExceptionalSet {
        exceptions,
        checkpoints: checkpoints.to_vec(),
        counts,
    })
}

fn check_checkpoints(checkpoints: &[u64], limit: u64) -> Result<()> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument(
            "checkpoints must be strictly ascending".into(),
        ));
    }
    if let Some(&last) = checkpoints.last() {
        if last > limit {
            return Err(Error::OutOfRange {
                value: last as f64,
                limit,
            });
        }
    }
    Ok(())
}

/// Prefix statistics of a [`GoldbachTable`] sampled at checkpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct SummarySeries {
    pub checkpoints: Vec<u64>,
    /// S(x) = Σ_{n≤x} G(n).
    pub s: Vec<f64>,
    /// Σ_{n≤x} F(n).
    pub sum_f: Vec<f64>,
    /// Σ_{n≤x} F(n)².
    pub sum_f2: Vec<f64>,
    /// E(x).
    pub exceptions: Vec<u64>,
    /// Σ_{n≤x} g(n).
    pub sum_g: Vec<u64>,
}

impl SummarySeries {
    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    /// `Σ g(n) / (x²/(2 ln² x))` at each checkpoint (NaN for x < 2).
    pub fn landau_ratio(&self) -> Vec<f64> {
        self.checkpoints
            .iter()
            .zip(&self.sum_g)
            .map(|(&x, &sg)| {
                let x = x as f64;
                if x < 2.0 {
                    return f64::NAN;
                }
                sg as f64 / (0.5 * x * x / (x.ln() * x.ln()))
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut csv = CsvOut::new(out);
        csv.header(&["x", "S", "sumF", "sumF2", "E", "sum_g", "landau_ratio"])?;
        let landau = self.landau_ratio();
        for (i, &ratio) in landau.iter().enumerate() {
            csv.row(&[
                self.checkpoints[i].to_string(),
                fmt_real(self.s[i]),
                fmt_real(self.sum_f[i]),
                fmt_real(self.sum_f2[i]),
                self.exceptions[i].to_string(),
                self.sum_g[i].to_string(),
                fmt_real(ratio),
            ])?;
        }
        csv.finish()
    }
}

pub fn summarize(table: &GoldbachTable, checkpoints: &[u64]) -> Result<SummarySeries> {
    check_checkpoints(checkpoints, table.limit())?;
    let k = checkpoints.len();
    let mut out = SummarySeries {
        checkpoints: checkpoints.to_vec(),
        s: Vec::with_capacity(k),
        sum_f: Vec::with_capacity(k),
        sum_f2: Vec::with_capacity(k),
        exceptions: Vec::with_capacity(k),
        sum_g: Vec::with_capacity(k),
    };
    let (mut s, mut sf, mut sf2) = (Neumaier::new(), Neumaier::new(), Neumaier::new());
    let (mut e, mut sg) = (0u64, 0u64);
    let mut next = 0usize;
    for n in 0..=table.limit {
        s.add(table.weighted[n]);
        sf.add(table.deviation[n]);
        sf2.add(table.deviation[n] * table.deviation[n]);
        sg += table.counts[n];
        if n >= 4 && n % 2 == 0 && table.counts[n] == 0 {
            e += 1;
        }
        while next < k && checkpoints[next] as usize == n {
            out.s.push(s.value());
            out.sum_f.push(sf.value());
            out.sum_f2.push(sf2.value());
            out.exceptions.push(e);
            out.sum_g.push(sg);
            next += 1;
        }
        if next == k {
            break;
        }
    }
    Ok(out)
}
