//! Segmented sieve producing von Mangoldt tables.
//!
//! [`MangoldtTable`] stores Λ(n), a primality bitmap, the prefix sums
//! ψ(n) = Σ_{m≤n} Λ(m) and a smallest-prime-factor table for every
//! `1 <= n <= limit`. Index 0 is present but unused (Λ(0) = ψ(0) = 0).
//!
//! The smallest-prime-factor array is filled one segment at a time; segments
//! are independent once the base primes up to √limit are known, so they are
//! handed to rayon. After construction the table is immutable.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sum::Neumaier;

/// Limits applied by [`build_mangoldt_table_with`].
#[derive(Clone, Debug)]
pub struct SieveConfig {
    /// Largest admissible `limit`.
    pub max_limit: u64,
    /// Entries per sieve segment.
    pub segment_size: usize,
    /// Upper bound on the bytes held by the finished table.
    pub memory_budget: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            max_limit: 100_000_000,
            segment_size: 1 << 20,
            memory_budget: 4 << 30,
        }
    }
}

/// Bytes per table entry: Λ, ψ (f64 each), smallest prime factor (u32), plus
/// one bit of primality.
const BYTES_PER_ENTRY: f64 = 8.0 + 8.0 + 4.0 + 0.125;

#[derive(Clone, Debug)]
pub struct MangoldtTable {
    limit: usize,
    lambda: Vec<f64>,
    is_prime: Vec<u64>,
    psi_prefix: Vec<f64>,
    spf: Vec<u32>,
}

/// Builds the table for `1..=limit` with the default [`SieveConfig`].
pub fn build_mangoldt_table(limit: u64) -> Result<MangoldtTable> {
    build_mangoldt_table_with(limit, &SieveConfig::default())
}

pub fn build_mangoldt_table_with(limit: u64, config: &SieveConfig) -> Result<MangoldtTable> {
    if limit < 2 {
        return Err(Error::Capacity(format!(
            "limit must be at least 2, got {limit}"
        )));
    }
    if limit > config.max_limit {
        return Err(Error::Capacity(format!(
            "limit {limit} exceeds the configured maximum {}",
            config.max_limit
        )));
    }
    if limit > u64::from(u32::MAX) {
        return Err(Error::Capacity(format!(
            "limit {limit} does not fit 32-bit factors"
        )));
    }
    let needed = (limit as f64 + 1.0) * BYTES_PER_ENTRY;
    if needed > config.memory_budget as f64 {
        return Err(Error::Capacity(format!(
            "limit {limit} needs about {:.0} MiB, budget is {} MiB",
            needed / f64::from(1 << 20),
            config.memory_budget >> 20
        )));
    }
    let n = limit as usize;
    let segment = config.segment_size.max(1024);

    let base = crate::arith::primes_up_to((limit as f64).sqrt() as u64 + 1);
    let base: Vec<usize> = base.into_iter().map(|p| p as usize).collect();

    let mut spf = vec![0u32; n + 1];
    let mut lambda = vec![0.0f64; n + 1];
    spf.par_chunks_mut(segment)
        .zip(lambda.par_chunks_mut(segment))
        .enumerate()
        .for_each(|(idx, (spf_seg, lambda_seg))| {
            sieve_segment(idx * segment, spf_seg, lambda_seg, &base);
        });
    spf[0] = 0;
    spf[1] = 1;
    lambda[0] = 0.0;
    lambda[1] = 0.0;

    let mut is_prime = vec![0u64; n / 64 + 1];
    for m in 2..=n {
        if spf[m] as usize == m {
            is_prime[m / 64] |= 1 << (m % 64);
        }
    }

    // Higher prime powers p^k, k >= 2, by repeated multiplication.
    for &p in base.iter() {
        let log_p = (p as f64).ln();
        let mut pk = p * p;
        while pk <= n {
            lambda[pk] = log_p;
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
    }

    let mut psi_prefix = Vec::with_capacity(n + 1);
    let mut acc = Neumaier::new();
    for &l in &lambda {
        acc.add(l);
        psi_prefix.push(acc.value());
    }

    Ok(MangoldtTable {
        limit: n,
        lambda,
        is_prime,
        psi_prefix,
        spf,
    })
}

/// Fills smallest prime factors for `[lo, lo + spf.len())` and sets Λ(p)
/// for the primes found there.
fn sieve_segment(lo: usize, spf: &mut [u32], lambda: &mut [f64], base: &[usize]) {
    let hi = lo + spf.len();
    for &p in base {
        if p * p >= hi {
            break;
        }
        let first = (p * p).max(lo.div_ceil(p) * p);
        let mut m = first;
        while m < hi {
            let slot = &mut spf[m - lo];
            if *slot == 0 {
                *slot = p as u32;
            }
            m += p;
        }
    }
    for (i, slot) in spf.iter_mut().enumerate() {
        let m = lo + i;
        if m >= 2 && *slot == 0 {
            *slot = m as u32;
            lambda[i] = (m as f64).ln();
        }
    }
}

impl MangoldtTable {
    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    /// Λ(n); zero for `n == 0` and `n == 1`.
    ///
    /// # Panics
    /// Panics if `n > limit`.
    #[inline]
    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    /// Λ(0..=limit).
    pub fn lambda_slice(&self) -> &[f64] {
        &self.lambda
    }

    /// ψ(0..=limit).
    pub fn psi_prefix(&self) -> &[f64] {
        &self.psi_prefix
    }

    #[inline]
    pub fn is_prime(&self, n: usize) -> bool {
        n <= self.limit && self.is_prime[n / 64] >> (n % 64) & 1 == 1
    }

    /// Smallest prime factor of `2 <= n <= limit`.
    #[inline]
    pub fn smallest_prime_factor(&self, n: usize) -> u32 {
        self.spf[n]
    }

    /// Distinct prime factors of `n` read off the smallest-prime-factor table.
    pub fn distinct_prime_factors(&self, mut n: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::from_fn(move || {
            if n < 2 {
                return None;
            }
            let p = self.spf[n] as usize;
            while n % p == 0 {
                n /= p;
            }
            Some(p)
        })
    }

    pub fn primes(&self) -> impl Iterator<Item = usize> + '_ {
        (2..=self.limit).filter(move |&n| self.is_prime(n))
    }

    /// `(n, Λ(n))` for every prime power `n <= limit`.
    pub fn prime_powers(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.lambda
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0.0)
            .map(|(n, &l)| (n, l))
    }

    /// Number of primes `<= x`.
    pub fn prime_count(&self, x: usize) -> u64 {
        let x = x.min(self.limit);
        (2..=x).filter(|&n| self.is_prime(n)).count() as u64
    }

    /// Floors a real argument into a table index.
    pub(crate) fn index_of(&self, x: f64) -> Result<usize> {
        if x.is_nan() {
            return Err(Error::Argument("x is NaN".into()));
        }
        if x > self.limit as f64 {
            return Err(Error::OutOfRange {
                value: x,
                limit: self.limit as u64,
            });
        }
        if x < 0.0 {
            return Ok(0);
        }
        Ok(x.floor() as usize)
    }

    /// Chebyshev's ψ(x) = Σ_{n≤x} Λ(n).
    pub fn chebyshev_psi(&self, x: f64) -> Result<f64> {
        Ok(self.psi_prefix[self.index_of(x)?])
    }

    /// ψ(x; q, a) = Σ_{n≤x, n≡a (mod q)} Λ(n).
    pub fn psi_progression(&self, x: f64, q: u64, a: u64) -> Result<f64> {
        check_modulus(q, a)?;
        let end = self.index_of(x)?;
        let (q, a) = (q as usize, a as usize);
        let start = if a == 0 { q } else { a };
        let mut acc = Neumaier::new();
        let mut n = start;
        while n <= end {
            acc.add(self.lambda[n]);
            n += q;
        }
        Ok(acc.value())
    }

    /// ψ(x; q, a) for every residue `a` in `0..q`, in one pass.
    pub fn psi_progression_all(&self, x: f64, q: u64) -> Result<Vec<f64>> {
        check_modulus(q, 0)?;
        let end = self.index_of(x)?;
        let q = q as usize;
        let mut acc = vec![Neumaier::new(); q];
        for (n, &l) in self.lambda.iter().enumerate().take(end + 1).skip(1) {
            if l > 0.0 {
                acc[n % q].add(l);
            }
        }
        Ok(acc.iter().map(Neumaier::value).collect())
    }
}

pub(crate) fn check_modulus(q: u64, a: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::Argument("modulus q must be at least 1".into()));
    }
    if a >= q {
        return Err(Error::Argument(format!(
            "residue {a} is not reduced modulo {q}"
        )));
    }
    Ok(())
}

/// Free-function form of [`MangoldtTable::chebyshev_psi`].
pub fn chebyshev_psi(x: f64, table: &MangoldtTable) -> Result<f64> {
    table.chebyshev_psi(x)
}

/// Free-function form of [`MangoldtTable::psi_progression`].
pub fn psi_progression(x: f64, q: u64, a: u64, table: &MangoldtTable) -> Result<f64> {
    table.psi_progression(x, q, a)
}

pub use crate::arith::euler_totient;
