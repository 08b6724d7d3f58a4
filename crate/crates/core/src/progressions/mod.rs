//! Goldbach sums restricted to residue classes, exceptional counts per class
//! and the Bombieri–Vinogradov type discrepancies.

pub mod large_sieve;

use std::io::Write;

pub use large_sieve::{
    ea2_fit, ea2_measure, exponential_sum, halasz_row_check, m_prime, montgomery_identity,
    montgomery_suite, rational_exponential_sums, t1_check, t1_suite, t2_decomposition,
    write_checks_csv, CheckRecord, Ea2Fit, IdentityCheck, Relation, SequenceWindow, T1Variant,
    T2Report,
};

use crate::arith::{euler_totient, gcd};
use crate::error::{Error, Result};
use crate::goldbach::GoldbachTable;
use crate::report::{fmt_real, CsvOut};
use crate::sieve::{check_modulus, MangoldtTable};
use crate::sum::Neumaier;

fn floor_arg(x: f64, limit: u64) -> Result<usize> {
    if x.is_nan() {
        return Err(Error::Argument("x is NaN".into()));
    }
    if x > limit as f64 {
        return Err(Error::OutOfRange { value: x, limit });
    }
    Ok(if x < 0.0 { 0 } else { x.floor() as usize })
}

/// `C[y] = Σ_{n≤y, n≡y (q)} Λ(n)`, so `ψ(y; q, b)` is `C` at the largest
/// `y' <= y` with `y' ≡ b`.
fn class_running(q: usize, end: usize, table: &MangoldtTable) -> Vec<f64> {
    let lambda = table.lambda_slice();
    let mut c = vec![0.0; end + 1];
    for y in 1..=end {
        c[y] = lambda[y] + if y >= q { c[y - q] } else { 0.0 };
    }
    c
}

fn psi_class(c: &[f64], y: usize, q: usize, b: usize) -> f64 {
    let back = (y + q - b) % q;
    if back > y {
        0.0
    } else {
        c[y - back]
    }
}

/// `S(x;q,a,b) = Σ_{ℓ+m≤x, ℓ≡a, m≡b (q)} Λ(ℓ)Λ(m)` for every `(a, b)`,
/// row-major in `a`.
///
/// Evaluated as `Σ_{ℓ≡a} Λ(ℓ) ψ(x-ℓ; q, b)`, one pass over the prime powers.
pub fn progression_sums(x: f64, q: u64, table: &MangoldtTable) -> Result<Vec<f64>> {
    check_modulus(q, 0)?;
    let end = floor_arg(x, table.limit())?;
    let q = q as usize;
    let c = class_running(q, end, table);
    let lambda = table.lambda_slice();
    let mut acc = vec![Neumaier::new(); q * q];
    let top = end.saturating_sub(2);
    for (l, &w) in lambda.iter().enumerate().take(top + 1).skip(2) {
        if w == 0.0 {
            continue;
        }
        let row = (l % q) * q;
        let y = end - l;
        for b in 0..q {
            let p = psi_class(&c, y, q, b);
            if p != 0.0 {
                acc[row + b].add(w * p);
            }
        }
    }
    Ok(acc.iter().map(Neumaier::value).collect())
}

/// A single entry of [`progression_sums`].
pub fn goldbach_progression_sum(
    x: f64,
    q: u64,
    a: u64,
    b: u64,
    table: &MangoldtTable,
) -> Result<f64> {
    check_modulus(q, a)?;
    check_modulus(q, b)?;
    let end = floor_arg(x, table.limit())?;
    let (qu, a, b) = (q as usize, a as usize, b as usize);
    let c = class_running(qu, end, table);
    let lambda = table.lambda_slice();
    let mut acc = Neumaier::new();
    let mut l = if a == 0 { qu } else { a };
    while l + 2 <= end {
        if lambda[l] != 0.0 {
            acc.add(lambda[l] * psi_class(&c, end - l, qu, b));
        }
        l += qu;
    }
    Ok(acc.value())
}

/// Main term `x² / (2 φ(q)²)`.
pub fn progression_main_term(x: f64, q: u64) -> f64 {
    let phi = euler_totient(q) as f64;
    x * x / (2.0 * phi * phi)
}

/// `E_{h,q}(x)` for `h = 0..q`: even `4 <= n <= x` with `g(n) = 0`, by class.
pub fn progression_exceptions(x: f64, q: u64, table: &GoldbachTable) -> Result<Vec<u64>> {
    check_modulus(q, 0)?;
    let end = floor_arg(x, table.limit())?;
    let mut counts = vec![0u64; q as usize];
    for n in (4..=end).step_by(2) {
        if table.g(n) == 0 {
            counts[n % q as usize] += 1;
        }
    }
    Ok(counts)
}

/// Residues whose exceptional count exceeds `x q^{-1} log^{-C} x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalResidues {
    pub residues: Vec<u64>,
    pub threshold: f64,
    /// `q log^{-C} x`, the expected order of `#H_q`.
    pub size_bound: f64,
}

pub fn exceptional_residues(x: f64, q: u64, c: f64, counts: &[u64]) -> Result<ExceptionalResidues> {
    if !(c > 0.0) {
        return Err(Error::Argument(format!(
            "threshold exponent C must be positive, got {c}"
        )));
    }
    if !(x > 1.0) {
        return Err(Error::Domain(format!("threshold needs x > 1, got {x}")));
    }
    let log_c = x.ln().powf(-c);
    let threshold = x / q as f64 * log_c;
    Ok(ExceptionalResidues {
        residues: counts
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e as f64 > threshold)
            .map(|(h, _)| h as u64)
            .collect(),
        threshold,
        size_bound: q as f64 * log_c,
    })
}

/// `B_{h,q}(x) = #{n <= x : n ∈ B, n ≡ h (q)}`.
pub fn generic_progression_count<B: Fn(u64) -> bool>(b: B, x: f64, q: u64, h: u64) -> u64 {
    assert!(q >= 1, "modulus must be positive");
    if x < 1.0 {
        return 0;
    }
    let end = x.floor() as u64;
    let h = h % q;
    let start = if h == 0 { q } else { h };
    (start..=end).step_by(q as usize).filter(|&n| b(n)).count() as u64
}

/// Moduli `Q < q <= 2Q` with some class of `b` holding more than
/// `x q^{-1} log^{-C} x` elements; `b` is a set of integers in `[1, x]`.
pub fn exceptional_moduli(x: f64, big_q: f64, c: f64, b: &[u64]) -> Result<Vec<u64>> {
    if !(c > 0.0) || !(x > 1.0) || !(big_q >= 1.0) {
        return Err(Error::Argument(
            "exceptional moduli need x > 1, Q >= 1, C > 0".into(),
        ));
    }
    let log_c = x.ln().powf(-c);
    let end = x.floor() as u64;
    let members: Vec<u64> = b.iter().copied().filter(|&n| n >= 1 && n <= end).collect();
    let mut out = Vec::new();
    for q in large_sieve::dyadic_range(big_q) {
        let mut counts = vec![0u64; q as usize];
        for &n in &members {
            counts[(n % q) as usize] += 1;
        }
        let worst = counts.into_iter().max().unwrap_or(0);
        if worst as f64 > x / q as f64 * log_c {
            out.push(q);
        }
    }
    Ok(out)
}

/// `max_a |ψ(x;q,a) - x/φ(q)|`, over `(a,q) = 1` when `restricted`.
pub fn delta_q(x: f64, q: u64, table: &MangoldtTable, restricted: bool) -> Result<f64> {
    let psi = table.psi_progression_all(x, q)?;
    let main = x / euler_totient(q) as f64;
    Ok(psi
        .iter()
        .enumerate()
        .filter(|&(a, _)| !restricted || gcd(a as u64, q) == 1)
        .map(|(_, &p)| (p - main).abs())
        .fold(0.0, f64::max))
}

/// `Σ_{n≤x, n≡c (q)} F(n)`.
pub fn dq_sum(x: f64, q: u64, c: u64, table: &GoldbachTable) -> Result<f64> {
    check_modulus(q, c)?;
    let end = floor_arg(x, table.limit())?;
    let f = table.f_slice();
    let mut acc = Neumaier::new();
    let mut n = c as usize;
    while n <= end {
        acc.add(f[n]);
        n += q as usize;
    }
    Ok(acc.value())
}

/// Progression statistics for one `(x, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProgressionReport {
    pub x: f64,
    pub q: u64,
    /// `S(x;q,a,b)` at index `a·q + b`.
    pub entries: Vec<f64>,
    /// `E_{h,q}(x)` at index `h`.
    pub exceptional: Vec<u64>,
    pub delta_restricted: f64,
    pub delta_unrestricted: f64,
    /// `D` sums at index `c`.
    pub dq: Vec<f64>,
}

impl ProgressionReport {
    pub fn entry(&self, a: u64, b: u64) -> f64 {
        self.entries[(a * self.q + b) as usize]
    }

    /// `S(x;q,a,b) / (x²/(2φ(q)²))` over coprime `(a, b)`.
    pub fn coprime_main_term_ratios(&self) -> Vec<((u64, u64), f64)> {
        let main = progression_main_term(self.x, self.q);
        let mut out = Vec::new();
        for a in 0..self.q {
            for b in 0..self.q {
                if gcd(a * b, self.q) == 1 {
                    out.push(((a, b), self.entry(a, b) / main));
                }
            }
        }
        out
    }
}

pub fn progression_report(
    x: f64,
    q: u64,
    mangoldt: &MangoldtTable,
    goldbach: &GoldbachTable,
) -> Result<ProgressionReport> {
    let dq = (0..q)
        .map(|c| dq_sum(x, q, c, goldbach))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProgressionReport {
        x,
        q,
        entries: progression_sums(x, q, mangoldt)?,
        exceptional: progression_exceptions(x, q, goldbach)?,
        delta_restricted: delta_q(x, q, mangoldt, true)?,
        delta_unrestricted: delta_q(x, q, mangoldt, false)?,
        dq,
    })
}

/// Long-format rows `x,q,quantity,i,j,value`. `S` rows carry `(a, b)`, `E`
/// and `D` rows carry the residue in `i`, the deltas have neither.
pub fn write_progressions_csv<W: Write>(
    reports: &[ProgressionReport],
    out: W,
) -> std::io::Result<()> {
    let mut csv = CsvOut::new(out);
    csv.header(&["x", "q", "quantity", "i", "j", "value"])?;
    for r in reports {
        let x = fmt_real(r.x);
        let q = r.q.to_string();
        for a in 0..r.q {
            for b in 0..r.q {
                csv.row(&[
                    x.clone(),
                    q.clone(),
                    "S".into(),
                    a.to_string(),
                    b.to_string(),
                    fmt_real(r.entry(a, b)),
                ])?;
            }
        }
        for (h, e) in r.exceptional.iter().enumerate() {
            csv.row(&[
                x.clone(),
                q.clone(),
                "E".into(),
                h.to_string(),
                String::new(),
                e.to_string(),
            ])?;
        }
        for (c, d) in r.dq.iter().enumerate() {
            csv.row(&[
                x.clone(),
                q.clone(),
                "D".into(),
                c.to_string(),
                String::new(),
                fmt_real(*d),
            ])?;
        }
        csv.row(&[
            x.clone(),
            q.clone(),
            "delta_restricted".into(),
            String::new(),
            String::new(),
            fmt_real(r.delta_restricted),
        ])?;
        csv.row(&[
            x,
            q,
            "delta_all".into(),
            String::new(),
            String::new(),
            fmt_real(r.delta_unrestricted),
        ])?;
    }
    csv.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldbach::{goldbach_convolution, goldbach_direct, summarize};
    use crate::sieve::build_mangoldt_table;

    fn brute(x: usize, q: usize, a: usize, b: usize, t: &MangoldtTable) -> f64 {
        let mut s = 0.0;
        for l in 1..=x {
            for m in 1..=x - l {
                if l % q == a && m % q == b {
                    s += t.lambda(l) * t.lambda(m);
                }
            }
        }
        s
    }

    #[test]
    fn progression_sum_matches_brute_force() {
        let t = build_mangoldt_table(1_000).unwrap();
        let s = goldbach_progression_sum(1_000.0, 3, 1, 1, &t).unwrap();
        let want = brute(1_000, 3, 1, 1, &t);
        assert!((s - want).abs() <= 1e-9 * want);
        let grid = progression_sums(300.5, 4, &t).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let want = brute(300, 4, a, b, &t);
                assert!((grid[a * 4 + b] - want).abs() <= 1e-9 * want.max(1.0));
                let single = goldbach_progression_sum(300.5, 4, a as u64, b as u64, &t).unwrap();
                assert!((single - grid[a * 4 + b]).abs() <= 1e-9 * want.max(1.0));
            }
        }
        assert!(goldbach_progression_sum(10.0, 3, 3, 1, &t).is_err());
        assert!(progression_sums(2_000.0, 3, &t).is_err());
    }

    #[test]
    fn trivial_modulus_is_the_goldbach_sum() {
        let t = build_mangoldt_table(5_000).unwrap();
        let g = goldbach_direct(5_000, &t).unwrap();
        let s = summarize(&g, &[5_000]).unwrap().s[0];
        let one = goldbach_progression_sum(5_000.0, 1, 0, 0, &t).unwrap();
        assert!((one - s).abs() <= 1e-12 * s);
        for q in [2, 7, 30] {
            let total: f64 = progression_sums(5_000.0, q, &t).unwrap().iter().sum();
            assert!((total - s).abs() <= 1e-12 * s, "q={q}");
        }
    }

    #[test]
    fn exceptions_examples() {
        let t = build_mangoldt_table(100_000).unwrap();
        let g = goldbach_direct(100_000, &t).unwrap();
        let e = progression_exceptions(100.0, 2, &g).unwrap();
        assert_eq!(e, vec![0, 0]);
        let e = progression_exceptions(100_000.0, 4, &g).unwrap();
        assert_eq!(e[0] + e[2], 0);
        let none = exceptional_residues(
            1e6,
            101,
            1.0,
            &progression_exceptions(1e5, 101, &g).unwrap(),
        )
        .unwrap();
        assert!(none.residues.is_empty());
        assert!((none.size_bound - 101.0 / 1e6f64.ln()).abs() < 1e-12);
        let mut counts = vec![0u64; 5];
        counts[3] = 1_000_000;
        let one = exceptional_residues(1e6, 5, 1.0, &counts).unwrap();
        assert_eq!(one.residues, vec![3]);
        assert!(exceptional_residues(1e6, 5, 0.0, &counts).is_err());
    }

    #[test]
    fn generic_counts() {
        let t = build_mangoldt_table(100).unwrap();
        assert_eq!(
            generic_progression_count(|n| t.is_prime(n as usize), 100.0, 4, 1),
            11
        );
        assert_eq!(generic_progression_count(|_| false, 100.0, 4, 1), 0);
        for (q, h) in [(1, 0), (3, 0), (3, 2), (7, 5), (10, 13)] {
            let want = (1..=100u64).filter(|n| n % q == h % q).count() as u64;
            assert_eq!(generic_progression_count(|_| true, 100.0, q, h), want);
        }
    }

    #[test]
    fn exceptional_moduli_pipeline() {
        assert!(exceptional_moduli(1e6, 500.0, 1.0, &[]).unwrap().is_empty());
        // A set concentrated in one class modulo 60 flags 60 itself.
        let b: Vec<u64> = (1..=20_000).map(|k| 60 * k).collect();
        let flagged = exceptional_moduli(1.2e6, 32.0, 1.0, &b).unwrap();
        assert!(flagged.contains(&60));
    }

    #[test]
    fn delta_examples() {
        let t = build_mangoldt_table(1_000_000).unwrap();
        let psi = t.chebyshev_psi(1e6).unwrap();
        assert!((delta_q(1e6, 1, &t, true).unwrap() - (psi - 1e6).abs()).abs() < 1e-9);
        let d = delta_q(1e6, 4, &t, true).unwrap();
        let c1 = t.psi_progression(1e6, 4, 1).unwrap();
        let c3 = t.psi_progression(1e6, 4, 3).unwrap();
        assert_eq!(d, (c1 - 5e5).abs().max((c3 - 5e5).abs()));
        assert!(d < 0.01 * 5e5);
        for q in [3, 10, 97] {
            let all = delta_q(1e6, q, &t, false).unwrap();
            assert!(all >= delta_q(1e6, q, &t, true).unwrap());
            assert!(all <= psi + 1e6 / euler_totient(q) as f64);
        }
    }

    #[test]
    fn dq_examples_and_partition() {
        let t = build_mangoldt_table(20_000).unwrap();
        let g = goldbach_direct(20_000, &t).unwrap();
        let total = summarize(&g, &[20_000]).unwrap().sum_f[0];
        assert!((dq_sum(2e4, 1, 0, &g).unwrap() - total).abs() < 1e-6);
        for q in [2, 3, 7, 12] {
            let parts: f64 = (0..q).map(|c| dq_sum(2e4, q, c, &g).unwrap()).sum();
            assert!((parts - total).abs() <= 1e-9 * total.abs().max(1.0));
        }
    }

    #[test]
    fn dq_corridor_across_decades() {
        let t = build_mangoldt_table(1_000_000).unwrap();
        let g = goldbach_convolution(1_000_000, &t).unwrap();
        for x in [1e4, 1e5, 1e6] {
            let d = dq_sum(x, 3, 2, &g).unwrap();
            assert!(d.abs() / x.powf(1.5) < 5.0, "x={x}: {d}");
        }
    }

    #[test]
    fn report_and_csv() {
        let t = build_mangoldt_table(2_000).unwrap();
        let g = goldbach_direct(2_000, &t).unwrap();
        let r = progression_report(2_000.0, 3, &t, &g).unwrap();
        assert_eq!(r.entries.len(), 9);
        assert_eq!(r.coprime_main_term_ratios().len(), 4);
        let mut buf = Vec::new();
        write_progressions_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 9 + 3 + 3 + 2);
    }
}
