//! Exponential sums, Montgomery's identity and the large-sieve estimates for
//! sums over residue classes.
//!
//! All class sums are built from bucket sums `S_r = Σ_{n≡r (d)} a_n`, so a
//! rational exponential sum costs `O(N + d²)` and its phases are reduced
//! exactly modulo `d`.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{divisor_count, divisors, gcd, mobius};
use crate::report::{fmt_real, CsvOut};
use crate::sieve::MangoldtTable;
use crate::sum::{pairwise, ComplexNeumaier, Neumaier};

/// Coefficients `a_1..a_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceWindow {
    values: Vec<Complex64>,
}

impl SequenceWindow {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); n])
    }

    /// Real and imaginary parts uniform in [-1, 1).
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        Self::new(
            (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
    }

    /// `a_n = 1` if `offset + n` is prime.
    pub fn prime_indicator(n: usize, offset: usize, table: &MangoldtTable) -> Self {
        Self::from_real(
            &(1..=n)
                .map(|k| if table.is_prime(offset + k) { 1.0 } else { 0.0 })
                .collect::<Vec<_>>(),
        )
    }

    /// `a_n = Λ(n)`.
    pub fn mangoldt(n: usize, table: &MangoldtTable) -> Self {
        Self::from_real(&table.lambda_slice()[1..=n])
    }

    /// N.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Complex64 {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `Z = Σ a_n`.
    pub fn total(&self) -> Complex64 {
        let mut acc = ComplexNeumaier::new();
        for &v in &self.values {
            acc.add(v);
        }
        acc.value()
    }

    /// `Z(q, h)` for `h = 0..q`, indexed by `h`.
    pub fn class_sums(&self, q: usize) -> Vec<Complex64> {
        assert!(q >= 1, "modulus must be positive");
        let mut acc = vec![ComplexNeumaier::new(); q];
        for (i, &v) in self.values.iter().enumerate() {
            acc[(i + 1) % q].add(v);
        }
        acc.iter().map(ComplexNeumaier::value).collect()
    }

    pub fn max_abs_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max)
    }

    pub fn l2_sq(&self) -> f64 {
        pairwise(&self.values.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>())
    }
}

/// `T(α) = Σ_{n≤N} a_n e(αn)` for real α.
pub fn exponential_sum(alpha: f64, w: &SequenceWindow) -> Complex64 {
    let mut acc = ComplexNeumaier::new();
    for (i, &v) in w.values.iter().enumerate() {
        let n = (i + 1) as f64;
        // Reduce αn mod 1 before the trig call.
        let t = (alpha * n).rem_euclid(1.0);
        acc.add(v * Complex64::from_polar(1.0, TAU * t));
    }
    acc.value()
}

/// `T(b/d)` for every `b = 0..d`, from the class sums modulo `d`.
pub fn rational_exponential_sums(d: usize, w: &SequenceWindow) -> Vec<Complex64> {
    rational_sums_from_buckets(&w.class_sums(d))
}

fn rational_sums_from_buckets(buckets: &[Complex64]) -> Vec<Complex64> {
    let d = buckets.len();
    let roots: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / d as f64))
        .collect();
    (0..d)
        .map(|b| {
            let mut acc = ComplexNeumaier::new();
            for (r, &s) in buckets.iter().enumerate() {
                acc.add(s * roots[(b * r) % d]);
            }
            acc.value()
        })
        .collect()
}

/// `Σ_{0<b≤d, (b,d)=1} |T(b/d)|²`.
fn coprime_energy(d: usize, w: &SequenceWindow) -> f64 {
    let sums = rational_exponential_sums(d, w);
    let mut acc = Neumaier::new();
    for b in 1..=d {
        if gcd(b as u64, d as u64) == 1 {
            acc.add(sums[b % d].norm_sqr());
        }
    }
    acc.value()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equals,
    Leq,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Equals => "equals",
            Relation::Leq => "leq",
        })
    }
}

/// Both sides of an identity or inequality and whether it held.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    /// `|lhs - rhs| <= tolerance · max(1, |rhs|)`.
    pub fn equals(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let pass = (lhs - rhs).abs() <= tolerance * rhs.abs().max(1.0);
        Self {
            lhs,
            rhs,
            relation: Relation::Equals,
            tolerance,
            pass,
        }
    }

    /// `lhs <= rhs · (1 + tolerance)`.
    pub fn leq(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let pass = lhs <= rhs * (1.0 + tolerance);
        Self {
            lhs,
            rhs,
            relation: Relation::Leq,
            tolerance,
            pass,
        }
    }

    /// `lhs / rhs`, or 0 when both vanish.
    pub fn ratio(&self) -> f64 {
        if self.rhs == 0.0 && self.lhs == 0.0 {
            0.0
        } else {
            self.lhs / self.rhs
        }
    }
}

pub const IDENTITY_TOLERANCE: f64 = 1e-9;

/// Montgomery's formula
/// `q Σ_h |Σ_{d|q} μ(d)/d · Z(q/d, h)|² = Σ_{(a,q)=1} |T(a/q)|²`.
pub fn montgomery_identity(q: usize, w: &SequenceWindow) -> IdentityCheck {
    assert!(q >= 1, "modulus must be positive");
    let divs = divisors(q as u64);
    let parts: Vec<(f64, Vec<Complex64>)> = divs
        .iter()
        .filter_map(|&d| {
            let mu = mobius(d);
            (mu != 0).then(|| (mu as f64 / d as f64, w.class_sums(q / d as usize)))
        })
        .collect();
    let mut lhs = Neumaier::new();
    for h in 0..q {
        let mut inner = ComplexNeumaier::new();
        for (coef, sums) in &parts {
            inner.add(sums[h % sums.len()] * *coef);
        }
        lhs.add(inner.value().norm_sqr());
    }
    let lhs = q as f64 * lhs.value();
    IdentityCheck::equals(lhs, coprime_energy(q, w), IDENTITY_TOLERANCE)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T1Variant {
    /// `Σ m max_h |Z(m,h) - Z/m|²` against the `d >= 2` sum.
    Centered,
    /// `Σ m max_h |Z(m,h)|²` against the `d >= 1` sum.
    Plain,
}

impl std::fmt::Display for T1Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            T1Variant::Centered => "centered",
            T1Variant::Plain => "plain",
        })
    }
}

/// `M'_d = Σ_{t: td ∈ M} τ(td)/t`. Vanishes for `d > max(M)`.
pub fn m_prime(d: u64, moduli: &[u64]) -> f64 {
    let mut acc = Neumaier::new();
    for &m in moduli {
        if m % d == 0 {
            acc.add(divisor_count(m) as f64 / (m / d) as f64);
        }
    }
    acc.value()
}

fn normalise_moduli(moduli: &[u64]) -> Vec<u64> {
    let mut m: Vec<u64> = moduli.iter().copied().filter(|&m| m >= 1).collect();
    m.sort_unstable();
    m.dedup();
    m
}

/// The two large-sieve estimates for maxima over residue classes. The d-sum
/// on the right runs up to `max(M)`, past which every `M'_d` is zero.
pub fn t1_check(moduli: &[u64], w: &SequenceWindow, variant: T1Variant) -> IdentityCheck {
    let moduli = normalise_moduli(moduli);
    let total = w.total();
    let mut lhs = Neumaier::new();
    for &m in &moduli {
        let shift = match variant {
            T1Variant::Centered => total / m as f64,
            T1Variant::Plain => Complex64::new(0.0, 0.0),
        };
        let worst = w
            .class_sums(m as usize)
            .into_iter()
            .map(|z| (z - shift).norm_sqr())
            .fold(0.0, f64::max);
        lhs.add(m as f64 * worst);
    }
    let first = match variant {
        T1Variant::Centered => 2,
        T1Variant::Plain => 1,
    };
    let top = moduli.last().copied().unwrap_or(0);
    let mut rhs = Neumaier::new();
    for d in first..=top {
        let weight = m_prime(d, &moduli);
        if weight > 0.0 {
            rhs.add(weight * coprime_energy(d as usize, w));
        }
    }
    IdentityCheck::leq(lhs.value(), rhs.value(), IDENTITY_TOLERANCE)
}

/// Split of `Σ_{Q<m≤2Q} m max_h |Z(m,h)|²` by `τ(m)` and the two terms of
/// the bound it is compared with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct T2Report {
    pub q: f64,
    pub h: f64,
    /// Moduli with `τ(m) > H`.
    pub e1: f64,
    /// Moduli with `τ(m) <= H`.
    pub e2: f64,
    /// `(N² + Q²)(log Q / H) max|a_n|²`.
    pub term1: f64,
    /// `(N + Q²) H log Q Σ|a_n|²`.
    pub term2: f64,
}

impl T2Report {
    pub fn lhs(&self) -> f64 {
        self.e1 + self.e2
    }

    pub fn rhs(&self) -> f64 {
        self.term1 + self.term2
    }

    /// Fitted constant `(E₁ + E₂) / (term₁ + term₂)`; 0 when both vanish.
    pub fn constant(&self) -> f64 {
        if self.rhs() == 0.0 {
            0.0
        } else {
            self.lhs() / self.rhs()
        }
    }

    pub fn e1_ratio(&self) -> f64 {
        if self.term1 == 0.0 {
            0.0
        } else {
            self.e1 / self.term1
        }
    }

    pub fn e2_ratio(&self) -> f64 {
        if self.term2 == 0.0 {
            0.0
        } else {
            self.e2 / self.term2
        }
    }
}

/// Integers m with `Q < m <= 2Q`.
pub(crate) fn dyadic_range(q: f64) -> std::ops::RangeInclusive<u64> {
    (q.floor() as u64 + 1)..=((2.0 * q).floor() as u64)
}

pub fn t2_decomposition(q: f64, h: f64, w: &SequenceWindow) -> T2Report {
    assert!(q > 1.0 && h > 0.0, "t2 needs Q > 1 and H > 0");
    let mut e1 = Neumaier::new();
    let mut e2 = Neumaier::new();
    for m in dyadic_range(q) {
        let worst = w
            .class_sums(m as usize)
            .iter()
            .map(Complex64::norm_sqr)
            .fold(0.0, f64::max);
        if divisor_count(m) as f64 > h {
            e1.add(m as f64 * worst);
        } else {
            e2.add(m as f64 * worst);
        }
    }
    let n = w.len() as f64;
    let log_q = q.ln();
    T2Report {
        q,
        h,
        e1: e1.value(),
        e2: e2.value(),
        term1: (n * n + q * q) * log_q / h * w.max_abs_sq(),
        term2: (n + q * q) * h * log_q * w.l2_sq(),
    }
}

/// `Σ_{Q<q≤2Q} |Σ_{n≤x, n≡a (q)} v_n|` against `(Σ|v_n|²)^{1/2} x^{1/2} log^{3/2} x`
/// with `x = N`. The bound holds up to an implied constant, so the ratio is
/// the quantity of interest.
pub fn halasz_row_check(q: f64, a: i64, v: &SequenceWindow) -> IdentityCheck {
    let x = v.len() as f64;
    assert!((a as f64) < x, "residue a must be below x");
    let mut lhs = Neumaier::new();
    for m in dyadic_range(q) {
        let sums = v.class_sums(m as usize);
        lhs.add(sums[a.rem_euclid(m as i64) as usize].norm());
    }
    let rhs = v.l2_sq().sqrt() * x.sqrt() * x.ln().powf(1.5);
    IdentityCheck::leq(lhs.value(), rhs, 0.0)
}

/// Constant in `Σ_{q∼Q} max_h B_{h,q}(x) ≤ c · x^{3/4} B(x)^{1/4} log^{1/2} Q`
/// for one sparse set B.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ea2Fit {
    pub x: u64,
    pub q: f64,
    /// Exponent A in the density `log^{-A} x`.
    pub density_exponent: f64,
    pub count: u64,
    pub lhs: f64,
    pub shape: f64,
}

impl Ea2Fit {
    pub fn constant(&self) -> f64 {
        if self.shape == 0.0 {
            0.0
        } else {
            self.lhs / self.shape
        }
    }
}

/// `Σ_{Q<q≤2Q} max_h B_{h,q}(x)` and the shape `x^{3/4} B(x)^{1/4} log^{1/2} Q`
/// for a sorted set `b ⊆ [1, x]`.
pub fn ea2_measure(x: u64, q: f64, b: &[u64]) -> (f64, f64) {
    let members: Vec<u64> = b.iter().copied().filter(|&n| n >= 1 && n <= x).collect();
    let mut lhs = 0u64;
    for m in dyadic_range(q) {
        let mut counts = vec![0u64; m as usize];
        for &n in &members {
            counts[(n % m) as usize] += 1;
        }
        lhs += counts.into_iter().max().unwrap_or(0);
    }
    let shape = (x as f64).powf(0.75) * (members.len() as f64).powf(0.25) * q.ln().sqrt();
    (lhs as f64, shape)
}

/// Fits the constant for a random set of density `log^{-A} x`.
pub fn ea2_fit(x: u64, q: f64, density_exponent: f64, seed: u64) -> Ea2Fit {
    let p = (x as f64).ln().powf(-density_exponent).min(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b: Vec<u64> = (1..=x).filter(|_| rng.random::<f64>() < p).collect();
    let (lhs, shape) = ea2_measure(x, q, &b);
    Ea2Fit {
        x,
        q,
        density_exponent,
        count: b.len() as u64,
        lhs,
        shape,
    }
}

/// One row of a seeded verification suite.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub suite: String,
    pub seed: u64,
    pub parameters: String,
    pub check: IdentityCheck,
}

pub const SUITE_SIZE: usize = 200;
pub const SUITE_MAX_MODULUS: usize = 64;
pub const SUITE_MAX_LENGTH: usize = 512;

fn instance_rng(seed: u64, index: usize) -> (u64, ChaCha8Rng) {
    let s = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64);
    (s, ChaCha8Rng::seed_from_u64(s))
}

/// Montgomery's formula on `count` random windows, `q <= 64`, `N <= 512`.
pub fn montgomery_suite(seed: u64, count: usize) -> Vec<CheckRecord> {
    (0..count)
        .map(|i| {
            let (s, mut rng) = instance_rng(seed, i);
            let q = rng.random_range(1..=SUITE_MAX_MODULUS);
            let n = rng.random_range(1..=SUITE_MAX_LENGTH);
            let w = SequenceWindow::random(n, &mut rng);
            CheckRecord {
                suite: "montgomery".into(),
                seed: s,
                parameters: format!("q={q};N={n}"),
                check: montgomery_identity(q, &w),
            }
        })
        .collect()
}

/// Both t1 variants on `count` random windows with `M ⊆ {1..64}`.
pub fn t1_suite(seed: u64, count: usize) -> Vec<CheckRecord> {
    let mut out = Vec::with_capacity(2 * count);
    for i in 0..count {
        let (s, mut rng) = instance_rng(seed ^ 0x7431, i);
        let size = rng.random_range(1..=8);
        let moduli = normalise_moduli(
            &(0..size)
                .map(|_| rng.random_range(1..=SUITE_MAX_MODULUS as u64))
                .collect::<Vec<_>>(),
        );
        let n = rng.random_range(1..=SUITE_MAX_LENGTH);
        let w = SequenceWindow::random(n, &mut rng);
        let list = moduli
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        for variant in [T1Variant::Centered, T1Variant::Plain] {
            out.push(CheckRecord {
                suite: format!("t1_{variant}"),
                seed: s,
                parameters: format!("M={list};N={n}"),
                check: t1_check(&moduli, &w, variant),
            });
        }
    }
    out
}

/// `suite,relation,lhs,rhs,tolerance,pass,seed,parameters`.
pub fn write_checks_csv<W: Write>(records: &[CheckRecord], out: W) -> std::io::Result<()> {
    let mut csv = CsvOut::new(out);
    csv.header(&[
        "suite",
        "relation",
        "lhs",
        "rhs",
        "tolerance",
        "pass",
        "seed",
        "parameters",
    ])?;
    for r in records {
        csv.row(&[
            r.suite.clone(),
            r.check.relation.to_string(),
            fmt_real(r.check.lhs),
            fmt_real(r.check.rhs),
            fmt_real(r.check.tolerance),
            r.check.pass.to_string(),
            r.seed.to_string(),
            r.parameters.clone(),
        ])?;
    }
    csv.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_mangoldt_table;
    use proptest::prelude::*;
    use rand::Rng;

    fn window(n: usize, seed: u64) -> SequenceWindow {
        SequenceWindow::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn exponential_sum_examples() {
        let w = window(50, 1);
        assert!((exponential_sum(0.0, &w) - w.total()).norm() < 1e-12);
        let ones = SequenceWindow::from_real(&[1.0; 7]);
        // Σ_{n=1}^{7} (-1)^n = -1
        assert!((exponential_sum(0.5, &ones) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let l1: f64 = w.values().iter().map(|v| v.norm()).sum();
        for alpha in [0.1, 0.333, 1.7, -4.2] {
            assert!(exponential_sum(alpha, &w).norm() <= l1 + 1e-12);
        }
        let sums = rational_exponential_sums(7, &w);
        for (b, s) in sums.iter().enumerate() {
            assert!((exponential_sum(b as f64 / 7.0, &w) - s).norm() < 1e-10);
        }
    }

    #[test]
    fn montgomery_examples() {
        let w = window(40, 2);
        let c = montgomery_identity(1, &w);
        assert!(c.pass);
        assert!((c.lhs - w.total().norm_sqr()).abs() < 1e-10);
        assert!(montgomery_identity(6, &window(64, 3)).pass);
        let t = build_mangoldt_table(600).unwrap();
        let c = montgomery_identity(12, &SequenceWindow::prime_indicator(512, 0, &t));
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn t1_examples() {
        let w = window(128, 4);
        let c = t1_check(&[1], &w, T1Variant::Centered);
        assert!(c.lhs.abs() < 1e-20 && c.pass);
        for v in [T1Variant::Centered, T1Variant::Plain] {
            assert!(t1_check(&[2, 3, 4, 6], &w, v).pass);
            let z = t1_check(&[2, 3, 4, 6], &SequenceWindow::zeros(128), v);
            assert!(z.lhs == 0.0 && z.rhs == 0.0 && z.pass);
        }
        assert!((m_prime(2, &[2, 3, 4, 6]) - (2.0 + 3.0 / 2.0 + 4.0 / 3.0)).abs() < 1e-15);
        assert_eq!(m_prime(7, &[2, 3, 4, 6]), 0.0);
    }

    #[test]
    fn suites_pass_and_are_reproducible() {
        let a = montgomery_suite(7, 20);
        assert!(a.iter().all(|r| r.check.pass));
        assert_eq!(a, montgomery_suite(7, 20));
        let b = t1_suite(7, 20);
        assert_eq!(b.len(), 40);
        assert!(b.iter().all(|r| r.check.pass));
        let mut buf = Vec::new();
        write_checks_csv(&a, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 21);
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("montgomery,equals,"));
    }

    #[test]
    fn t2_examples() {
        let zero = t2_decomposition(16.0, 4.0, &SequenceWindow::zeros(100));
        assert_eq!(
            (zero.e1, zero.e2, zero.term1, zero.term2),
            (0.0, 0.0, 0.0, 0.0)
        );
        let w = window(300, 5);
        let r = t2_decomposition(16.0, 1e9, &w);
        assert_eq!(r.e1, 0.0);
        assert!(r.e2 > 0.0);
        let full = t2_decomposition(16.0, 0.5, &w);
        assert!((full.e1 - r.e2).abs() < 1e-9 * r.e2);
    }

    #[test]
    fn t2_constant_is_stable_on_prime_windows() {
        let t = build_mangoldt_table(2_000_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cs: Vec<f64> = (0..10)
            .map(|_| {
                let offset = rng.random_range(0..1_000_000);
                t2_decomposition(
                    64.0,
                    8.0,
                    &SequenceWindow::prime_indicator(10_000, offset, &t),
                )
                .constant()
            })
            .collect();
        let mut sorted = cs.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[5];
        assert!(
            cs.iter().all(|&c| c > 0.5 * median && c < 1.5 * median),
            "{cs:?}"
        );
    }

    #[test]
    fn halasz_examples() {
        let zero = halasz_row_check(32.0, 1, &SequenceWindow::zeros(1000));
        assert!(zero.lhs == 0.0 && zero.rhs == 0.0 && zero.pass);

        let t = build_mangoldt_table(10_000).unwrap();
        let v = SequenceWindow::mangoldt(10_000, &t);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut ratios = vec![halasz_row_check(32.0, 1, &v).ratio()];
        for _ in 0..5 {
            ratios.push(halasz_row_check(32.0, rng.random_range(1..10_000), &v).ratio());
        }
        assert!(ratios.iter().all(|&r| r < 10.0), "{ratios:?}");

        // Single nonzero entry: the row sum counts divisors of n - a in (Q, 2Q].
        let mut vals = vec![Complex64::new(0.0, 0.0); 5_000];
        vals[4_999] = Complex64::new(2.0, 0.0);
        let single = SequenceWindow::new(vals);
        let c = halasz_row_check(32.0, 7, &single);
        let count = dyadic_range(32.0).filter(|m| (5_000 - 7) % m == 0).count();
        assert!((c.lhs - 2.0 * count as f64).abs() < 1e-12);
        assert!(c.lhs <= divisor_count(5_000 - 7) as f64 * 2.0);
    }

    #[test]
    fn ea2_constant_stays_bounded() {
        for (i, a) in [1.0, 1.5, 2.0, 2.5, 3.0].into_iter().enumerate() {
            let fit = ea2_fit(100_000, 100.0, a, 17 + i as u64);
            assert!(fit.count > 0);
            assert!(fit.constant() > 0.0 && fit.constant() <= 1.0, "{fit:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn montgomery_holds(q in 1usize..40, n in 1usize..200, seed in any::<u64>()) {
            prop_assert!(montgomery_identity(q, &window(n, seed)).pass);
        }

        #[test]
        fn t1_holds(moduli in prop::collection::vec(1u64..40, 1..6), n in 1usize..200, seed in any::<u64>()) {
            let w = window(n, seed);
            prop_assert!(t1_check(&moduli, &w, T1Variant::Centered).pass);
            prop_assert!(t1_check(&moduli, &w, T1Variant::Plain).pass);
        }

        #[test]
        fn class_sums_partition_total(q in 1usize..70, n in 0usize..150, seed in any::<u64>()) {
            let w = window(n, seed);
            let s: Complex64 = w.class_sums(q).into_iter().sum();
            prop_assert!((s - w.total()).norm() < 1e-9);
        }
    }
}
