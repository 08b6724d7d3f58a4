//! Goldbach representation counts, singular series, explicit-formula
//! residuals and large-sieve checks.
//!
//! Everything starts from a [`MangoldtTable`]: Λ(n) and ψ for `n <= N`,
//! built once by a segmented sieve and then shared read-only.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod cli;
pub mod convolution;
pub mod error;
pub mod explicit_formula;
pub mod goldbach;
pub mod progressions;
pub mod report;
pub mod sieve;
pub mod sum;

pub use error::{Error, Result};
pub use explicit_formula::{
    fujii_residual, kernel_eval, load_zeros, major_arc_samples, oscillating_term,
    power_series_eval, psi_via_cauchy, psi_via_contour, ResidualScan, ZetaZeros,
};
pub use goldbach::{
    exceptional_set, goldbach_convolution, goldbach_direct, singular_series, summarize,
    twin_prime_constant, GoldbachTable, Method, SummarySeries, TwinPrimeConstant,
};
pub use num_complex::Complex64;
pub use progressions::{
    delta_q, dq_sum, goldbach_progression_sum, montgomery_identity, progression_exceptions,
    t1_check, IdentityCheck, ProgressionReport, SequenceWindow,
};
pub use sieve::{
    build_mangoldt_table, chebyshev_psi, euler_totient, psi_progression, MangoldtTable,
};
