use std::sync::OnceLock;

use goldbach_lab::explicit_formula::kernel_eval;
use goldbach_lab::goldbach::{goldbach_direct, GoldbachTable};
use goldbach_lab::progressions::{dq_sum, progression_exceptions};
use goldbach_lab::sieve::{build_mangoldt_table, MangoldtTable};
use num_complex::Complex64;
use proptest::prelude::*;

const LIMIT: u64 = 20_000;

fn tables() -> &'static (MangoldtTable, GoldbachTable) {
    static T: OnceLock<(MangoldtTable, GoldbachTable)> = OnceLock::new();
    T.get_or_init(|| {
        let t = build_mangoldt_table(LIMIT).unwrap();
        let g = goldbach_direct(LIMIT, &t).unwrap();
        (t, g)
    })
}

fn mangoldt_by_trial_division(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lambda_matches_trial_division(n in 1u64..=LIMIT) {
        let (t, _) = tables();
        prop_assert_eq!(t.lambda(n as usize), mangoldt_by_trial_division(n));
    }

    #[test]
    fn weighted_count_matches_double_sum(n in 0usize..3_000) {
        let (t, g) = tables();
        let brute: f64 = (1..n).map(|l| t.lambda(l) * t.lambda(n - l)).sum();
        prop_assert!((g.big_g(n) - brute).abs() <= 1e-9 * brute.max(1.0));
        prop_assert_eq!(g.g(n), (1..n).filter(|&l| t.is_prime(l) && t.is_prime(n - l)).count() as u64);
    }

    #[test]
    fn singular_series_shape(n in 0usize..=LIMIT as usize) {
        let (_, g) = tables();
        if n % 2 == 1 {
            prop_assert_eq!(g.j(n), 0.0);
        } else if n >= 4 {
            prop_assert!(g.j(n) >= g.c2() * n as f64 * (1.0 - 1e-15));
        }
        prop_assert_eq!(g.f(n), g.big_g(n) - g.j(n));
    }

    #[test]
    fn psi_classes_partition(q in 1u64..=100, x in 0.0f64..LIMIT as f64) {
        let (t, _) = tables();
        let parts: f64 = t.psi_progression_all(x, q).unwrap().iter().sum();
        let psi = t.chebyshev_psi(x).unwrap();
        prop_assert!((parts - psi).abs() <= 1e-12 * psi.max(1.0));
    }

    #[test]
    fn residue_class_partitions(q in 1u64..=60, x in 4.0f64..LIMIT as f64) {
        let (_, g) = tables();
        let e: u64 = progression_exceptions(x, q, g).unwrap().iter().sum();
        prop_assert_eq!(e, 0);
        let total = dq_sum(x, 1, 0, g).unwrap();
        let parts: f64 = (0..q).map(|c| dq_sum(x, q, c, g).unwrap()).sum();
        prop_assert!((parts - total).abs() <= 1e-9 * total.abs().max(1.0));
    }

    #[test]
    fn kernel_closed_form_matches_direct_sum(
        r in 0.5f64..1.5,
        theta in 0.0f64..std::f64::consts::TAU,
        n in 1u64..=20,
    ) {
        let z = Complex64::from_polar(r, theta);
        prop_assume!((Complex64::new(1.0, 0.0) - z).norm() > 1e-6);
        let direct: Complex64 = (2..=n as i32 + 1).map(|k| z.powi(-k)).sum();
        let closed = kernel_eval(z, n).unwrap();
        prop_assert!((direct - closed).norm() <= 1e-12 * direct.norm().max(1.0));
    }
}
