//! Elementary arithmetic functions on small integers, by trial division.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors of `n` in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient φ(q), with φ(1) = 1.
///
/// # Panics
/// Panics if `q == 0`.
pub fn euler_totient(q: u64) -> u64 {
    assert!(q >= 1, "euler_totient is defined for q >= 1");
    prime_factors(q)
        .into_iter()
        .fold(q, |acc, p| acc / p * (p - 1))
}

/// Möbius function μ(n) for n ≥ 1.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// Number of divisors τ(n) for n ≥ 1.
pub fn divisor_count(mut n: u64) -> u64 {
    assert!(n >= 1);
    let mut count = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        count *= e + 1;
        p += 1;
    }
    if n > 1 {
        count *= 2;
    }
    count
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Plain sieve of Eratosthenes returning the primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn totient_by_count(q: u64) -> u64 {
        (1..=q).filter(|&a| gcd(a, q) == 1).count() as u64
    }

    #[test]
    fn totient_small_values() {
        assert_eq!(euler_totient(1), 1);
        assert_eq!(euler_totient(12), 4);
        for p in primes_up_to(200) {
            assert_eq!(euler_totient(p), p - 1);
        }
        for q in 1..=500 {
            assert_eq!(euler_totient(q), totient_by_count(q), "q={q}");
        }
    }

    #[test]
    fn mobius_and_divisors() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m);
        }
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        for n in 1..300 {
            assert_eq!(divisors(n).len() as u64, divisor_count(n));
            let s: i64 = divisors(n).into_iter().map(mobius).sum();
            assert_eq!(s, i64::from(n == 1));
        }
    }
}
