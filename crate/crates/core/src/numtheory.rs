//! Small integer helpers used by the cyclotomic arithmetic and the
//! quantum-operator decomposition.

use num::integer::Integer;

/// Euler's totient.
pub fn euler_phi(n: usize) -> usize {
    assert!(n > 0, "euler_phi(0) is undefined");
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
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

/// Möbius function.
pub fn mobius(n: usize) -> i64 {
    assert!(n > 0);
    let mut m = n;
    let mut sign = 1;
    for p in prime_factors(n) {
        m /= p;
        if m.is_multiple_of(p) {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Inverse of `a` modulo `m` (`m > 1`, `gcd(a, m) = 1`).
pub fn mod_inverse(a: usize, m: usize) -> usize {
    let e = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(e.gcd, 1, "{a} is not invertible mod {m}");
    e.x.rem_euclid(m as i64) as usize
}

/// Multiplicative order of a primitive root of unity `ζ_{2q}^p`, i.e. the
/// order of `e^{iπ p/q}`.
pub fn root_order(p: i64, q: i64) -> usize {
    let m = 2 * q;
    (m / p.rem_euclid(m).gcd(&m).max(1)) as usize
}
