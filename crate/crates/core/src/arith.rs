//! Small exact integer helpers: primality, factorization, totient.

use alloc::vec::Vec;

/// Largest argument accepted by [`factorize`]; trial division stays under a
/// million steps below this.
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
///
/// Returns `None` above [`FACTOR_LIMIT`]. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Option<Vec<(u64, u32)>> {
    if n == 0 || n > FACTOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Some(out)
}

/// Euler's totient. `None` when `n` is zero or too large to factor.
pub fn totient(n: u64) -> Option<u64> {
    let mut phi = n;
    for (p, _) in factorize(n)? {
        phi = phi / p * (p - 1);
    }
    Some(phi)
}

/// Splits `q` as `p^m` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q)?.as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `a` modulo a prime `p`, or `None` if `a ≡ 0`.
pub fn order_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let n = p - 1;
    let mut ord = n;
    for (r, _) in factorize(n).unwrap_or_default() {
        while ord.is_multiple_of(r) && mod_pow(a, ord / r, p) == 1 {
            ord /= r;
        }
    }
    Some(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_small_values() {
        let expect = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expect.iter().enumerate() {
            let n = i as u64 + 1;
            let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(brute, e);
            assert_eq!(totient(n), Some(e));
        }
        assert_eq!(totient(124), Some(60));
        assert_eq!(totient(0), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(order_mod_prime(2, 5), Some(4));
        assert_eq!(order_mod_prime(4, 5), Some(2));
        assert_eq!(order_mod_prime(10, 5), None);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
    }
}
