//! Small integer helpers shared by the group modules.

use crate::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NonOddPrime(p));
    }
    Ok(())
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// `base^exp` for parameters validated to be small.
pub fn pow(base: u64, exp: u32) -> u64 {
    checked_pow(base, exp).expect("power overflows u64")
}

/// Returns `e` with `n = p^e`, if `n` is a power of `p` (including `p^0 = 1`).
pub fn log_exact(p: u64, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(p: u64, mut n: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(require_odd_prime(2), Err(Error::NonOddPrime(2)));
        assert_eq!(require_odd_prime(9), Err(Error::NonOddPrime(9)));
        assert!(require_odd_prime(7).is_ok());
    }

    #[test]
    fn logs_and_valuations() {
        assert_eq!(log_exact(3, 1), Some(0));
        assert_eq!(log_exact(3, 81), Some(4));
        assert_eq!(log_exact(3, 18), None);
        assert_eq!(log_exact(3, 0), None);
        assert_eq!(valuation(3, 54), 3);
    }

    #[test]
    fn inverses() {
        for m in [9u64, 27, 125] {
            for a in 1..m {
                match mod_inverse(a, m) {
                    Some(b) => assert_eq!(a * b % m, 1),
                    None => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }
}
