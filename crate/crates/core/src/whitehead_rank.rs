//! Free rank of `Wh(P)` for the two families, both from closed forms and as
//! `r - q`, where `r` and `q` count irreducible real and rational
//! representations.

use crate::arith::{self, checked_pow};
use crate::{Error, Result};

/// Numbers of irreducible complex, real and rational representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IrrepCounts {
    pub complex: u64,
    pub real: u64,
    pub rational: u64,
}

impl IrrepCounts {
    /// For odd order every nontrivial complex irrep pairs with its distinct
    /// conjugate, so `r = (c + 1) / 2`.
    fn odd_order(complex: u64, rational: u64) -> Self {
        let counts = IrrepCounts { complex, real: exact_div(complex + 1, 2), rational };
        assert!(counts.rational <= counts.real && counts.real <= counts.complex, "{counts:?}");
        counts
    }

    /// `rk Wh = r - q`.
    pub fn rank(&self) -> u64 {
        self.real - self.rational
    }
}

fn exact_div(num: u64, den: u64) -> u64 {
    assert!(num % den == 0, "inexact division {num} / {den}");
    num / den
}

fn power(p: u64, e: u32) -> Result<u64> {
    checked_pow(p, e).ok_or_else(|| Error::BadParams(format!("{p}^{e} overflows")))
}

fn check_square(p: u64, n: u32) -> Result<()> {
    arith::require_odd_prime(p)?;
    if n == 0 {
        return Err(Error::BadParams("n must be at least 1".into()));
    }
    power(p, 2 * n).map(|_| ())
}

fn check_metacyclic(p: u64, n: u32) -> Result<()> {
    arith::require_odd_prime(p)?;
    if n < 3 {
        return Err(Error::BadParams(format!("M_n(p) needs n >= 3, got {n}")));
    }
    power(p, n).map(|_| ())
}

/// Counts for `C_{p^n} x C_{p^n}`.
pub fn irrep_counts_square_abelian(p: u64, n: u32) -> Result<IrrepCounts> {
    check_square(p, n)?;
    let pn = power(p, n)?;
    let c = pn * pn;
    let q = pn + 2 * exact_div(pn - 1, p - 1);
    Ok(IrrepCounts::odd_order(c, q))
}

/// `(k p^{2n} - (p+1) p^n + k + 2) / (p - 1)` with `p - 1 = 2k`.
pub fn rank_square_abelian(p: u64, n: u32) -> Result<u64> {
    check_square(p, n)?;
    let pn = power(p, n)? as u128;
    let (p, k) = (p as u128, (p as u128 - 1) / 2);
    let num = k * pn * pn + k + 2 - (p + 1) * pn;
    assert!(num % (p - 1) == 0, "inexact division {num} / {}", p - 1);
    Ok((num / (p - 1)) as u64)
}

/// Counts for `M_n(p)`.
pub fn irrep_counts_metacyclic(p: u64, n: u32) -> Result<IrrepCounts> {
    check_metacyclic(p, n)?;
    let c = power(p, n - 3)? * (p - 1) + power(p, n - 1)?;
    let q = (n as u64 - 2) * p + 3;
    Ok(IrrepCounts::odd_order(c, q))
}

/// `((p-1) p^{n-3} + p^{n-1} - 2(n-2)p - 5) / 2`.
pub fn rank_metacyclic(p: u64, n: u32) -> Result<u64> {
    check_metacyclic(p, n)?;
    let num = (p - 1) * power(p, n - 3)? + power(p, n - 1)?;
    let sub = 2 * (n as u64 - 2) * p + 5;
    Ok(exact_div(num.checked_sub(sub).expect("rank is non-negative"), 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{genetic_basis_abelian, AbelianPGroup};

    #[test]
    fn square_examples() {
        let c = |p, n| irrep_counts_square_abelian(p, n).unwrap();
        assert_eq!(c(3, 1), IrrepCounts { complex: 9, real: 5, rational: 5 });
        assert_eq!(c(3, 2), IrrepCounts { complex: 81, real: 41, rational: 17 });
        assert_eq!(c(3, 3), IrrepCounts { complex: 729, real: 365, rational: 53 });
        assert_eq!(rank_square_abelian(3, 1).unwrap(), 0);
        assert_eq!(rank_square_abelian(3, 2).unwrap(), 24);
        assert_eq!(rank_square_abelian(5, 1).unwrap(), 6);
        assert_eq!(c(5, 1).rank(), 6);
    }

    #[test]
    fn metacyclic_examples() {
        let c = |p, n| irrep_counts_metacyclic(p, n).unwrap();
        assert_eq!(c(3, 3), IrrepCounts { complex: 11, real: 6, rational: 6 });
        assert_eq!(c(3, 4), IrrepCounts { complex: 33, real: 17, rational: 9 });
        assert_eq!(c(3, 5), IrrepCounts { complex: 99, real: 50, rational: 12 });
        assert_eq!(rank_metacyclic(3, 3).unwrap(), 0);
        assert_eq!(rank_metacyclic(3, 4).unwrap(), 8);
        assert_eq!(rank_metacyclic(5, 3).unwrap(), 7);
        assert_eq!(c(5, 3).complex, 29);
    }

    #[test]
    fn formulas_agree_with_counts() {
        for p in [3, 5, 7] {
            for n in 1..=4 {
                let counts = irrep_counts_square_abelian(p, n).unwrap();
                assert_eq!(rank_square_abelian(p, n).unwrap(), counts.rank(), "p={p} n={n}");
            }
            for n in 3..=6 {
                let counts = irrep_counts_metacyclic(p, n).unwrap();
                assert_eq!(rank_metacyclic(p, n).unwrap(), counts.rank(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn complex_count_is_the_class_count() {
        // Center A_1 of size p^{n-2}; every other class has size p.
        for p in [3u64, 5] {
            for n in 3..=6u32 {
                let center = p.pow(n - 2);
                let classes = center + (p.pow(n) - center) / p;
                assert_eq!(irrep_counts_metacyclic(p, n).unwrap().complex, classes);
            }
        }
    }

    #[test]
    fn rational_count_is_the_basis_size() {
        for (p, n) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
            let pn = p.pow(n);
            let g = AbelianPGroup::new(p, &[pn, pn]).unwrap();
            let q = genetic_basis_abelian(&g).unwrap().len() as u64;
            assert_eq!(irrep_counts_square_abelian(p, n).unwrap().rational, q);
        }
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(rank_square_abelian(4, 2), Err(Error::NonOddPrime(4)));
        assert!(matches!(rank_square_abelian(3, 0), Err(Error::BadParams(_))));
        assert!(matches!(rank_metacyclic(3, 2), Err(Error::BadParams(_))));
        assert!(matches!(irrep_counts_square_abelian(3, 40), Err(Error::BadParams(_))));
    }
}
