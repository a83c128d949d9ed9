//! Finite abelian p-groups `C_{o_1} x ... x C_{o_k}` with elements stored as
//! dense exponent vectors.

use std::fmt;

use crate::arith::{self, log_exact};
use crate::{Error, Result};

/// Hard cap on the number of elements any enumeration will produce.
pub const MAX_ENUMERATION: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianPGroup {
    prime: u64,
    orders: Vec<u64>,
}

/// An element `a_1^{c_1} ... a_k^{c_k}`, coordinates reduced modulo the factor orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl AbelianPGroup {
    /// Builds the group, sorting the factor orders into non-increasing order.
    pub fn new(prime: u64, orders: &[u64]) -> Result<Self> {
        arith::require_odd_prime(prime)?;
        if orders.is_empty() {
            return Err(Error::BadParams("at least one cyclic factor is required".into()));
        }
        for &order in orders {
            match log_exact(prime, order) {
                Some(e) if e >= 1 => {}
                _ => return Err(Error::NotPPower { order, prime }),
            }
        }
        let mut orders = orders.to_vec();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AbelianPGroup { prime, orders })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn exponent(&self) -> u64 {
        self.orders[0]
    }

    /// `|G|`, or `None` if it does not fit in a `u64`.
    pub fn checked_order(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o))
    }

    /// `|G|`, saturating at `u64::MAX`.
    pub fn order(&self) -> u64 {
        self.checked_order().unwrap_or(u64::MAX)
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    /// The distinguished generators `a_1, ..., a_k`.
    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank())
            .map(|i| {
                let mut c = vec![0; self.rank()];
                c[i] = 1;
                Element(c)
            })
            .collect()
    }

    /// Validates coordinates that are already reduced.
    pub fn element(&self, coords: &[u64]) -> Result<Element> {
        self.check_len(coords.len())?;
        for (&value, &order) in coords.iter().zip(&self.orders) {
            if value >= order {
                return Err(Error::InvalidElement { value, order });
            }
        }
        Ok(Element(coords.to_vec()))
    }

    /// Reduces arbitrary integer coordinates into an element.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<Element> {
        self.check_len(coords.len())?;
        Ok(Element(
            coords.iter().zip(&self.orders).map(|(&c, &o)| c.rem_euclid(o as i64) as u64).collect(),
        ))
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got });
        }
        Ok(())
    }

    fn check(&self, x: &Element) -> Result<()> {
        self.check_len(x.0.len())?;
        for (&value, &order) in x.0.iter().zip(&self.orders) {
            if value >= order {
                return Err(Error::InvalidElement { value, order });
            }
        }
        Ok(())
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element(x.0.iter().zip(&y.0).zip(&self.orders).map(|((a, b), o)| (a + b) % o).collect()))
    }

    pub fn inverse(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(Element(x.0.iter().zip(&self.orders).map(|(a, o)| (o - a) % o).collect()))
    }

    pub fn pow(&self, x: &Element, k: u64) -> Result<Element> {
        self.check(x)?;
        Ok(Element(
            x.0.iter()
                .zip(&self.orders)
                .map(|(&a, &o)| ((a as u128 * k as u128) % o as u128) as u64)
                .collect(),
        ))
    }

    /// Order of `x`: the lcm over factors of `o_i / gcd(c_i, o_i)`. All of these
    /// are powers of p, so the lcm is the maximum.
    pub fn element_order(&self, x: &Element) -> Result<u64> {
        self.check(x)?;
        Ok(x.0.iter().zip(&self.orders).map(|(&c, &o)| o / arith::gcd(c, o)).max().unwrap_or(1))
    }

    /// Position of `x` in the lexicographic enumeration (first coordinate most
    /// significant).
    pub fn index_of(&self, x: &Element) -> u64 {
        x.0.iter().zip(&self.orders).fold(0, |acc, (&c, &o)| acc * o + c)
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn enumerate_elements(&self) -> Result<Vec<Element>> {
        self.enumerate_elements_limited(MAX_ENUMERATION)
    }

    pub fn enumerate_elements_limited(&self, limit: u64) -> Result<Vec<Element>> {
        let size = self.order();
        let limit = limit.min(MAX_ENUMERATION);
        if size > limit {
            return Err(Error::TooLarge { size, limit });
        }
        Ok(CoordIter::new(&self.orders).map(Element).collect())
    }
}

impl fmt::Display for AbelianPGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "C{o}")?;
        }
        Ok(())
    }
}

/// Lexicographic walk over a box `[0, r_1) x ... x [0, r_k)`.
pub(crate) struct CoordIter<'a> {
    ranges: &'a [u64],
    next: Option<Vec<u64>>,
}

impl<'a> CoordIter<'a> {
    pub(crate) fn new(ranges: &'a [u64]) -> Self {
        let next = (!ranges.contains(&0)).then(|| vec![0; ranges.len()]);
        CoordIter { ranges, next }
    }
}

impl Iterator for CoordIter<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.ranges[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c9xc9() -> AbelianPGroup {
        AbelianPGroup::new(3, &[9, 9]).unwrap()
    }

    #[test]
    fn construction_normalizes() {
        let g = c9xc9();
        assert_eq!(g.orders(), &[9, 9]);
        assert_eq!(g.exponent(), 9);
        assert_eq!(g.order(), 81);
        assert_eq!(AbelianPGroup::new(3, &[3, 27]).unwrap().orders(), &[27, 3]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(AbelianPGroup::new(2, &[4, 4]), Err(Error::NonOddPrime(2)));
        assert_eq!(AbelianPGroup::new(15, &[15]), Err(Error::NonOddPrime(15)));
        assert_eq!(AbelianPGroup::new(3, &[9, 6]), Err(Error::NotPPower { order: 6, prime: 3 }));
        assert_eq!(AbelianPGroup::new(3, &[1]), Err(Error::NotPPower { order: 1, prime: 3 }));
        assert!(matches!(AbelianPGroup::new(3, &[]), Err(Error::BadParams(_))));
    }

    #[test]
    fn multiplication() {
        let g = c9xc9();
        let e = |c: &[u64]| g.element(c).unwrap();
        assert_eq!(g.mul(&e(&[1, 0]), &e(&[0, 1])).unwrap(), e(&[1, 1]));
        assert_eq!(g.mul(&e(&[8, 0]), &e(&[1, 0])).unwrap(), e(&[0, 0]));
        assert_eq!(g.mul(&e(&[5, 7]), &e(&[5, 7])).unwrap(), e(&[1, 5]));
        let h = AbelianPGroup::new(3, &[9]).unwrap();
        assert_eq!(
            g.mul(&e(&[1, 0]), &h.element(&[1]).unwrap()),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
        assert_eq!(g.element(&[9, 0]), Err(Error::InvalidElement { value: 9, order: 9 }));
    }

    #[test]
    fn orders_of_elements() {
        let g = c9xc9();
        assert_eq!(g.element_order(&g.identity()).unwrap(), 1);
        let g = AbelianPGroup::new(3, &[27, 9]).unwrap();
        assert_eq!(g.element_order(&g.element(&[3, 3]).unwrap()).unwrap(), 9);
        assert_eq!(g.element_order(&g.element(&[1, 0]).unwrap()).unwrap(), 27);
    }

    fn order_by_repetition(g: &AbelianPGroup, x: &Element) -> u64 {
        let mut y = x.clone();
        let mut t = 1;
        while y != g.identity() {
            y = g.mul(&y, x).unwrap();
            t += 1;
        }
        t
    }

    #[test]
    fn element_order_matches_repeated_multiplication() {
        for orders in [&[3u64][..], &[9, 3], &[27, 9], &[9, 9, 9], &[3, 3, 3, 3, 3, 3], &[729]] {
            let g = AbelianPGroup::new(3, orders).unwrap();
            for x in g.enumerate_elements().unwrap() {
                let t = g.element_order(&x).unwrap();
                assert_eq!(t, order_by_repetition(&g, &x), "{x} in {g}");
                assert_eq!(g.exponent() % t, 0);
            }
        }
    }

    #[test]
    fn enumeration() {
        let g = AbelianPGroup::new(3, &[3]).unwrap();
        let all: Vec<_> =
            g.enumerate_elements().unwrap().iter().map(|x| x.coords().to_vec()).collect();
        assert_eq!(all, [[0], [1], [2]]);
        let g = AbelianPGroup::new(3, &[3, 3]).unwrap();
        let all = g.enumerate_elements().unwrap();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].coords(), &[0, 0]);
        assert_eq!(all[8].coords(), &[2, 2]);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.index_of(x), i as u64);
        }
        assert_eq!(c9xc9().enumerate_elements().unwrap().len(), 81);
    }

    #[test]
    fn enumeration_guard() {
        let g = AbelianPGroup::new(3, &[3u64.pow(8), 3u64.pow(8)]).unwrap();
        assert!(matches!(g.enumerate_elements(), Err(Error::TooLarge { .. })));
        let g = c9xc9();
        assert_eq!(g.enumerate_elements_limited(80), Err(Error::TooLarge { size: 81, limit: 80 }));
    }

    proptest! {
        #[test]
        fn group_axioms(a in proptest::collection::vec(0u64..27, 2),
                        b in proptest::collection::vec(0u64..27, 2),
                        c in proptest::collection::vec(0u64..27, 2)) {
            let g = AbelianPGroup::new(3, &[27, 9]).unwrap();
            let red = |v: &[u64]| g.element_reduced(&[v[0] as i64, v[1] as i64]).unwrap();
            let (x, y, z) = (red(&a), red(&b), red(&c));
            let xy = g.mul(&x, &y).unwrap();
            prop_assert_eq!(&xy, &g.mul(&y, &x).unwrap());
            prop_assert_eq!(
                g.mul(&xy, &z).unwrap(),
                g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap()
            );
            prop_assert_eq!(g.mul(&x, &g.identity()).unwrap(), x.clone());
            prop_assert_eq!(g.mul(&x, &g.inverse(&x).unwrap()).unwrap(), g.identity());
        }
    }
}
