//! The genetic basis of an abelian p-group: its subgroups with cyclic
//! quotient, realized as kernels of homomorphisms `G -> Z/e` where `e` is the
//! exponent of `G`.

use std::collections::HashSet;
use std::fmt;

use crate::abelian_group::{AbelianPGroup, CoordIter, Element, MAX_ENUMERATION};
use crate::arith::{self, log_exact};
use crate::{Error, Result};

/// The homomorphism `phi_s: G -> Z/e` sending the i-th generator to
/// `(e / o_i) * s_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicHom {
    tuple: Vec<u64>,
}

impl CyclicHom {
    pub fn new(tuple: Vec<u64>) -> Self {
        CyclicHom { tuple }
    }

    pub fn tuple(&self) -> &[u64] {
        &self.tuple
    }

    /// Images of the generators in `Z/e`.
    pub fn weights(&self, g: &AbelianPGroup) -> Vec<u64> {
        let e = g.exponent();
        self.tuple
            .iter()
            .zip(g.orders())
            .map(|(&s, &o)| ((e / o) as u128 * s as u128 % e as u128) as u64)
            .collect()
    }

    pub fn eval(&self, g: &AbelianPGroup, x: &Element) -> u64 {
        eval(&self.weights(g), g.exponent(), x)
    }
}

impl fmt::Display for CyclicHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuple.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn eval(weights: &[u64], modulus: u64, x: &Element) -> u64 {
    let acc = weights
        .iter()
        .zip(x.coords())
        .fold(0u128, |acc, (&w, &c)| (acc + w as u128 * c as u128) % modulus as u128);
    acc as u64
}

/// A subgroup with cyclic quotient, `S = ker(phi_s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneticSubgroup {
    hom: CyclicHom,
    weights: Vec<u64>,
    modulus: u64,
    index: u64,
    step: u64,
}

impl GeneticSubgroup {
    pub fn from_hom(g: &AbelianPGroup, hom: CyclicHom) -> Result<Self> {
        if hom.tuple.len() != g.rank() {
            return Err(Error::DimensionMismatch { expected: g.rank(), got: hom.tuple.len() });
        }
        for (&value, &order) in hom.tuple.iter().zip(g.orders()) {
            if value >= order {
                return Err(Error::InvalidElement { value, order });
            }
        }
        let weights = hom.weights(g);
        let modulus = g.exponent();
        let step = weights.iter().fold(modulus, |d, &w| arith::gcd(d, w));
        Ok(GeneticSubgroup { hom, weights, modulus, index: modulus / step, step })
    }

    pub fn hom(&self) -> &CyclicHom {
        &self.hom
    }

    /// `|G/S|`, a power of p.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// The least positive element of the image of `phi_s` in `Z/e`.
    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn is_whole_group(&self) -> bool {
        self.index == 1
    }

    pub fn contains(&self, x: &Element) -> bool {
        eval(&self.weights, self.modulus, x) == 0
    }

    /// The exponent `y` in `[0, index)` with `xS = c^y` where `c` is the
    /// class mapping to `step` under `phi_s`.
    pub fn quotient_dlog(&self, x: &Element) -> u64 {
        eval(&self.weights, self.modulus, x) / self.step
    }

    /// Canonical form of `phi_s / step` up to automorphisms of `Z/index`: two
    /// subgroups are equal iff their keys are equal.
    fn kernel_key(&self) -> (u64, Vec<u64>) {
        let idx = self.index;
        let reduced: Vec<u64> = self.weights.iter().map(|&w| (w / self.step) % idx).collect();
        let unit = reduced.iter().copied().find(|&w| arith::gcd(w, idx) == 1);
        let normalized = match unit {
            Some(u) => {
                let inv = arith::mod_inverse(u, idx).expect("unit");
                reduced.iter().map(|&w| ((w as u128 * inv as u128) % idx as u128) as u64).collect()
            }
            None => vec![0; reduced.len()],
        };
        (idx, normalized)
    }
}

impl fmt::Display for GeneticSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ker{} (index {})", self.hom, self.index)
    }
}

fn hom_ranges(g: &AbelianPGroup) -> (Vec<u64>, Vec<u64>) {
    let p = g.prime();
    let e = g.exponent();
    let top = log_exact(p, e).expect("exponent is a power of p");
    let first: Vec<u64> = (0..=top).map(|x| arith::pow(p, x) % e).collect();
    let mut sizes = vec![first.len() as u64];
    sizes.extend_from_slice(&g.orders()[1..]);
    (first, sizes)
}

/// Number of tuples produced by [`enumerate_cyclic_homs`].
pub fn cyclic_hom_count(g: &AbelianPGroup) -> u64 {
    let (_, sizes) = hom_ranges(g);
    sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s)).unwrap_or(u64::MAX)
}

/// Every tuple `s` with `s_1` in `{p^x mod e : 0 <= x <= log_p e}` (in that
/// order) and `s_i` in `[0, o_i)` for `i > 1`, enumerated lexicographically
/// by position in these ranges. Every kernel of a surjection onto a cyclic
/// quotient arises, since a unit rescaling moves `s_1` onto a power of p.
pub fn enumerate_cyclic_homs(g: &AbelianPGroup) -> Result<Vec<CyclicHom>> {
    let count = cyclic_hom_count(g);
    if count > MAX_ENUMERATION {
        return Err(Error::TooLarge { size: count, limit: MAX_ENUMERATION });
    }
    let (first, sizes) = hom_ranges(g);
    Ok(CoordIter::new(&sizes)
        .map(|mut pos| {
            pos[0] = first[pos[0] as usize];
            CyclicHom::new(pos)
        })
        .collect())
}

/// One subgroup per distinct kernel, each keyed by the first tuple producing
/// it, sorted by `(index, tuple)`. The whole group comes first.
pub fn genetic_basis_abelian(g: &AbelianPGroup) -> Result<Vec<GeneticSubgroup>> {
    let mut seen: HashSet<(u64, Vec<u64>)> = HashSet::new();
    let mut basis = Vec::new();
    for hom in enumerate_cyclic_homs(g)? {
        let s = GeneticSubgroup::from_hom(g, hom)?;
        if seen.insert(s.kernel_key()) {
            basis.push(s);
        }
    }
    basis.sort_by(|a, b| (a.index, &a.hom).cmp(&(b.index, &b.hom)));
    Ok(basis)
}

/// `p^n (m - n + 1) + 2 (p^n - 1) / (p - 1)`: the size of the genetic basis
/// of `C_{p^n} x C_{p^m}`.
pub fn count_formula_two_gen(p: u64, n: u32, m: u32) -> Result<u64> {
    arith::require_odd_prime(p)?;
    if n < 1 || n > m {
        return Err(Error::BadParams(format!("need 1 <= n <= m, got n={n}, m={m}")));
    }
    let pn = arith::checked_pow(p, n).ok_or(Error::BadParams("p^n overflows".into()))?;
    let geometric = (pn - 1) / (p - 1);
    Ok(pn * u64::from(m - n + 1) + 2 * geometric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn group(orders: &[u64]) -> AbelianPGroup {
        AbelianPGroup::new(3, orders).unwrap()
    }

    fn tuples(g: &AbelianPGroup) -> Vec<Vec<u64>> {
        enumerate_cyclic_homs(g).unwrap().into_iter().map(|h| h.tuple).collect()
    }

    #[test]
    fn hom_tuples_follow_restricted_ranges() {
        let t = tuples(&group(&[3, 3]));
        assert_eq!(t, [[1, 0], [1, 1], [1, 2], [0, 0], [0, 1], [0, 2]]);
        assert_eq!(tuples(&group(&[3])), [[1], [0]]);
        let t = tuples(&group(&[9, 9]));
        assert_eq!(t.len(), 27);
        let firsts: BTreeSet<u64> = t.iter().map(|v| v[0]).collect();
        assert_eq!(firsts, BTreeSet::from([0, 1, 3]));
    }

    #[test]
    fn basis_sizes() {
        // Six hom tuples, but (0,1) and (0,2) share the kernel <a>.
        assert_eq!(genetic_basis_abelian(&group(&[3, 3])).unwrap().len(), 5);
        assert_eq!(genetic_basis_abelian(&group(&[9, 9])).unwrap().len(), 17);
        assert_eq!(genetic_basis_abelian(&group(&[27, 27])).unwrap().len(), 53);
    }

    #[test]
    fn basis_of_c3xc3_is_the_expected_list() {
        let g = group(&[3, 3]);
        let basis = genetic_basis_abelian(&g).unwrap();
        assert!(basis[0].is_whole_group());
        // Generators of the four index-3 subgroups: a, ab, a^2 b, b.
        let gens = [[1, 0], [1, 1], [2, 1], [0, 1]];
        for s in &basis[1..] {
            assert_eq!(s.index(), 3);
            let hits = gens.iter().filter(|c| s.contains(&g.element(&c[..]).unwrap())).count();
            assert_eq!(hits, 1, "{s}");
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(count_formula_two_gen(3, 2, 2).unwrap(), 17);
        assert_eq!(count_formula_two_gen(3, 1, 2).unwrap(), 8);
        assert_eq!(count_formula_two_gen(3, 3, 3).unwrap(), 53);
        assert!(matches!(count_formula_two_gen(3, 3, 2), Err(Error::BadParams(_))));
        assert!(matches!(count_formula_two_gen(3, 0, 2), Err(Error::BadParams(_))));
        assert_eq!(count_formula_two_gen(4, 1, 1), Err(Error::NonOddPrime(4)));
    }

    #[test]
    fn formula_matches_enumeration() {
        for p in [3u64, 5] {
            for m in 1..=3u32 {
                for n in 1..=m {
                    if p == 5 && m == 3 && n == 3 {
                        continue;
                    }
                    let g = AbelianPGroup::new(p, &[p.pow(m), p.pow(n)]).unwrap();
                    let basis = genetic_basis_abelian(&g).unwrap();
                    assert_eq!(
                        basis.len() as u64,
                        count_formula_two_gen(p, n, m).unwrap(),
                        "p={p} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn dlog_examples() {
        let g = group(&[3, 3]);
        let a = g.element(&[1, 0]).unwrap();
        let b = g.element(&[0, 1]).unwrap();
        let ker_b = GeneticSubgroup::from_hom(&g, CyclicHom::new(vec![1, 0])).unwrap();
        assert!(ker_b.contains(&b));
        assert_eq!(ker_b.quotient_dlog(&a), 1);
        assert_eq!(ker_b.quotient_dlog(&b), 0);
        let ker_ab = GeneticSubgroup::from_hom(&g, CyclicHom::new(vec![1, 2])).unwrap();
        assert!(ker_ab.contains(&g.element(&[1, 1]).unwrap()));
        assert_eq!(ker_ab.quotient_dlog(&b), 2);
        // b * ab = a b^2, so the class of b inverts the class of a.
        assert_eq!((ker_ab.quotient_dlog(&a) + ker_ab.quotient_dlog(&b)) % 3, 0);
    }

    fn kernel_set(g: &AbelianPGroup, s: &GeneticSubgroup) -> BTreeSet<u64> {
        g.enumerate_elements()
            .unwrap()
            .iter()
            .filter(|x| s.contains(x))
            .map(|x| g.index_of(x))
            .collect()
    }

    fn small_groups() -> Vec<AbelianPGroup> {
        let shapes: &[&[u64]] = &[
            &[3],
            &[9],
            &[27],
            &[3, 3],
            &[9, 3],
            &[9, 9],
            &[27, 3],
            &[27, 9],
            &[27, 27],
            &[81, 9],
            &[243, 3],
            &[3, 3, 3],
            &[9, 3, 3],
            &[9, 9, 9],
            &[3, 3, 3, 3, 3, 3],
        ];
        let mut out: Vec<_> = shapes.iter().map(|s| group(s)).collect();
        out.push(AbelianPGroup::new(5, &[25, 5]).unwrap());
        out.push(AbelianPGroup::new(5, &[25, 25]).unwrap());
        out
    }

    // Brute-force kernel fingerprints: two homs give the same subgroup iff their
    // kernels have identical element sets.
    #[test]
    fn kernel_dedup_is_sound() {
        for g in small_groups() {
            let all: Vec<GeneticSubgroup> = enumerate_cyclic_homs(&g)
                .unwrap()
                .into_iter()
                .map(|h| GeneticSubgroup::from_hom(&g, h).unwrap())
                .collect();
            let by_set: BTreeSet<BTreeSet<u64>> = all.iter().map(|s| kernel_set(&g, s)).collect();
            let basis = genetic_basis_abelian(&g).unwrap();
            assert_eq!(basis.len(), by_set.len(), "{g}");
            let basis_sets: BTreeSet<BTreeSet<u64>> =
                basis.iter().map(|s| kernel_set(&g, s)).collect();
            assert_eq!(basis_sets, by_set, "{g}");
            for s in &basis {
                assert_eq!(g.order() / s.index(), kernel_set(&g, s).len() as u64);
            }
        }
    }

    // Every subgroup with cyclic quotient shows up: count all subgroups with
    // cyclic quotient by duality with the cyclic subgroups.
    #[test]
    fn basis_size_equals_number_of_cyclic_subgroups() {
        for g in small_groups() {
            let elements = g.enumerate_elements().unwrap();
            let mut cyclic: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
            for x in &elements {
                let mut span = BTreeSet::new();
                let mut y = g.identity();
                loop {
                    span.insert(g.index_of(&y));
                    y = g.mul(&y, x).unwrap();
                    if y == g.identity() {
                        break;
                    }
                }
                cyclic.insert(span);
            }
            assert_eq!(genetic_basis_abelian(&g).unwrap().len(), cyclic.len(), "{g}");
        }
    }

    #[test]
    fn quotients_are_cyclic_of_the_stated_index() {
        for g in small_groups() {
            for s in genetic_basis_abelian(&g).unwrap() {
                // Some element has dlog 1, so the class it defines generates G/S.
                let elements = g.enumerate_elements().unwrap();
                let dlogs: BTreeSet<u64> = elements.iter().map(|x| s.quotient_dlog(x)).collect();
                assert_eq!(dlogs.len() as u64, s.index());
                assert_eq!(dlogs.iter().max().copied().unwrap_or(0), s.index() - 1);
            }
        }
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        let g = group(&[27, 9]);
        let elements = g.enumerate_elements().unwrap();
        for s in genetic_basis_abelian(&g).unwrap() {
            for (i, x) in elements.iter().enumerate().step_by(7) {
                let y = &elements[(i * 13 + 5) % elements.len()];
                let xy = g.mul(x, y).unwrap();
                assert_eq!(
                    s.quotient_dlog(&xy),
                    (s.quotient_dlog(x) + s.quotient_dlog(y)) % s.index()
                );
            }
        }
    }
}
