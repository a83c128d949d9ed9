//! The modular p-group `M_n(p) = <a, b | a^{p^{n-1}} = b^p = 1, b^{-1} a b = a^{p^{n-2}+1}>`,
//! its genetic basis, and `SK1(Z M_n(p))`.
//!
//! Every basis member except `B = <b>` is normal, so those columns behave as
//! in the abelian case. The `B` column lives in `N_P(B)/B = A_1B/B`, cyclic
//! of order `p^{n-2}` and generated by the class of `a^p`; its entries come
//! from determinants on the fixed points of the module induced from
//! `A_1B/B`, which are nonzero only for `h = 1` and for `h` generating a
//! conjugate of `B`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{self, pow};
use crate::snf::{cokernel_decomposition, CyclicDecomposition, IntMatrix};
use crate::{Error, Result, DEFAULT_MAX_ORDER};

/// `a^i b^j` in normal form, `i` mod `p^{n-1}` and `j` mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MElement {
    pub i: u64,
    pub j: u64,
}

impl fmt::Display for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "1"),
            (i, 0) => write!(f, "a^{i}"),
            (0, j) => write!(f, "b^{j}"),
            (i, j) => write!(f, "a^{i} b^{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetacyclicGroup {
    p: u64,
    n: u32,
    /// Order of `a`, `p^{n-1}`.
    a_order: u64,
    twist: u64,
    twist_inv: u64,
}

impl MetacyclicGroup {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        arith::require_odd_prime(p)?;
        if n < 3 {
            return Err(Error::BadParams(format!("M_n(p) needs n >= 3, got {n}")));
        }
        let a_order = arith::checked_pow(p, n - 1)
            .filter(|&m| m.checked_mul(p).is_some())
            .ok_or_else(|| Error::BadParams("p^n overflows".into()))?;
        let twist = (pow(p, n - 2) + 1) % a_order;
        let twist_inv = arith::mod_inverse(twist, a_order).expect("twist is a unit");
        let g = MetacyclicGroup { p, n, a_order, twist, twist_inv };
        if g.pow_mod(twist, p) != 1 {
            return Err(Error::BadParams("r^p != 1 mod p^{n-1}".into()));
        }
        Ok(g)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `r = p^{n-2} + 1`.
    pub fn twist(&self) -> u64 {
        self.twist
    }

    pub fn order(&self) -> u64 {
        self.a_order * self.p
    }

    fn pow_mod(&self, base: u64, mut e: u64) -> u64 {
        let m = self.a_order as u128;
        let (mut acc, mut b) = (1u128 % m, base as u128 % m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc as u64
    }

    pub fn elem(&self, i: i64, j: i64) -> MElement {
        MElement {
            i: i.rem_euclid(self.a_order as i64) as u64,
            j: j.rem_euclid(self.p as i64) as u64,
        }
    }

    pub fn identity(&self) -> MElement {
        MElement { i: 0, j: 0 }
    }

    pub fn a(&self) -> MElement {
        MElement { i: 1, j: 0 }
    }

    pub fn b(&self) -> MElement {
        MElement { i: 0, j: 1 }
    }

    /// `a^{i1} b^{j1} a^{i2} b^{j2} = a^{i1 + i2 r^{-j1}} b^{j1 + j2}`, using
    /// `b^j a b^{-j} = a^{r^{-j}}`.
    pub fn mul(&self, x: MElement, y: MElement) -> MElement {
        let m = self.a_order as u128;
        let twisted = y.i as u128 * self.pow_mod(self.twist_inv, x.j) as u128 % m;
        MElement { i: ((x.i as u128 + twisted) % m) as u64, j: (x.j + y.j) % self.p }
    }

    pub fn inverse(&self, x: MElement) -> MElement {
        // (a^i b^j)^{-1} = b^{-j} a^{-i}
        self.mul(self.elem(0, -(x.j as i64)), self.elem(-(x.i as i64), 0))
    }

    pub fn pow(&self, x: MElement, mut e: u64) -> MElement {
        let (mut acc, mut base) = (self.identity(), x);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g^{-1} x g`.
    pub fn conjugate(&self, x: MElement, g: MElement) -> MElement {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    pub fn commutes(&self, x: MElement, y: MElement) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn element_order(&self, x: MElement) -> u64 {
        let mut t = 1;
        let mut y = x;
        while y != self.identity() {
            y = self.mul(y, x);
            t += 1;
        }
        t
    }

    /// All elements, ordered by `(i, j)`.
    pub fn elements(&self) -> Vec<MElement> {
        (0..self.a_order).flat_map(|i| (0..self.p).map(move |j| MElement { i, j })).collect()
    }

    pub fn index_of(&self, x: MElement) -> usize {
        (x.i * self.p + x.j) as usize
    }

    /// `x` lies in `A_1 = <a^p>`, the center.
    pub fn in_a1(&self, x: MElement) -> bool {
        x.j == 0 && x.i % self.p == 0
    }

    /// `x` lies in `A_1 B = <a^p, b>`.
    pub fn in_a1b(&self, x: MElement) -> bool {
        x.i % self.p == 0
    }

    /// The `t` in `[0, p)` with `a^{-t} h a^t` a nontrivial element of `B`,
    /// if `<h>` is a conjugate of `B`.
    pub fn conjugating_power(&self, h: MElement) -> Option<u64> {
        if h == self.identity() || !self.in_a1b(h) {
            return None;
        }
        (0..self.p).find(|&t| {
            let c = self.conjugate(h, self.elem(t as i64, 0));
            c.i == 0 && c.j != 0
        })
    }

    /// Brute-force centralizer, in normal-form order.
    pub fn centralizer(&self, h: MElement) -> Vec<MElement> {
        self.elements().into_iter().filter(|&g| self.commutes(g, h)).collect()
    }

    /// Generators of `C_P(h)`: `{a, b}` for central `h`, `{a^p, b}` on
    /// `A_1B \ A_1`, and `{h}` outside `A_1B`.
    pub fn centralizer_generators(&self, h: MElement) -> Vec<MElement> {
        if self.in_a1(h) {
            vec![self.a(), self.b()]
        } else if self.in_a1b(h) {
            vec![self.elem(self.p as i64, 0), self.b()]
        } else {
            vec![h]
        }
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[MElement]) -> Vec<bool> {
        let mut mask = vec![false; self.order() as usize];
        let mut frontier = vec![self.identity()];
        mask[0] = true;
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                let k = self.index_of(y);
                if !mask[k] {
                    mask[k] = true;
                    frontier.push(y);
                }
            }
        }
        mask
    }
}

impl fmt::Display for MetacyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{}({})", self.n, self.p)
    }
}

/// Names of the genetic basis members: `A0 = <a>`, `Q(i, j) = <a^{j p^i} b>`,
/// `AB(i) = <a^{p^i}, b>`, `B = <b>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupLabel {
    FullGroup,
    A0,
    Q(u32, u64),
    AB(u32),
    B,
}

impl fmt::Display for SubgroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupLabel::FullGroup => write!(f, "P"),
            SubgroupLabel::A0 => write!(f, "A0"),
            SubgroupLabel::Q(i, j) => write!(f, "Q({i},{j})"),
            SubgroupLabel::AB(i) => write!(f, "A{i}B"),
            SubgroupLabel::B => write!(f, "B"),
        }
    }
}

impl SubgroupLabel {
    /// Generators written out for `M_n(p)`, e.g. `<a^6 b>` for `Q(1,2)` at `p = 3`.
    pub fn generators(&self, g: &MetacyclicGroup) -> String {
        let p = g.prime();
        let a_pow = |e: u64| {
            if e == 1 {
                "a".to_string()
            } else {
                format!("a^{e}")
            }
        };
        match *self {
            SubgroupLabel::FullGroup => "<a, b>".into(),
            SubgroupLabel::A0 => "<a>".into(),
            SubgroupLabel::Q(i, j) => format!("<{} b>", a_pow(j * p.pow(i))),
            SubgroupLabel::AB(i) => format!("<{}, b>", a_pow(p.pow(i))),
            SubgroupLabel::B => "<b>".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MetaGeneticSubgroup {
    label: SubgroupLabel,
    members: Vec<bool>,
    size: u64,
    normalizer: Vec<bool>,
    normal: bool,
    quotient_order: u64,
    quotient_generator: MElement,
    /// Exponent of `gS` w.r.t. the quotient generator, for `g` in `N_P(S)`.
    dlog: Vec<Option<u64>>,
}

impl MetaGeneticSubgroup {
    fn build(g: &MetacyclicGroup, label: SubgroupLabel) -> Self {
        let p = g.prime() as i64;
        let gens = match label {
            SubgroupLabel::FullGroup => vec![g.a(), g.b()],
            SubgroupLabel::A0 => vec![g.a()],
            SubgroupLabel::Q(i, j) => vec![g.elem(j as i64 * p.pow(i), 1)],
            SubgroupLabel::AB(i) => vec![g.elem(p.pow(i), 0), g.b()],
            SubgroupLabel::B => vec![g.b()],
        };
        let members = g.generate(&gens);
        let size = members.iter().filter(|&&m| m).count() as u64;
        let elements = g.elements();
        let normalizer: Vec<bool> = elements
            .iter()
            .map(|&x| gens.iter().all(|&s| members[g.index_of(g.conjugate(s, x))]))
            .collect();
        let normal = normalizer.iter().all(|&m| m);
        let n_size = normalizer.iter().filter(|&&m| m).count() as u64;
        let quotient_order = n_size / size;

        let coset_order = |x: MElement| {
            let mut t = 1;
            let mut y = x;
            while !members[g.index_of(y)] {
                y = g.mul(y, x);
                t += 1;
            }
            t
        };
        let quotient_generator = elements
            .iter()
            .copied()
            .filter(|&x| normalizer[g.index_of(x)])
            .find(|&x| coset_order(x) == quotient_order)
            .expect("N_P(S)/S is cyclic");
        let member_list: Vec<MElement> =
            elements.iter().copied().filter(|&x| members[g.index_of(x)]).collect();
        let mut dlog = vec![None; elements.len()];
        let mut c = g.identity();
        for y in 0..quotient_order {
            for &s in &member_list {
                dlog[g.index_of(g.mul(c, s))] = Some(y);
            }
            c = g.mul(c, quotient_generator);
        }
        MetaGeneticSubgroup {
            label,
            members,
            size,
            normalizer,
            normal,
            quotient_order,
            quotient_generator,
            dlog,
        }
    }

    pub fn label(&self) -> SubgroupLabel {
        self.label
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// `|N_P(S)/S|`.
    pub fn quotient_order(&self) -> u64 {
        self.quotient_order
    }

    /// The least element (in normal-form order) whose class generates `N_P(S)/S`.
    pub fn quotient_generator(&self) -> MElement {
        self.quotient_generator
    }

    pub fn contains(&self, g: &MetacyclicGroup, x: MElement) -> bool {
        self.members[g.index_of(x)]
    }

    pub fn normalizes(&self, g: &MetacyclicGroup, x: MElement) -> bool {
        self.normalizer[g.index_of(x)]
    }

    pub fn members(&self, g: &MetacyclicGroup) -> Vec<MElement> {
        g.elements().into_iter().filter(|&x| self.contains(g, x)).collect()
    }

    /// Exponent of `xS` in `N_P(S)/S`, for `x` in the normalizer.
    pub fn quotient_dlog(&self, g: &MetacyclicGroup, x: MElement) -> Option<u64> {
        self.dlog[g.index_of(x)]
    }
}

/// The `(n-2)p + 3` basis members in the order
/// `P, A0, Q(0,*), AB(1), Q(1,*), AB(2), ..., Q(n-3,*), AB(n-2), B`.
pub fn genetic_basis_metacyclic(g: &MetacyclicGroup) -> Vec<MetaGeneticSubgroup> {
    basis_labels(g).into_iter().map(|l| MetaGeneticSubgroup::build(g, l)).collect()
}

pub fn basis_labels(g: &MetacyclicGroup) -> Vec<SubgroupLabel> {
    let mut labels = vec![SubgroupLabel::FullGroup, SubgroupLabel::A0];
    for i in 0..=g.n() - 3 {
        labels.extend((1..g.prime()).map(|j| SubgroupLabel::Q(i, j)));
        labels.push(SubgroupLabel::AB(i + 1));
    }
    labels.push(SubgroupLabel::B);
    labels
}

/// How the `B` column of `psi_h(g)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DeterminantRule {
    /// Closed forms: `det(a) = class(a^p)`, `det(b) = class(a^p)^{(p-1)p^{n-3}}`
    /// for `h = 1`, and `g -> class(g)` on `A_1B` when `<h>` is conjugate to `B`.
    #[default]
    Tabulated,
    /// Determinants computed from the monomial action on the induced module
    /// with coset representatives `1, a, ..., a^{p-1}`.
    Induced,
}

/// Exponent of the `S` component of `psi_h(g)` in `N_P(S)/S`.
pub fn psi_component(
    g: &MetacyclicGroup,
    s: &MetaGeneticSubgroup,
    h: MElement,
    x: MElement,
    rule: DeterminantRule,
) -> Result<u64> {
    if !g.commutes(h, x) {
        return Err(Error::DomainViolation(format!("{x} does not centralize {h}")));
    }
    if s.label == SubgroupLabel::FullGroup {
        return Err(Error::DomainViolation("the whole group has no column in T".into()));
    }
    if s.normal {
        return Ok(if s.contains(g, h) { s.quotient_dlog(g, x).expect("normal") } else { 0 });
    }
    let class = |k: MElement| s.quotient_dlog(g, k).expect("element of A_1B");
    let conj = |k: MElement, t: u64| g.conjugate(k, g.elem(t as i64, 0));
    let q = s.quotient_order;
    Ok(match rule {
        DeterminantRule::Tabulated => {
            if h == g.identity() {
                let n = g.n();
                let b_det = (g.prime() - 1) * pow(g.prime(), n - 3);
                (x.i + x.j * b_det) % q
            } else if g.conjugating_power(h).is_some() {
                class(x)
            } else {
                0
            }
        }
        DeterminantRule::Induced => {
            if h == g.identity() {
                // x sends the coset a^t A_1B to a^{t + i} A_1B; the monomial
                // entry there is the class of a^{-(t+i)} x a^t. The permutation
                // is a translation of Z/p, hence even.
                let p = g.prime();
                (0..p)
                    .map(|t| {
                        let shifted = (t + x.i) % p;
                        let k = g.mul(g.mul(g.elem(-(shifted as i64), 0), x), g.elem(t as i64, 0));
                        class(k)
                    })
                    .sum::<u64>()
                    % q
            } else if let Some(t) = g.conjugating_power(h) {
                class(conj(x, t))
            } else {
                0
            }
        }
    })
}

/// Relation matrix over `T = prod_{S != P} N_P(S)/S`: diagonal seeds, then
/// `psi_h(g)` for every `h` and every generator `g` of `C_P(h)`.
pub fn metacyclic_relation_matrix(
    g: &MetacyclicGroup,
    rule: DeterminantRule,
    max_order: u64,
) -> Result<IntMatrix> {
    if g.order() > max_order {
        return Err(Error::TooLarge { size: g.order(), limit: max_order });
    }
    let basis = genetic_basis_metacyclic(g);
    let columns: Vec<&MetaGeneticSubgroup> =
        basis.iter().filter(|s| s.label != SubgroupLabel::FullGroup).collect();
    let k = columns.len();
    let psi: Vec<Vec<u64>> = g
        .elements()
        .par_iter()
        .map(|&h| -> Result<Vec<Vec<u64>>> {
            g.centralizer_generators(h)
                .into_iter()
                .map(|x| columns.iter().map(|s| psi_component(g, s, h, x, rule)).collect())
                .collect()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut m = IntMatrix::new(k);
    let mut seen = HashSet::new();
    for (i, s) in columns.iter().enumerate() {
        let mut row = vec![0u64; k];
        row[i] = s.quotient_order;
        seen.insert(row.clone());
        m.push_row(row.into_iter().map(BigInt::from).collect())?;
    }
    for row in psi {
        if row.iter().any(|&v| v != 0) && seen.insert(row.clone()) {
            m.push_row(row.into_iter().map(BigInt::from).collect())?;
        }
    }
    Ok(m)
}

/// `SK1(Z M_n(p))` with the tabulated determinants and the default size guard.
pub fn sk1_metacyclic(g: &MetacyclicGroup) -> Result<CyclicDecomposition> {
    sk1_metacyclic_with(g, DeterminantRule::Tabulated, DEFAULT_MAX_ORDER)
}

pub fn sk1_metacyclic_with(
    g: &MetacyclicGroup,
    rule: DeterminantRule,
    max_order: u64,
) -> Result<CyclicDecomposition> {
    cokernel_decomposition(&metacyclic_relation_matrix(g, rule, max_order)?)
}
