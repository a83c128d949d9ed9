//! `SK1(ZG)` for an odd abelian p-group `G`, as the quotient of
//! `T = prod_{S != G} G/S` by the images of the maps `psi_h`.
//!
//! For abelian `G` the component of `psi_h(g)` at a basis member `S` is the
//! class `gS` when `h` lies in `S`, and trivial otherwise. Since each `psi_h`
//! is a homomorphism it suffices to evaluate it on the distinguished
//! generators.

use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abelian_group::{AbelianPGroup, Element};
use crate::genetic::{genetic_basis_abelian, GeneticSubgroup};
use crate::snf::{cokernel_decomposition, CyclicDecomposition, IntMatrix};
use crate::{Error, Result, DEFAULT_MAX_ORDER};

/// Which elements `h` contribute relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// One `h` per basis member: the element whose coordinates are the
    /// member's defining tuple. `psi_h` only depends on `<h>`, and these
    /// elements hit every cyclic subgroup once.
    Representatives,
    /// Every element of `G`.
    Exhaustive,
}

/// The nontrivial quotients `G/S`, in basis order.
#[derive(Debug, Clone)]
pub struct TargetProduct {
    columns: Vec<GeneticSubgroup>,
}

impl TargetProduct {
    pub fn from_basis(basis: &[GeneticSubgroup]) -> Self {
        TargetProduct { columns: basis.iter().filter(|s| !s.is_whole_group()).cloned().collect() }
    }

    pub fn columns(&self) -> &[GeneticSubgroup] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// `|G/S|` for each column.
    pub fn orders(&self) -> Vec<u64> {
        self.columns.iter().map(GeneticSubgroup::index).collect()
    }
}

/// `psi_h(gen)` as exponents with respect to each column's canonical generator.
pub fn psi_row(target: &TargetProduct, h: &Element, gen: &Element) -> Vec<u64> {
    target.columns.iter().map(|s| if s.contains(h) { s.quotient_dlog(gen) } else { 0 }).collect()
}

/// Diagonal seed rows followed by distinct nonzero `psi` rows.
#[derive(Debug, Clone)]
pub struct RelationSet {
    target: TargetProduct,
    rows: Vec<Vec<u64>>,
    seen: HashSet<Vec<u64>>,
}

impl RelationSet {
    pub fn seeded(target: TargetProduct) -> Self {
        let k = target.len();
        let rows: Vec<Vec<u64>> = target
            .orders()
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                let mut r = vec![0; k];
                r[i] = o;
                r
            })
            .collect();
        let seen = rows.iter().cloned().collect();
        RelationSet { target, rows, seen }
    }

    pub fn target(&self) -> &TargetProduct {
        &self.target
    }

    pub fn seed_rows(&self) -> usize {
        self.target.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Appends a row unless it is zero or already present.
    pub fn push(&mut self, row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.target.len());
        if row.iter().all(|&x| x == 0) || self.seen.contains(&row) {
            return false;
        }
        self.seen.insert(row.clone());
        self.rows.push(row);
        true
    }

    /// Appends `psi_h(gen)` for every distinguished generator.
    pub fn push_psi_rows(&mut self, g: &AbelianPGroup, h: &Element) {
        for gen in g.generators() {
            let row = psi_row(&self.target, h, &gen);
            self.push(row);
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::new(self.target.len());
        for r in &self.rows {
            m.push_row(r.iter().map(|&x| BigInt::from(x)).collect()).expect("row width");
        }
        m
    }

    pub fn cokernel(&self) -> Result<CyclicDecomposition> {
        cokernel_decomposition(&self.matrix())
    }
}

/// The `h` values a strategy iterates over.
pub fn strategy_elements(
    g: &AbelianPGroup,
    basis: &[GeneticSubgroup],
    strategy: Strategy,
    max_order: u64,
) -> Result<Vec<Element>> {
    match strategy {
        Strategy::Representatives => basis.iter().map(|s| g.element(s.hom().tuple())).collect(),
        Strategy::Exhaustive => {
            let size = g.order();
            if size > max_order {
                return Err(Error::TooLarge { size, limit: max_order });
            }
            g.enumerate_elements_limited(max_order)
        }
    }
}

/// Builds the relation matrix whose cokernel is `SK1(ZG)`. `max_order` bounds
/// `|G|` in exhaustive mode.
pub fn relation_matrix(
    g: &AbelianPGroup,
    basis: &[GeneticSubgroup],
    strategy: Strategy,
    max_order: u64,
) -> Result<RelationSet> {
    let target = TargetProduct::from_basis(basis);
    let hs = strategy_elements(g, basis, strategy, max_order)?;
    let gens = g.generators();
    let psi: Vec<Vec<u64>> = hs
        .par_iter()
        .flat_map_iter(|h| gens.iter().map(|gen| psi_row(&target, h, gen)).collect::<Vec<_>>())
        .collect();
    let mut rel = RelationSet::seeded(target);
    for row in psi {
        rel.push(row);
    }
    Ok(rel)
}

/// `SK1(ZG)` with the default exhaustive-mode guard.
pub fn sk1(g: &AbelianPGroup, strategy: Strategy) -> Result<CyclicDecomposition> {
    sk1_with_limit(g, strategy, DEFAULT_MAX_ORDER)
}

pub fn sk1_with_limit(
    g: &AbelianPGroup,
    strategy: Strategy,
    max_order: u64,
) -> Result<CyclicDecomposition> {
    let basis = genetic_basis_abelian(g)?;
    relation_matrix(g, &basis, strategy, max_order)?.cokernel()
}
