//! Exact computation of `SK1(ZP)`, the torsion of the Whitehead group, for odd
//! abelian p-groups and the modular metacyclic groups `M_n(p)`.
//!
//! The pipeline for both families is the same: enumerate a genetic basis
//! `S_1 = P, S_2, ..., S_k`, form the target product `T = prod N_P(S_i)/S_i`
//! (`i > 1`), collect the images of the homomorphisms `psi_h` as integer
//! relations on `T`, and read off the quotient from the Smith normal form of
//! the relation matrix.
//!
//! ```
//! use sk1_core::{AbelianPGroup, Strategy, sk1};
//!
//! let g = AbelianPGroup::new(3, &[27, 27]).unwrap();
//! let w = sk1(&g, Strategy::Representatives).unwrap();
//! assert_eq!(w.to_string(), "(C3)^8 x (C9)^2");
//! ```

pub mod abelian_group;
pub mod arith;
pub mod conjecture;
mod error;
pub mod genetic;
pub mod metacyclic;
pub mod sk1_abelian;
pub mod snf;
pub mod whitehead_rank;

pub use abelian_group::{AbelianPGroup, Element, MAX_ENUMERATION};
pub use conjecture::{predicted_decomposition, verify, ConjecturePrediction, VerifyReport};
pub use error::{Error, Result};
pub use genetic::{
    count_formula_two_gen, enumerate_cyclic_homs, genetic_basis_abelian, CyclicHom, GeneticSubgroup,
};
pub use metacyclic::{
    genetic_basis_metacyclic, psi_component, sk1_metacyclic, sk1_metacyclic_with, DeterminantRule,
    MElement, MetaGeneticSubgroup, MetacyclicGroup, SubgroupLabel,
};
pub use sk1_abelian::{relation_matrix, sk1, sk1_with_limit, RelationSet, Strategy, TargetProduct};
pub use snf::{cokernel_decomposition, smith_divisors, CyclicDecomposition, IntMatrix};
pub use whitehead_rank::{
    irrep_counts_metacyclic, irrep_counts_square_abelian, rank_metacyclic, rank_square_abelian,
    IrrepCounts,
};

/// Default bound on the group order for modes that enumerate every element.
pub const DEFAULT_MAX_ORDER: u64 = 729;
