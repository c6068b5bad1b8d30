//! Subnormality variants, group classes and local formations for finite
//! permutation groups of order at most 500.
//!
//! Permutations compose left to right. Every structural question is
//! answered from a complete [`Lattice`] of subgroups.

pub mod arith;
pub mod bitset;
pub mod classes;
pub mod corpus;
pub mod error;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod oracle;
pub mod perm;
pub mod subnormal;

pub use classes::{FormationSpec, LocalFunction, Section};
pub use error::{Error, Result};
pub use group::{Homomorphism, PermGroup};
pub use lattice::{all_subgroups, ChiefSeries, Lattice, SubgroupId};
pub use perm::Permutation;
pub use subnormal::{ChainWitness, StepPolicy, StepTag};
