//! Finitely presented 2-groups, C-group checks and coset geometries.
//!
//! The pipeline concretizes a presentation by Todd–Coxeter enumeration
//! ([`enumerate`]), works with the resulting regular permutation
//! representation ([`group`]), checks the intersection property and the Tits
//! conditions ([`cgroup`]), builds the coset geometry and checks the
//! hypertope axioms on it ([`geometry`]), and strings all of it together for
//! the 2^n-order family of rank-3 hypertopes ([`families`]).

pub mod cgroup;
pub mod enumerate;
pub mod families;
pub mod geometry;
pub mod group;
pub mod perm;
pub mod presentation;
pub mod report;
pub mod words;

pub use enumerate::{
    enumerate_cosets, group_order, regular_representation, CosetTable, DEFAULT_CAPACITY,
};
pub use group::{ElemId, ElementSet, GroupError, PermGroup, Subgroup, DEFAULT_ELEMENT_CEILING};
pub use perm::Permutation;
pub use presentation::{build_paper_presentation, Family, Presentation, TheoremParams};
pub use words::{free_reduce, parse_word, Letter, Word};
