//! Finitely presented groups and exact integer linear algebra.

pub mod coset;
pub mod exact;
pub mod homcount;
pub mod matrix;
pub mod presentation;
pub mod schreier;

pub use coset::{probably_isomorphic, probably_isomorphic_to_group, reconstruct, IsoVerdict};
pub use exact::{abelian_injective, abelian_isomorphism, abelian_surjective, check_exact_abelian, AbelianExactness};
pub use homcount::{default_signature, default_targets, hom_count, hom_count_sequential, hom_signature};
pub use matrix::{hermite_normal_form, invariant_factors, left_kernel, smith_normal_form, HnfResult, IntMatrix, Lattice, SnfResult};
pub use presentation::{
    free_reduce, inverse_word, Abelianization, GroupPresentation, GroupWithPresentation, PresentationMap, Simplified,
    Word,
};
pub use schreier::SchreierPresentation;
