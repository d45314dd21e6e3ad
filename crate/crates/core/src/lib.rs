//! Costas sequences, circular Costas maps between finite abelian groups,
//! direct product difference sets, and Costas polynomials over GF(q).
//!
//! Everything here is pure computation on `alloc` collections; file
//! formats, parallel drivers and the command line live in the `costas`
//! crate.

#![no_std]

extern crate alloc;

pub mod abgroup;
pub mod arith;
pub mod circmap;
pub mod classic;
pub mod cpoly;
pub mod dpds;
pub mod fqpoly;
pub mod gf;
pub mod perm;

pub use abgroup::{AbelianGroup, GroupElement};
pub use circmap::{GroupMap, MdArray};
pub use classic::CostasSequence;
pub use dpds::ProductDifferenceSet;
pub use fqpoly::{FqPolynomial, LinearizedPoly};
pub use gf::{FieldElement, FiniteField};
