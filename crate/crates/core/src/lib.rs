//! Epimorphisms of finite groups: fiber products, commutative squares,
//! degree-two cohomology, module duality and fundament series.
//!
//! Every group is a full multiplication table over element indices `0..n`
//! with the identity at index 0. All values are immutable once built and
//! can be shared across threads through [`alloc::sync::Arc`].

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod bitset;
pub mod cohomology;
mod error;
pub mod fprod;
pub mod fundament;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod linalg;
pub mod module;
pub mod named;
pub mod search;
pub mod squares;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{build_group, FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
pub use hom::{quotient, Cover, GroupHom};
