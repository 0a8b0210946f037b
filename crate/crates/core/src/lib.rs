//! sgkit: a toolkit for computing with finite semigroups.
//!
//! The crate builds finite semigroups as Cayley tables, decomposes them into
//! wreath and triple products with machine-verified division certificates,
//! computes aperiodic pointlike subsets both by a power-semigroup fixpoint
//! and by an explicit aperiodic witness construction, and decides first-order
//! separability of regular languages given as DFAs.

pub mod adjoin;
pub mod augment;
pub mod bitset;
pub mod closure;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod hom;
pub mod products;
pub mod psat;
pub mod words;
pub mod merge;
pub mod io;
pub mod random;
pub mod krd;
pub mod witness;
pub mod langsep;
pub mod selftest;
pub mod semigroup;

pub use bitset::Bitset;
pub use error::{Error, Result};
pub use hom::{DivisionWitness, FreeHom, SgHom};
pub use semigroup::Semigroup;

/// Resource limits threaded through the closure and fixpoint engines.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Maximum number of elements a closure may enumerate.
    pub closure: usize,
    /// Maximum number of members a subset family may reach.
    pub family: usize,
    /// Maximum recursion depth for the decomposition engines.
    pub depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { closure: 100_000, family: 1 << 20, depth: 64 }
    }
}
