//! Invariants of Hibi rings of finite distributive lattices.
//!
//! A finite distributive lattice `L` is the lattice of down-sets of the poset
//! `P` of its join-irreducible elements. The Hibi ideal `I_L` has regularity
//! `|P| - rank P`; this crate computes that value and the related invariants
//! directly from `P`, recomputes them independently from the Hilbert series of
//! `K[L]`, and searches small posets for the classifications that follow.

pub mod caps;
pub mod census;
pub mod error;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod poset;

pub use caps::Caps;
pub use error::{Error, Result};
pub use lattice::Lattice;
pub use poset::{CanonicalKey, DepthFunction, HatElement, Poset};
