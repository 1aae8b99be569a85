//! Fixed subcodes and T-sets of involutory permutation automorphisms of
//! binary linear codes, exact automorphism groups for short codes, and
//! exhaustive verifiers built on a census of subspaces of GF(2)^n.

pub mod aut;
pub mod census;
pub mod cli;
pub mod error;
pub mod fixed;
pub mod gf2;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
