//! Exact search and verification tools for projective-cube-free subsets of
//! the cyclic group `Z_{2^n}`.
//!
//! A projective `d`-cube is the set `Σ*S` of all non-empty subset sums of a
//! multiset `S` of `d` residues. A set is `d`-cube-free when it contains no
//! such cube.

pub mod construction;
pub mod counting;
pub mod detection;
pub mod error;
pub mod group;
pub mod oracle;
pub mod search;
pub mod sumset;

pub use error::{Error, Result};
pub use group::{GeneratorMultiset, GroupContext, LayerIndex, ResidueSet};
