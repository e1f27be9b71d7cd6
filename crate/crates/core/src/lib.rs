//! Partitions of the binary space `F^n` into cosets of Hamming codes.
//!
//! The crate builds trivial, searched (length 7) and Mollard-composed
//! partitions, certifies them with exact GF(2) linear algebra, and computes
//! their symmetry through isometries of `F^n`.

#![allow(clippy::mutable_key_type)] // see the `Hash` impl of `LinearCode`

pub mod app;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod mollard;
pub mod partition;
pub mod symmetry;

pub use codes::{Coset, LinearCode};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use partition::{CodePartition, UniformityReport};
