//! Indecomposable permutations enumerated by their number of inversions,
//! restricted to classes avoiding classical patterns of length at most four.
//!
//! The crate bundles the correspondences between these classes and
//! partitions, fountains of coins and parallelogram polyominoes, fast
//! counting routines for every class with a known formula, and a
//! brute-force oracle that every fast path is checked against.

pub mod bijections;
pub mod counting;
pub mod error;
pub mod objects;
pub mod oracle;
pub mod perm;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use objects::{CoinSet, Composition, Fountain, ParallelogramPolyomino, Partition};
pub use perm::{InversionSymmetry, PatternSet, Permutation, SubdiagonalSequence, Symmetry};
