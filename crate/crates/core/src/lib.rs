//! Exact-arithmetic laboratory for productive and summable sequences in
//! computable topological groups.
//!
//! Everything here is `no_std` with `alloc`: group values are exact (digit
//! lists, reduced rationals, finite-support permutations, truncated product
//! coordinates), analyses are pure functions over a finite horizon, and every
//! randomized procedure takes an explicit seed. Serialization, the CLI and
//! the verification suites live in the companion `prodseq` crate.
//!
//! Limits of sequences are never first-class objects: a convergence claim is
//! a [`Verdict`] carrying the horizon and tolerance it was checked at.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod concrete;
pub mod construct;
mod error;
pub mod group;
pub mod number_theory;
pub mod sequences;
mod verdict;
pub mod weights;

pub use error::GroupError;
pub use group::{Distance, Factors, GroupDescriptor, Sequence, Value};
pub use verdict::{Status, Verdict, Witness};
pub use weights::{BoundFunction, BoundTail, ExtNat, IntWeightSeq, WeightTail};

pub type Result<T, E = GroupError> = core::result::Result<T, E>;
