//! Equitable block colourings of 4-cycle systems.
//!
//! A 4-cycle system of order `v = 1 + 8k` partitions the edges of `K_v` into
//! 4-cycles. This crate builds, for every `s` dividing `k`, colourings of such
//! systems in which every vertex sees exactly `s` colours, each on exactly
//! `4k / s` of its blocks, with any total number of colours `c` between `s`
//! and `floor((2s^2 + s) / 3)`. Every construction can be rechecked by the
//! [`verifier`] module, which shares nothing with the builders beyond the
//! plain data types in [`design`].

pub mod colouring;
pub mod constructors;
pub mod decomposer;
pub mod design;
pub mod document;
mod error;
pub mod verifier;

pub use colouring::{build, spectrum_range, ConstructionCase};
pub use design::{
    canonicalize, derive_params, ColouredSystem, Colouring, Cycle4, CycleSystem, Label, Origin,
    Params,
};
pub use error::{Error, Result};
pub use verifier::{verify_all, VerificationReport};
