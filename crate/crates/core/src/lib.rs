//! Exact intersection numbers and volumes of moduli spaces of flat metrics
//! on the sphere with prescribed cone angles.

pub mod cache;
pub mod charts;
pub mod closed_forms;
pub mod cyclo;
pub mod error;
pub mod partitions;
pub mod piecewise;
pub mod poly;
pub mod quadint;
pub mod recursion;
pub mod suites;
pub mod tables;
pub mod weights;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use weights::{
    canonicalize, minimal_denominator, parse_rational, weights_from_signature, PiValue, Rational, Signature,
    WeightVector,
};
