//! Structural algebra on networks.
//!
//! Every operation here preserves the computed function (up to float
//! reassociation) and returns a net that passes validation.
//!
//! ReLU is not the identity on negative values, so channels that carry a signed
//! quantity through hidden layers (input pass-through, accumulators, carried
//! composition values) store `v + c` with a dyadic shift `c` chosen from
//! interval analysis so that `v + c >= 0` on the domain. Consumers subtract `c`
//! through their biases. Every such constant is appended to the net's `shifts`.

mod algebra;
mod convert;
mod params;
mod shallow;

pub use algebra::{add, clamp_output, compose, compose_with_range, pad_width, precompose_affine};
pub use convert::skip_to_standard;
pub use params::{count_params, formula_overcount};
pub use shallow::{sigmoidal_to_relu, wide_to_deep, Activation, Partition, ShallowNet, ShallowUnit};
