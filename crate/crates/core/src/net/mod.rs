//! Network types, evaluation, structural validation and interval range analysis.
//!
//! Depth always counts hidden layers. The output affine map is not a layer, so a
//! skip net of depth `L` corresponds to a conventional network with `L + 1`
//! weight layers.

mod skip;
mod standard;

pub use skip::{RangeHint, SkipNet, SkipOutput, SkipUnit};
pub use standard::{DenseLayer, DenseOutput, StandardNet};

use crate::error::{Error, Result};
use crate::interval::{Hyperbox, Interval};

/// Anything that maps a point of `R^d` to a real number.
pub trait Network: Sync {
    fn input_dim(&self) -> usize;

    /// Domain box carried as metadata. Evaluation outside it is allowed.
    fn domain(&self) -> &Hyperbox;

    /// Forward pass without input checks. Callers must pass `input_dim` finite values.
    fn forward(&self, x: &[f64]) -> f64;

    fn eval(&self, x: &[f64]) -> Result<f64> {
        check_point(self.input_dim(), x)?;
        Ok(self.forward(x))
    }
}

/// Pre-activation intervals for every hidden unit plus the output.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitBounds {
    pub layers: Vec<Vec<Interval>>,
    pub output: Interval,
}

impl UnitBounds {
    /// Post-activation interval of a hidden unit.
    pub fn activation(&self, layer: usize, unit: usize) -> Interval {
        self.layers[layer][unit].relu()
    }
}

pub(crate) fn check_point(dim: usize, x: &[f64]) -> Result<()> {
    if x.len() != dim {
        return Err(Error::InvalidInput(format!("point has {} coordinates, network expects {dim}", x.len())));
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("coordinate {i} is not finite")));
    }
    Ok(())
}

pub(crate) fn check_box(dim: usize, b: &Hyperbox) -> Result<()> {
    if b.dim() != dim {
        return Err(Error::InvalidInput(format!("box has {} dimensions, network expects {dim}", b.dim())));
    }
    Ok(())
}

#[inline]
pub(crate) fn relu(v: f64) -> f64 {
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// Interval of `bias + sum_i w_i * box_i`.
pub(crate) fn affine_interval(bias: f64, w: &[f64], b: &Hyperbox) -> Interval {
    let mut acc = Interval::point(bias);
    for (wi, side) in w.iter().zip(b.sides()) {
        if *wi != 0.0 {
            acc = acc.add(&side.scale(*wi));
        }
    }
    acc
}

pub(crate) fn push_non_finite(out: &mut Vec<String>, values: &[f64], what: impl Fn() -> String) {
    if values.iter().any(|v| !v.is_finite()) {
        out.push(format!("non-finite weight in {}", what()));
    }
}
