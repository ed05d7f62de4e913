//! Closed intervals and axis-aligned boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` used both for domains and for range analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl From<[f64; 2]> for Interval {
    fn from([lo, hi]: [f64; 2]) -> Self {
        Interval { lo, hi }
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub const fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `w * self`, flipping the endpoints for negative `w`.
    pub fn scale(&self, w: f64) -> Interval {
        if w >= 0.0 {
            Interval::new(w * self.lo, w * self.hi)
        } else {
            Interval::new(w * self.hi, w * self.lo)
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(self.lo + other.lo, self.hi + other.hi)
    }

    pub fn shift(&self, c: f64) -> Interval {
        Interval::new(self.lo + c, self.hi + c)
    }

    pub fn relu(&self) -> Interval {
        Interval::new(self.lo.max(0.0), self.hi.max(0.0))
    }

    /// Intersection; falls back to `other` when the two do not overlap.
    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Interval::new(lo, hi)
        } else {
            *other
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

/// Axis-aligned box `[lo_1, hi_1] x ... x [lo_d, hi_d]` with `lo_i < hi_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hyperbox {
    sides: Vec<Interval>,
}

impl Hyperbox {
    pub fn new(sides: Vec<Interval>) -> Result<Self> {
        let b = Hyperbox { sides };
        let problems = b.diagnostics();
        if problems.is_empty() {
            Ok(b)
        } else {
            Err(Error::InvalidInput(problems.join("; ")))
        }
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        Hyperbox { sides: vec![Interval::new(lo, hi); dim] }
    }

    /// The default domain `[-1, 1]^dim`.
    pub fn symmetric(dim: usize) -> Self {
        Self::cube(dim, -1.0, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Interval] {
        &self.sides
    }

    pub fn side(&self, i: usize) -> Interval {
        self.sides[i]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.sides.len() && self.sides.iter().zip(x).all(|(s, &v)| s.contains(v))
    }

    pub fn contains_box(&self, other: &Hyperbox) -> bool {
        other.dim() == self.dim() && self.sides.iter().zip(&other.sides).all(|(a, b)| a.contains_interval(b))
    }

    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.sides.is_empty() {
            out.push("domain has no dimensions".to_string());
        }
        for (i, s) in self.sides.iter().enumerate() {
            if !s.is_finite() {
                out.push(format!("domain side {i} has a non-finite endpoint"));
            } else if s.lo >= s.hi {
                out.push(format!("domain side {i} is empty or degenerate: [{}, {}]", s.lo, s.hi));
            }
        }
        out
    }
}

/// Smallest power of two that is `>= v`, or 0 when `v <= 0`.
///
/// Shift constants are kept dyadic so that adding and removing them is exact
/// for the dyadic weights produced by the builders.
pub fn dyadic_ceil(v: f64) -> f64 {
    if v <= 0.0 || v.is_nan() {
        return 0.0;
    }
    let mut p = 2f64.powi(v.log2().floor() as i32);
    while p < v {
        p *= 2.0;
    }
    while p / 2.0 >= v {
        p /= 2.0;
    }
    p
}
