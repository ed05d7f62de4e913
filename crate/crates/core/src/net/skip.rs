use serde::{Deserialize, Serialize};

use super::{affine_interval, check_box, push_non_finite, relu, Network, UnitBounds};
use crate::error::{Error, Result};
use crate::interval::{Hyperbox, Interval};

/// One hidden unit: `ReLU(b + wx . x + wy . y_prev)`.
///
/// Units of the first hidden layer have an empty `wy`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkipUnit {
    pub wx: Vec<f64>,
    pub wy: Vec<f64>,
    pub b: f64,
}

impl SkipUnit {
    pub fn zero(input_dim: usize, prev_width: usize) -> Self {
        SkipUnit { wx: vec![0.0; input_dim], wy: vec![0.0; prev_width], b: 0.0 }
    }

    /// True when the unit is identically zero: no incoming weights and a non-positive bias.
    pub fn is_inert(&self) -> bool {
        self.b <= 0.0 && self.wx.iter().all(|w| *w == 0.0) && self.wy.iter().all(|w| *w == 0.0)
    }

    #[inline]
    fn pre_activation(&self, x: &[f64], prev: &[f64]) -> f64 {
        let mut s = self.b;
        for (w, v) in self.wx.iter().zip(x) {
            if *w != 0.0 {
                s += w * v;
            }
        }
        for (w, v) in self.wy.iter().zip(prev) {
            if *w != 0.0 {
                s += w * v;
            }
        }
        s
    }
}

/// Output map `a0 + a . x + sum_{l,m} beta[l][m] * y[l][m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkipOutput {
    pub a0: f64,
    pub a: Vec<f64>,
    pub beta: Vec<Vec<f64>>,
}

/// Caller-asserted range for the pre-activation of one hidden unit.
///
/// Conversions attach these to carried channels whose range is known from a
/// certificate; interval analysis intersects its propagated interval with the hint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeHint {
    pub layer: usize,
    pub unit: usize,
    pub range: Interval,
}

/// A ReLU network with skip connections from the input to every hidden layer
/// and from every hidden unit to the output.
///
/// Hidden unit semantics:
/// `y[0][m] = ReLU(affine(x))`, `y[l][m] = ReLU(affine(x, y[l-1]))`, and the
/// output is affine in `x` and all hidden units.
#[derive(Debug, Clone, PartialEq)]
pub struct SkipNet {
    pub input_dim: usize,
    pub depth: usize,
    pub width: usize,
    pub layers: Vec<Vec<SkipUnit>>,
    pub output: SkipOutput,
    pub domain: Hyperbox,
    /// Shift constants introduced by conversions, in creation order.
    pub shifts: Vec<f64>,
    pub hints: Vec<RangeHint>,
}

impl SkipNet {
    /// Assemble a net and reject it if any invariant fails.
    pub fn from_parts(
        input_dim: usize,
        width: usize,
        layers: Vec<Vec<SkipUnit>>,
        output: SkipOutput,
        domain: Hyperbox,
    ) -> Result<Self> {
        let net = SkipNet {
            input_dim,
            depth: layers.len(),
            width,
            layers,
            output,
            domain,
            shifts: Vec::new(),
            hints: Vec::new(),
        };
        net.validated()
    }

    pub(crate) fn validated(self) -> Result<Self> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(self)
        } else {
            Err(Error::Structural(problems.join("; ")))
        }
    }

    /// Depth-0 net computing `a0 + a . x`.
    pub fn affine(a0: f64, a: Vec<f64>, width: usize, domain: Hyperbox) -> Result<Self> {
        let d = a.len();
        Self::from_parts(d, width, Vec::new(), SkipOutput { a0, a, beta: Vec::new() }, domain)
    }

    /// Net with every weight and bias zero.
    pub fn zeros(input_dim: usize, depth: usize, width: usize, domain: Hyperbox) -> Result<Self> {
        let layers = (0..depth)
            .map(|l| {
                let prev = if l == 0 { 0 } else { width };
                vec![SkipUnit::zero(input_dim, prev); width]
            })
            .collect();
        let output = SkipOutput { a0: 0.0, a: vec![0.0; input_dim], beta: vec![vec![0.0; width]; depth] };
        Self::from_parts(input_dim, width, layers, output, domain)
    }

    /// Every violated invariant as a human-readable line. Empty means well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = self.input_dim;
        if d == 0 {
            out.push("input_dim must be positive".to_string());
        }
        if self.layers.len() != self.depth {
            out.push(format!(
                "layer count {} does not match depth {} (first layer plus {} hidden layers)",
                self.layers.len(),
                self.depth,
                self.layers.len().saturating_sub(1)
            ));
        }
        for (l, layer) in self.layers.iter().enumerate() {
            if layer.len() != self.width {
                out.push(format!("layer {l}: has {} units, width is {}", layer.len(), self.width));
            }
            let prev = if l == 0 { 0 } else { self.width };
            for (m, u) in layer.iter().enumerate() {
                if u.wx.len() != d {
                    out.push(format!("layer {l} unit {m}: wx has length {}, expected {d}", u.wx.len()));
                }
                if u.wy.len() != prev {
                    out.push(format!("layer {l} unit {m}: wy has length {}, expected {prev}", u.wy.len()));
                }
                push_non_finite(&mut out, &u.wx, || format!("layer {l} unit {m} (wx)"));
                push_non_finite(&mut out, &u.wy, || format!("layer {l} unit {m} (wy)"));
                push_non_finite(&mut out, &[u.b], || format!("layer {l} unit {m} (bias)"));
            }
        }
        let o = &self.output;
        if o.a.len() != d {
            out.push(format!("output: a has length {}, expected {d}", o.a.len()));
        }
        if o.beta.len() != self.depth {
            out.push(format!("output: beta has {} rows, expected depth {}", o.beta.len(), self.depth));
        }
        for (l, row) in o.beta.iter().enumerate() {
            if row.len() != self.width {
                out.push(format!("output: beta row {l} has length {}, expected {}", row.len(), self.width));
            }
            push_non_finite(&mut out, row, || format!("output beta row {l}"));
        }
        push_non_finite(&mut out, &o.a, || "output (a)".to_string());
        push_non_finite(&mut out, &[o.a0], || "output (a0)".to_string());
        if self.domain.dim() != d {
            out.push(format!("domain has {} dimensions, expected {d}", self.domain.dim()));
        }
        out.extend(self.domain.diagnostics());
        push_non_finite(&mut out, &self.shifts, || "shift metadata".to_string());
        for h in &self.hints {
            if h.layer >= self.depth || h.unit >= self.width {
                out.push(format!("range hint refers to missing unit ({}, {})", h.layer, h.unit));
            }
            if !h.range.is_finite() || h.range.lo > h.range.hi {
                out.push(format!("range hint for unit ({}, {}) is malformed", h.layer, h.unit));
            }
        }
        out
    }

    /// Hidden activations of every layer at `x` (unchecked).
    pub fn activations(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut acts: Vec<Vec<f64>> = Vec::with_capacity(self.depth);
        for layer in &self.layers {
            let prev: &[f64] = acts.last().map(Vec::as_slice).unwrap_or(&[]);
            let cur = layer.iter().map(|u| relu(u.pre_activation(x, prev))).collect();
            acts.push(cur);
        }
        acts
    }

    /// Conservative pre-activation intervals for every unit and the output over `b`.
    pub fn interval_bounds(&self, b: &Hyperbox) -> Result<UnitBounds> {
        check_box(self.input_dim, b)?;
        let mut hint_at: Vec<Vec<Option<Interval>>> = vec![vec![None; self.width]; self.depth];
        for h in &self.hints {
            if h.layer < self.depth && h.unit < self.width {
                hint_at[h.layer][h.unit] = Some(h.range);
            }
        }
        let mut layers: Vec<Vec<Interval>> = Vec::with_capacity(self.depth);
        let mut out = affine_interval(self.output.a0, &self.output.a, b);
        for (l, layer) in self.layers.iter().enumerate() {
            let prev_act: Vec<Interval> =
                layers.last().map(|p| p.iter().map(Interval::relu).collect()).unwrap_or_default();
            let mut cur = Vec::with_capacity(layer.len());
            for (m, u) in layer.iter().enumerate() {
                let mut iv = affine_interval(u.b, &u.wx, b);
                for (w, p) in u.wy.iter().zip(&prev_act) {
                    if *w != 0.0 {
                        iv = iv.add(&p.scale(*w));
                    }
                }
                if let Some(h) = hint_at[l][m] {
                    iv = iv.intersect(&h);
                }
                cur.push(iv);
            }
            for (w, iv) in self.output.beta[l].iter().zip(&cur) {
                if *w != 0.0 {
                    out = out.add(&iv.relu().scale(*w));
                }
            }
            layers.push(cur);
        }
        Ok(UnitBounds { layers, output: out })
    }

    /// Layers whose units feed the output with a nonzero coefficient.
    pub fn contributing_layers(&self) -> Vec<usize> {
        (0..self.depth).filter(|&l| self.output.beta[l].iter().any(|w| *w != 0.0)).collect()
    }

    pub fn param_count(&self) -> usize {
        let hidden: usize = self.layers.iter().flatten().map(|u| u.wx.len() + u.wy.len() + 1).sum();
        hidden + 1 + self.input_dim + self.depth * self.width
    }
}

impl Network for SkipNet {
    fn input_dim(&self) -> usize {
        self.input_dim
    }

    fn domain(&self) -> &Hyperbox {
        &self.domain
    }

    fn forward(&self, x: &[f64]) -> f64 {
        let mut out = self.output.a0;
        for (w, v) in self.output.a.iter().zip(x) {
            if *w != 0.0 {
                out += w * v;
            }
        }
        let mut prev: Vec<f64> = Vec::with_capacity(self.width);
        let mut cur: Vec<f64> = Vec::with_capacity(self.width);
        for (layer, beta) in self.layers.iter().zip(&self.output.beta) {
            cur.clear();
            cur.extend(layer.iter().map(|u| relu(u.pre_activation(x, &prev))));
            for (w, y) in beta.iter().zip(&cur) {
                if *w != 0.0 {
                    out += w * y;
                }
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        out
    }
}
