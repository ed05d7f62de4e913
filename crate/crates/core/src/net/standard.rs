use super::{affine_interval, check_box, push_non_finite, relu, Network, UnitBounds};
use crate::error::{Error, Result};
use crate::interval::{Hyperbox, Interval};

/// Fully connected ReLU layer: `h = ReLU(W h_prev + b)`, `W` stored row per unit.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLayer {
    pub w: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

impl DenseLayer {
    pub fn width(&self) -> usize {
        self.b.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOutput {
    pub w: Vec<f64>,
    pub b: f64,
}

/// Conventional feedforward ReLU network: layer `l` only reads layer `l - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardNet {
    pub input_dim: usize,
    pub layers: Vec<DenseLayer>,
    pub output: DenseOutput,
    pub domain: Hyperbox,
    pub shifts: Vec<f64>,
}

impl StandardNet {
    pub fn from_parts(
        input_dim: usize,
        layers: Vec<DenseLayer>,
        output: DenseOutput,
        domain: Hyperbox,
    ) -> Result<Self> {
        StandardNet { input_dim, layers, output, domain, shifts: Vec::new() }.validated()
    }

    pub(crate) fn validated(self) -> Result<Self> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(self)
        } else {
            Err(Error::Structural(problems.join("; ")))
        }
    }

    /// Number of hidden layers.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn widths(&self) -> Vec<usize> {
        self.layers.iter().map(DenseLayer::width).collect()
    }

    pub fn max_width(&self) -> usize {
        self.widths().into_iter().max().unwrap_or(0)
    }

    /// Weights plus biases, output map included.
    pub fn param_count(&self) -> usize {
        let hidden: usize = self.layers.iter().map(|l| l.w.iter().map(Vec::len).sum::<usize>() + l.b.len()).sum();
        hidden + self.output.w.len() + 1
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.input_dim == 0 {
            out.push("input_dim must be positive".to_string());
        }
        let mut fan_in = self.input_dim;
        for (l, layer) in self.layers.iter().enumerate() {
            if layer.w.len() != layer.b.len() {
                out.push(format!("layer {l}: W has {} rows but b has {} entries", layer.w.len(), layer.b.len()));
            }
            if layer.b.is_empty() {
                out.push(format!("layer {l}: has no units"));
            }
            for (m, row) in layer.w.iter().enumerate() {
                if row.len() != fan_in {
                    out.push(format!("layer {l}: W row {m} has length {}, expected {fan_in}", row.len()));
                }
                push_non_finite(&mut out, row, || format!("layer {l} W row {m}"));
            }
            push_non_finite(&mut out, &layer.b, || format!("layer {l} bias"));
            fan_in = layer.b.len();
        }
        if self.output.w.len() != fan_in {
            out.push(format!("output: w has length {}, expected {fan_in}", self.output.w.len()));
        }
        push_non_finite(&mut out, &self.output.w, || "output (w)".to_string());
        push_non_finite(&mut out, &[self.output.b], || "output (b)".to_string());
        if self.domain.dim() != self.input_dim {
            out.push(format!("domain has {} dimensions, expected {}", self.domain.dim(), self.input_dim));
        }
        out.extend(self.domain.diagnostics());
        push_non_finite(&mut out, &self.shifts, || "shift metadata".to_string());
        out
    }

    pub fn interval_bounds(&self, b: &Hyperbox) -> Result<UnitBounds> {
        check_box(self.input_dim, b)?;
        let mut layers: Vec<Vec<Interval>> = Vec::with_capacity(self.layers.len());
        for (l, layer) in self.layers.iter().enumerate() {
            let cur: Vec<Interval> = if l == 0 {
                layer.w.iter().zip(&layer.b).map(|(row, bias)| affine_interval(*bias, row, b)).collect()
            } else {
                let prev: Vec<Interval> = layers[l - 1].iter().map(Interval::relu).collect();
                layer.w.iter().zip(&layer.b).map(|(row, bias)| dense_interval(*bias, row, &prev)).collect()
            };
            layers.push(cur);
        }
        let output = match layers.last() {
            None => affine_interval(self.output.b, &self.output.w, b),
            Some(last) => {
                let prev: Vec<Interval> = last.iter().map(Interval::relu).collect();
                dense_interval(self.output.b, &self.output.w, &prev)
            }
        };
        Ok(UnitBounds { layers, output })
    }
}

fn dense_interval(bias: f64, row: &[f64], prev: &[Interval]) -> Interval {
    let mut acc = Interval::point(bias);
    for (w, p) in row.iter().zip(prev) {
        if *w != 0.0 {
            acc = acc.add(&p.scale(*w));
        }
    }
    acc
}

#[inline]
fn dense_pre(bias: f64, row: &[f64], input: &[f64]) -> f64 {
    let mut s = bias;
    for (w, v) in row.iter().zip(input) {
        if *w != 0.0 {
            s += w * v;
        }
    }
    s
}

impl Network for StandardNet {
    fn input_dim(&self) -> usize {
        self.input_dim
    }

    fn domain(&self) -> &Hyperbox {
        &self.domain
    }

    fn forward(&self, x: &[f64]) -> f64 {
        let mut cur: Vec<f64> = x.to_vec();
        let mut next: Vec<f64> = Vec::new();
        for layer in &self.layers {
            next.clear();
            next.extend(layer.w.iter().zip(&layer.b).map(|(row, bias)| relu(dense_pre(*bias, row, &cur))));
            std::mem::swap(&mut cur, &mut next);
        }
        dense_pre(self.output.b, &self.output.w, &cur)
    }
}
