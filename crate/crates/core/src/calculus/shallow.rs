use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{dyadic_ceil, Hyperbox, Interval};
use crate::net::{affine_interval, check_point, push_non_finite, relu, DenseLayer, DenseOutput, Network, StandardNet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    /// `sigma(z) = ReLU(z) - ReLU(z - 1)`: 0 below 0, linear on `[0, 1]`, 1 above.
    Sigmoidal,
}

impl Activation {
    #[inline]
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Relu => relu(z),
            Activation::Sigmoidal => relu(z) - relu(z - 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShallowUnit {
    pub a: Vec<f64>,
    pub b: f64,
    pub c: f64,
}

/// One hidden layer: `c0 + sum_j c_j act(a_j . x + b_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShallowNet {
    pub input_dim: usize,
    pub units: Vec<ShallowUnit>,
    pub c0: f64,
    pub activation: Activation,
    pub domain: Hyperbox,
}

impl ShallowNet {
    pub fn new(units: Vec<ShallowUnit>, c0: f64, activation: Activation, domain: Hyperbox) -> Result<Self> {
        let net = ShallowNet { input_dim: domain.dim(), units, c0, activation, domain };
        let problems = net.validate();
        if problems.is_empty() {
            Ok(net)
        } else {
            Err(Error::Structural(problems.join("; ")))
        }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.units.is_empty() {
            out.push("shallow net has no units".to_string());
        }
        if self.domain.dim() != self.input_dim {
            out.push(format!("domain has {} dimensions, expected {}", self.domain.dim(), self.input_dim));
        }
        for (j, u) in self.units.iter().enumerate() {
            if u.a.len() != self.input_dim {
                out.push(format!("unit {j}: direction has length {}, expected {}", u.a.len(), self.input_dim));
            }
            push_non_finite(&mut out, &u.a, || format!("unit {j} (a)"));
            push_non_finite(&mut out, &[u.b, u.c], || format!("unit {j} (b, c)"));
        }
        push_non_finite(&mut out, &[self.c0], || "output bias".to_string());
        out.extend(self.domain.diagnostics());
        out
    }

    fn pre(u: &ShallowUnit, x: &[f64]) -> f64 {
        let mut s = u.b;
        for (w, v) in u.a.iter().zip(x) {
            if *w != 0.0 {
                s += w * v;
            }
        }
        s
    }

    pub fn eval_checked(&self, x: &[f64]) -> Result<f64> {
        check_point(self.input_dim, x)?;
        Ok(self.forward(x))
    }
}

impl Network for ShallowNet {
    fn input_dim(&self) -> usize {
        self.input_dim
    }

    fn domain(&self) -> &Hyperbox {
        &self.domain
    }

    fn forward(&self, x: &[f64]) -> f64 {
        let mut out = self.c0;
        for u in &self.units {
            out += u.c * self.activation.apply(Self::pre(u, x));
        }
        out
    }
}

/// Ordered decomposition `n = m_1 + ... + m_L` with every `m_l >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Parameter(format!("partition parts must be positive, got {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// `layers` parts as equal as possible, larger parts first.
    pub fn even(n: usize, layers: usize) -> Result<Self> {
        if layers == 0 || layers > n {
            return Err(Error::Parameter(format!("cannot split {n} units into {layers} layers")));
        }
        let (q, r) = (n / layers, n % layers);
        Self::new((0..layers).map(|l| q + usize::from(l < r)).collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Re-layer a one-hidden-layer ReLU net into `L` hidden layers, layer `l` of
/// width `m_l + d + 1`: `d` pass-through channels, the `m_l` units assigned to
/// that layer, and an accumulator of the output of all earlier units.
pub fn wide_to_deep(s: &ShallowNet, partition: &Partition) -> Result<StandardNet> {
    if s.activation != Activation::Relu {
        return Err(Error::Structural("wide_to_deep expects ReLU units; run sigmoidal_to_relu first".to_string()));
    }
    if partition.total() != s.units.len() {
        return Err(Error::Structural(format!(
            "partition sums to {}, shallow net has {} units",
            partition.total(),
            s.units.len()
        )));
    }
    let d = s.input_dim;
    let input_shift: Vec<f64> = s.domain.sides().iter().map(|side| dyadic_ceil(-side.lo)).collect();
    let unit_range: Vec<Interval> = s.units.iter().map(|u| affine_interval(u.b, &u.a, &s.domain).relu()).collect();

    let mut groups = Vec::with_capacity(partition.parts().len());
    let mut start = 0;
    for &m in partition.parts() {
        groups.push(start..start + m);
        start += m;
    }

    let mut partial = Interval::point(s.c0);
    let mut lowest = partial.lo;
    for g in &groups[..groups.len() - 1] {
        for j in g.clone() {
            partial = partial.add(&unit_range[j].scale(s.units[j].c));
        }
        lowest = lowest.min(partial.lo);
    }
    if !lowest.is_finite() {
        return Err(Error::Conversion("accumulator range is unbounded".to_string()));
    }
    let acc_shift = dyadic_ceil(-lowest);

    let mut layers: Vec<DenseLayer> = Vec::with_capacity(groups.len());
    for (l, g) in groups.iter().enumerate() {
        let fan_in = if l == 0 { d } else { d + groups[l - 1].len() + 1 };
        let mut layer = DenseLayer { w: Vec::new(), b: Vec::new() };
        for i in 0..d {
            let mut row = vec![0.0; fan_in];
            row[i] = 1.0;
            layer.w.push(row);
            layer.b.push(if l == 0 { input_shift[i] } else { 0.0 });
        }
        for j in g.clone() {
            let u = &s.units[j];
            let mut row = vec![0.0; fan_in];
            row[..d].copy_from_slice(&u.a);
            let mut b = u.b;
            if l > 0 {
                for (w, c) in u.a.iter().zip(&input_shift) {
                    if *w != 0.0 {
                        b -= w * c;
                    }
                }
            }
            layer.w.push(row);
            layer.b.push(b);
        }
        let mut row = vec![0.0; fan_in];
        if l == 0 {
            layer.b.push(s.c0 + acc_shift);
        } else {
            for (t, j) in groups[l - 1].clone().enumerate() {
                row[d + t] = s.units[j].c;
            }
            row[fan_in - 1] = 1.0;
            layer.b.push(0.0);
        }
        layer.w.push(row);
        layers.push(layer);
    }

    let last = &groups[groups.len() - 1];
    let width = d + last.len() + 1;
    let mut w = vec![0.0; width];
    for (t, j) in last.clone().enumerate() {
        w[d + t] = s.units[j].c;
    }
    w[width - 1] = 1.0;
    let mut shifts = input_shift;
    shifts.push(acc_shift);
    StandardNet { input_dim: d, layers, output: DenseOutput { w, b: -acc_shift }, domain: s.domain.clone(), shifts }
        .validated()
}

/// Expand each sigmoidal unit `c sigma(a.x + b)` into
/// `c ReLU(a.x + b) - c ReLU(a.x + b - 1)`.
pub fn sigmoidal_to_relu(s: &ShallowNet) -> Result<ShallowNet> {
    if s.activation != Activation::Sigmoidal {
        return Err(Error::Structural("sigmoidal_to_relu expects sigmoidal units".to_string()));
    }
    let units = s
        .units
        .iter()
        .flat_map(|u| {
            [ShallowUnit { a: u.a.clone(), b: u.b, c: u.c }, ShallowUnit { a: u.a.clone(), b: u.b - 1.0, c: -u.c }]
        })
        .collect();
    ShallowNet::new(units, s.c0, Activation::Relu, s.domain.clone())
}
