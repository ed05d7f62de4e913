use crate::error::{Error, Result};
use crate::interval::dyadic_ceil;
use crate::net::{affine_interval, DenseLayer, DenseOutput, SkipNet, StandardNet};

/// Rewrite a skip net of depth `L` and width `M` as a standard net with `L`
/// hidden layers of width `M + d + 1`.
///
/// Layer layout: `M` carried units, `d` shifted input pass-through channels,
/// then one shifted accumulator holding `a0 + a . x + sum_{l' < l} beta_l' . y_l'`.
pub fn skip_to_standard(f: &SkipNet) -> Result<StandardNet> {
    if f.depth == 0 {
        return Err(Error::Structural("skip_to_standard needs at least one hidden layer".to_string()));
    }
    let bounds = f.interval_bounds(&f.domain)?;
    let (m, d) = (f.width, f.input_dim);
    let input_shift: Vec<f64> = f.domain.sides().iter().map(|s| dyadic_ceil(-s.lo)).collect();

    let mut partial = affine_interval(f.output.a0, &f.output.a, &f.domain);
    let mut lowest = partial.lo;
    for l in 0..f.depth - 1 {
        for (w, iv) in f.output.beta[l].iter().zip(&bounds.layers[l]) {
            if *w != 0.0 {
                partial = partial.add(&iv.relu().scale(*w));
            }
        }
        lowest = lowest.min(partial.lo);
    }
    if !lowest.is_finite() || bounds.layers.iter().flatten().any(|iv| !iv.is_finite()) {
        return Err(Error::Conversion("interval analysis produced an unbounded range".to_string()));
    }
    let acc_shift = dyadic_ceil(-lowest);
    let acc = m + d;

    let mut layers = Vec::with_capacity(f.depth);
    let mut first = DenseLayer { w: Vec::with_capacity(m + d + 1), b: Vec::with_capacity(m + d + 1) };
    for u in &f.layers[0] {
        first.w.push(u.wx.clone());
        first.b.push(u.b);
    }
    for (i, c) in input_shift.iter().enumerate() {
        let mut row = vec![0.0; d];
        row[i] = 1.0;
        first.w.push(row);
        first.b.push(*c);
    }
    first.w.push(f.output.a.clone());
    first.b.push(f.output.a0 + acc_shift);
    layers.push(first);

    for l in 1..f.depth {
        let mut layer = DenseLayer { w: Vec::with_capacity(m + d + 1), b: Vec::with_capacity(m + d + 1) };
        for u in &f.layers[l] {
            let mut row = vec![0.0; m + d + 1];
            row[..m].copy_from_slice(&u.wy);
            let mut b = u.b;
            for (i, w) in u.wx.iter().enumerate() {
                if *w != 0.0 {
                    row[m + i] = *w;
                    b -= w * input_shift[i];
                }
            }
            layer.w.push(row);
            layer.b.push(b);
        }
        for i in 0..d {
            let mut row = vec![0.0; m + d + 1];
            row[m + i] = 1.0;
            layer.w.push(row);
            layer.b.push(0.0);
        }
        let mut row = vec![0.0; m + d + 1];
        row[..m].copy_from_slice(&f.output.beta[l - 1]);
        row[acc] = 1.0;
        layer.w.push(row);
        layer.b.push(0.0);
        layers.push(layer);
    }

    let mut w = vec![0.0; m + d + 1];
    w[..m].copy_from_slice(&f.output.beta[f.depth - 1]);
    w[acc] = 1.0;
    let mut shifts = input_shift;
    shifts.push(acc_shift);
    StandardNet { input_dim: d, layers, output: DenseOutput { w, b: -acc_shift }, domain: f.domain.clone(), shifts }
        .validated()
}
