use crate::error::{Error, Result};
use crate::interval::{dyadic_ceil, Hyperbox, Interval};
use crate::net::{RangeHint, SkipNet, SkipOutput, SkipUnit};

/// Widen a net with inert units. Evaluation is bit-identical.
pub fn pad_width(f: &SkipNet, new_width: usize) -> Result<SkipNet> {
    if new_width < f.width {
        return Err(Error::Structural(format!("cannot pad width {} down to {new_width}", f.width)));
    }
    let extra = new_width - f.width;
    let mut out = f.clone();
    out.width = new_width;
    for (l, layer) in out.layers.iter_mut().enumerate() {
        if l > 0 {
            for u in layer.iter_mut() {
                u.wy.resize(new_width, 0.0);
            }
        }
        let prev = if l == 0 { 0 } else { new_width };
        layer.extend(std::iter::repeat_with(|| SkipUnit::zero(f.input_dim, prev)).take(extra));
    }
    for row in &mut out.output.beta {
        row.resize(new_width, 0.0);
    }
    Ok(out)
}

/// `alpha1 * f1 + alpha2 * f2`, stacking the hidden layers of `f1` then `f2`.
///
/// Both nets must share input dimension and width. A depth-0 operand is folded
/// into the output map of the other one instead of adding layers.
pub fn add(f1: &SkipNet, f2: &SkipNet, alpha1: f64, alpha2: f64) -> Result<SkipNet> {
    if f1.input_dim != f2.input_dim {
        return Err(Error::Structural(format!("cannot add nets over {} and {} inputs", f1.input_dim, f2.input_dim)));
    }
    if f2.depth == 0 {
        return Ok(fold_affine(f1, alpha1, f2, alpha2));
    }
    if f1.depth == 0 {
        return Ok(fold_affine(f2, alpha2, f1, alpha1));
    }
    if f1.width != f2.width {
        return Err(Error::Structural(format!(
            "width mismatch {} vs {}; pad_width the narrower net first",
            f1.width, f2.width
        )));
    }
    let width = f1.width;
    let mut layers = f1.layers.clone();
    for (l, layer) in f2.layers.iter().enumerate() {
        let layer = layer
            .iter()
            .map(|u| {
                let mut u = u.clone();
                if l == 0 {
                    u.wy = vec![0.0; width];
                }
                u
            })
            .collect();
        layers.push(layer);
    }
    let beta = f1
        .output
        .beta
        .iter()
        .map(|row| scaled(row, alpha1))
        .chain(f2.output.beta.iter().map(|row| scaled(row, alpha2)))
        .collect();
    let a = f1.output.a.iter().zip(&f2.output.a).map(|(p, q)| alpha1 * p + alpha2 * q).collect();
    let mut hints = f1.hints.clone();
    hints.extend(f2.hints.iter().map(|h| RangeHint { layer: h.layer + f1.depth, ..*h }));
    let mut shifts = f1.shifts.clone();
    shifts.extend_from_slice(&f2.shifts);
    SkipNet {
        input_dim: f1.input_dim,
        depth: f1.depth + f2.depth,
        width,
        layers,
        output: SkipOutput { a0: alpha1 * f1.output.a0 + alpha2 * f2.output.a0, a, beta },
        domain: f1.domain.clone(),
        shifts,
        hints,
    }
    .validated()
}

fn scaled(row: &[f64], s: f64) -> Vec<f64> {
    row.iter().map(|w| s * w).collect()
}

/// `alpha * net + gamma * affine` where `affine` has depth 0.
fn fold_affine(net: &SkipNet, alpha: f64, affine: &SkipNet, gamma: f64) -> SkipNet {
    let mut out = net.clone();
    out.output.a0 = alpha * net.output.a0 + gamma * affine.output.a0;
    for (a, b) in out.output.a.iter_mut().zip(&affine.output.a) {
        *a = alpha * *a + gamma * b;
    }
    for row in &mut out.output.beta {
        for w in row.iter_mut() {
            *w *= alpha;
        }
    }
    if net.depth == 0 {
        out.width = net.width.max(affine.width);
    }
    out
}

/// Substitute `x_old = A x_new + c` into every affine map of the net.
///
/// `rows[i]` holds the coefficients of old input `i` over the new inputs.
pub fn precompose_affine(net: &SkipNet, rows: &[Vec<f64>], offsets: &[f64], domain: Hyperbox) -> Result<SkipNet> {
    if rows.len() != net.input_dim || offsets.len() != net.input_dim {
        return Err(Error::Structural(format!(
            "affine map provides {} rows and {} offsets for a net over {} inputs",
            rows.len(),
            offsets.len(),
            net.input_dim
        )));
    }
    let new_dim = domain.dim();
    if rows.iter().any(|r| r.len() != new_dim) {
        return Err(Error::Structural(format!("affine map rows must have length {new_dim}")));
    }
    let map = |w: &[f64], bias: f64| -> (Vec<f64>, f64) {
        let mut nw = vec![0.0; new_dim];
        let mut nb = bias;
        for ((wi, row), ci) in w.iter().zip(rows).zip(offsets) {
            if *wi == 0.0 {
                continue;
            }
            for (t, r) in nw.iter_mut().zip(row) {
                if *r != 0.0 {
                    *t += wi * r;
                }
            }
            if *ci != 0.0 {
                nb += wi * ci;
            }
        }
        (nw, nb)
    };
    let mut out = net.clone();
    out.input_dim = new_dim;
    for u in out.layers.iter_mut().flatten() {
        let (wx, b) = map(&u.wx, u.b);
        u.wx = wx;
        u.b = b;
    }
    let (a, a0) = map(&net.output.a, net.output.a0);
    out.output.a = a;
    out.output.a0 = a0;
    out.domain = domain;
    out.validated()
}

/// The output of a net written as an affine function of `x` and its last hidden layer.
pub(crate) struct TerminalForm {
    pub constant: f64,
    pub x: Vec<f64>,
    pub last: Vec<f64>,
}

impl TerminalForm {
    fn interval(&self, net: &SkipNet, b: &Hyperbox) -> Result<Interval> {
        let bounds = net.interval_bounds(b)?;
        let mut iv = crate::net::affine_interval(self.constant, &self.x, b);
        if let Some(last) = bounds.layers.last() {
            for (w, u) in self.last.iter().zip(last) {
                if *w != 0.0 {
                    iv = iv.add(&u.relu().scale(*w));
                }
            }
        }
        Ok(iv)
    }
}

/// Rewrite `net` so that its output is readable from `x` and the last hidden layer.
///
/// Output contributions of earlier layers are summed into an accumulator that
/// runs through a slot which is inert over the required layers. The function
/// computed by the returned net is unchanged.
pub(crate) fn expose_output(net: &SkipNet) -> Result<(SkipNet, TerminalForm)> {
    debug_assert!(net.depth >= 1);
    let last = net.depth - 1;
    let contributing = net.contributing_layers();
    let first = match contributing.first() {
        Some(&l) if l < last => l,
        _ => {
            let form =
                TerminalForm { constant: net.output.a0, x: net.output.a.clone(), last: net.output.beta[last].clone() };
            return Ok((net.clone(), form));
        }
    };
    let span = first + 1..=last;
    let slot = (0..net.width)
        .rev()
        .find(|&j| span.clone().all(|l| net.layers[l][j].is_inert() && net.output.beta[l][j] == 0.0))
        .ok_or_else(|| {
            Error::Structural(format!(
                "output is spread over layers {first}..={last} and no slot is free to accumulate it; \
                 widen the net by one unit"
            ))
        })?;

    let bounds = net.interval_bounds(&net.domain)?;
    let mut partial = Interval::point(0.0);
    let mut lowest = 0.0f64;
    for l in first..last {
        for (w, iv) in net.output.beta[l].iter().zip(&bounds.layers[l]) {
            if *w != 0.0 {
                partial = partial.add(&iv.relu().scale(*w));
            }
        }
        lowest = lowest.min(partial.lo);
    }
    if !lowest.is_finite() {
        return Err(Error::Conversion("accumulator range is unbounded".to_string()));
    }
    let shift = dyadic_ceil(-lowest);

    let mut out = net.clone();
    for l in span.clone() {
        if l > first + 1 {
            for u in out.layers[l].iter_mut() {
                u.wy[slot] = 0.0;
            }
        }
        let mut wy = net.output.beta[l - 1].clone();
        let mut b = 0.0;
        if l == first + 1 {
            b = shift;
        } else {
            wy[slot] += 1.0;
        }
        out.layers[l][slot] = SkipUnit { wx: vec![0.0; net.input_dim], wy, b };
    }
    out.hints.retain(|h| !(h.unit == slot && span.contains(&h.layer)));
    out.shifts.push(shift);

    let mut last_coef = net.output.beta[last].clone();
    last_coef[slot] += 1.0;
    let form = TerminalForm { constant: net.output.a0 - shift, x: net.output.a.clone(), last: last_coef };
    Ok((out, form))
}

/// `f2(f1(x), x)` with the shift for the carried value taken from interval analysis.
pub fn compose(f2: &SkipNet, f1: &SkipNet) -> Result<SkipNet> {
    compose_impl(f2, f1, None)
}

/// Like [`compose`], but `range` is a caller-certified enclosure of `f1` on its domain.
///
/// The carried shift is sized from the intersection of `range` with the
/// propagated interval, which keeps long composition chains from inflating it.
pub fn compose_with_range(f2: &SkipNet, f1: &SkipNet, range: Interval) -> Result<SkipNet> {
    compose_impl(f2, f1, Some(range))
}

fn compose_impl(f2: &SkipNet, f1: &SkipNet, range: Option<Interval>) -> Result<SkipNet> {
    let d = f1.input_dim;
    if f2.input_dim != d + 1 {
        return Err(Error::Structural(format!(
            "outer net must take {} inputs (carried value first), found {}",
            d + 1,
            f2.input_dim
        )));
    }
    if f2.depth == 0 {
        let ay = f2.output.a[0];
        let mut out = f1.clone();
        out.output.a0 = f2.output.a0 + ay * f1.output.a0;
        for (i, a) in out.output.a.iter_mut().enumerate() {
            *a = f2.output.a[i + 1] + ay * *a;
        }
        for row in &mut out.output.beta {
            for w in row.iter_mut() {
                *w *= ay;
            }
        }
        return out.validated();
    }
    if f1.depth == 0 {
        let mut rows = vec![f1.output.a.clone()];
        let mut offsets = vec![f1.output.a0];
        for i in 0..d {
            let mut r = vec![0.0; d];
            r[i] = 1.0;
            rows.push(r);
            offsets.push(0.0);
        }
        let out = precompose_affine(f2, &rows, &offsets, f1.domain.clone())?;
        return pad_width(&out, f2.width.max(f1.width));
    }
    if f2.width + 1 != f1.width {
        return Err(Error::Structural(format!(
            "inner width must be outer width + 1 ({} + 1), found {}",
            f2.width, f1.width
        )));
    }

    let (inner, form) = expose_output(f1)?;
    let mut y_range = form.interval(&inner, &inner.domain)?;
    if let Some(r) = range {
        y_range = y_range.intersect(&r);
    }
    if !y_range.is_finite() {
        return Err(Error::Conversion("range of the carried value is unbounded".to_string()));
    }
    let carry_shift = dyadic_ceil(-y_range.lo);

    let m = f2.width;
    let depth1 = f1.depth;
    // Outer layers past the first that still read the carried input.
    let carried_layers = (1..f2.depth).filter(|&k| f2.layers[k].iter().any(|u| u.wx[0] != 0.0)).max().unwrap_or(0);

    let mut layers = inner.layers.clone();
    let mut hints = inner.hints.clone();
    for (k, layer) in f2.layers.iter().enumerate() {
        let mut units = Vec::with_capacity(m + 1);
        for (j, u) in layer.iter().enumerate() {
            let wy_carried = u.wx[0];
            let mut wx = u.wx[1..].to_vec();
            let (wy, b) = if k == 0 {
                for (t, fx) in wx.iter_mut().zip(&form.x) {
                    *t += wy_carried * fx;
                }
                let wy = form.last.iter().map(|w| wy_carried * w).collect();
                if wy_carried != 0.0 {
                    let rest = crate::net::affine_interval(u.b, &u.wx[1..], &inner.domain);
                    hints.push(RangeHint { layer: depth1, unit: j, range: rest.add(&y_range.scale(wy_carried)) });
                }
                (wy, u.b + wy_carried * form.constant)
            } else {
                let mut wy = u.wy.clone();
                wy.push(wy_carried);
                (wy, u.b - wy_carried * carry_shift)
            };
            units.push(SkipUnit { wx, wy, b });
        }
        let carrier = if k < carried_layers {
            hints.push(RangeHint { layer: depth1 + k, unit: m, range: y_range.shift(carry_shift) });
            if k == 0 {
                SkipUnit { wx: form.x.clone(), wy: form.last.clone(), b: form.constant + carry_shift }
            } else {
                let mut wy = vec![0.0; m + 1];
                wy[m] = 1.0;
                SkipUnit { wx: vec![0.0; d], wy, b: 0.0 }
            }
        } else {
            SkipUnit::zero(d, m + 1)
        };
        units.push(carrier);
        layers.push(units);
    }
    hints.extend(f2.hints.iter().map(|h| RangeHint { layer: h.layer + depth1, ..*h }));

    let ay = f2.output.a[0];
    let mut beta = vec![vec![0.0; m + 1]; depth1];
    beta[depth1 - 1] = form.last.iter().map(|w| ay * w).collect();
    beta.extend(f2.output.beta.iter().map(|row| {
        let mut r = row.clone();
        r.push(0.0);
        r
    }));
    let a = f2.output.a[1..].iter().zip(&form.x).map(|(p, q)| p + ay * q).collect();
    let mut shifts = inner.shifts.clone();
    shifts.extend_from_slice(&f2.shifts);
    if carried_layers > 0 {
        shifts.push(carry_shift);
    }
    SkipNet {
        input_dim: d,
        depth: depth1 + f2.depth,
        width: m + 1,
        layers,
        output: SkipOutput { a0: f2.output.a0 + ay * form.constant, a, beta },
        domain: inner.domain.clone(),
        shifts,
        hints,
    }
    .validated()
}

/// Append one layer that clamps the output to `[-1, 1]`:
/// `y -> ReLU(y + 1) - ReLU(y - 1) - 1`.
pub fn clamp_output(net: &SkipNet) -> Result<SkipNet> {
    if net.depth == 0 || net.width < 2 {
        return Err(Error::Structural("clamping needs depth >= 1 and width >= 2".to_string()));
    }
    let (inner, form) = expose_output(net)?;
    let d = net.input_dim;
    let mut layer = Vec::with_capacity(net.width);
    for offset in [1.0, -1.0] {
        layer.push(SkipUnit { wx: form.x.clone(), wy: form.last.clone(), b: form.constant + offset });
    }
    layer.extend(std::iter::repeat_with(|| SkipUnit::zero(d, net.width)).take(net.width - 2));
    let mut out = inner;
    out.layers.push(layer);
    out.depth += 1;
    let mut beta = vec![vec![0.0; net.width]; out.depth];
    beta[out.depth - 1][0] = 1.0;
    beta[out.depth - 1][1] = -1.0;
    out.output = SkipOutput { a0: -1.0, a: vec![0.0; d], beta };
    out.validated()
}
