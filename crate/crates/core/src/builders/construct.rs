use super::certificate::{monomial_bound, BoundCertificate};
use super::poly::PolySpec;
use crate::calculus::{add, clamp_output, compose_with_range, pad_width, precompose_affine};
use crate::error::{Error, Result};
use crate::interval::{Hyperbox, Interval};
use crate::net::{SkipNet, SkipOutput, SkipUnit};

/// A constructed net together with its error certificate.
#[derive(Debug, Clone)]
pub struct Built {
    pub net: SkipNet,
    pub certificate: BoundCertificate,
}

fn check_depth(l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::Parameter("depth parameter L must be at least 1".to_string()));
    }
    Ok(())
}

/// Width used by monomial and polynomial chains of degree `p`.
///
/// Up to degree 3 the carried product and the exposed output never need the
/// same free slot; from degree 4 on, one extra slot is required.
pub fn chain_width(p: usize) -> usize {
    if p <= 3 {
        3
    } else {
        4
    }
}

/// Net of depth `l` and width 2 approximating `x^2` on `[-1, 1]`.
///
/// Layer 0 holds `ReLU(x), ReLU(-x)`; layer `l >= 1` holds `ReLU(g), ReLU(g - 1/2)`
/// where `g` is the previous sawtooth iterate (`|x|` for `l = 1`). The output is
/// `|x| - sum_l g_l(|x|) / 4^l`, the piecewise-linear interpolant of `x^2` at
/// nodes spaced `2^{1-l}`.
pub fn build_square(l: usize) -> Result<Built> {
    check_depth(l)?;
    let mut layers =
        vec![vec![SkipUnit { wx: vec![1.0], wy: vec![], b: 0.0 }, SkipUnit { wx: vec![-1.0], wy: vec![], b: 0.0 }]];
    let mut beta = vec![vec![1.0, 1.0]];
    for k in 1..l {
        let wy = if k == 1 { vec![1.0, 1.0] } else { vec![2.0, -4.0] };
        layers.push(vec![SkipUnit { wx: vec![0.0], wy: wy.clone(), b: 0.0 }, SkipUnit { wx: vec![0.0], wy, b: -0.5 }]);
        let scale = 0.25f64.powi(k as i32);
        beta.push(vec![-2.0 * scale, 4.0 * scale]);
    }
    let output = SkipOutput { a0: 0.0, a: vec![0.0], beta };
    let net = SkipNet::from_parts(1, 2, layers, output, Hyperbox::symmetric(1))?;
    Ok(Built { net, certificate: BoundCertificate::square(l as u64) })
}

/// Net of depth `3l` and width 2 approximating `x * y` on `[-1, 1]^2`, from
/// `xy = 2((x + y) / 2)^2 - x^2 / 2 - y^2 / 2`.
pub fn build_multiply(l: usize) -> Result<Built> {
    let sq = build_square(l)?.net;
    let dom = Hyperbox::symmetric(2);
    let mean = precompose_affine(&sq, &[vec![0.5, 0.5]], &[0.0], dom.clone())?;
    let first = precompose_affine(&sq, &[vec![1.0, 0.0]], &[0.0], dom.clone())?;
    let second = precompose_affine(&sq, &[vec![0.0, 1.0]], &[0.0], dom)?;
    let net = add(&add(&mean, &first, 2.0, -0.5)?, &second, 1.0, -0.5)?;
    Ok(Built { net, certificate: BoundCertificate::multiply(l as u64) })
}

/// Net approximating `x[i_1] * ... * x[i_p]` over `[-1, 1]^d`.
///
/// `indices` are zero-based. Each factor after the first adds one multiply
/// stage of depth `3l`. With `clamp`, every intermediate product is clamped to
/// `[-1, 1]` before it is multiplied again, which adds one layer per stage.
pub fn build_monomial(input_dim: usize, indices: &[usize], l: usize, clamp: bool) -> Result<Built> {
    check_depth(l)?;
    if indices.is_empty() {
        return Err(Error::Parameter("a monomial needs at least one factor".to_string()));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= input_dim) {
        return Err(Error::Parameter(format!("factor index {bad} out of range for {input_dim} inputs")));
    }
    let p = indices.len();
    let width = chain_width(p);
    let domain = Hyperbox::symmetric(input_dim);
    let mut coords = vec![0.0; input_dim];
    coords[indices[0]] = 1.0;
    let mut net = SkipNet::affine(0.0, coords, width, domain.clone())?;
    if p > 1 {
        let mult = build_multiply(l)?.net;
        let carried_dom = Hyperbox::symmetric(input_dim + 1);
        for (j, &i) in indices.iter().enumerate().skip(1) {
            let mut carried = vec![0.0; input_dim + 1];
            carried[0] = 1.0;
            let mut factor = vec![0.0; input_dim + 1];
            factor[i + 1] = 1.0;
            let outer = precompose_affine(&mult, &[carried, factor], &[0.0, 0.0], carried_dom.clone())?;
            let outer = pad_width(&outer, width - 1)?;
            let range = if clamp && net.depth > 0 {
                net = clamp_output(&net)?;
                Interval::new(-1.0, 1.0)
            } else {
                let slack = 1.0 + 2.0 * monomial_bound(j as u64, l as u64);
                Interval::new(-slack, slack)
            };
            net = compose_with_range(&outer, &net, range)?;
        }
    }
    Ok(Built { net, certificate: BoundCertificate::monomial(input_dim, p as u64, l as u64) })
}

/// Net approximating a polynomial on `[-1, 1]^d` as a sum of monomial nets.
///
/// Terms of degree at most 1 go into the output map; the others are stacked in
/// lexicographic multi-index order. The depth is `sum 3(|k| - 1) l` over the
/// stored terms (plus clamp layers).
pub fn build_polynomial(spec: &PolySpec, l: usize, clamp: bool) -> Result<Built> {
    check_depth(l)?;
    if spec.is_empty() {
        return Err(Error::Parameter("polynomial has no terms".to_string()));
    }
    let d = spec.input_dim();
    let p = spec.degree();
    let width = chain_width(p);
    let mut a0 = 0.0;
    let mut lin = vec![0.0; d];
    let mut deep = Vec::new();
    for (k, a) in spec.terms() {
        match k.degree() {
            0 => a0 += a,
            1 => lin[k.factors()[0]] += a,
            _ => deep.push((k, a)),
        }
    }
    let mut net = SkipNet::affine(a0, lin, width, Hyperbox::symmetric(d))?;
    for (k, a) in deep {
        let mono = build_monomial(d, &k.factors(), l, clamp)?.net;
        let mono = pad_width(&mono, width)?;
        net = add(&net, &mono, 1.0, a)?;
    }
    let certificate = BoundCertificate::polynomial(d, p as u64, l as u64, spec.l1_norm());
    Ok(Built { net, certificate })
}
