#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use relu_forge::calculus::{Activation, ShallowNet, ShallowUnit};
use relu_forge::net::{SkipNet, SkipOutput, SkipUnit};
use relu_forge::Hyperbox;

pub fn random_skip(rng: &mut ChaCha8Rng, d: usize, depth: usize, width: usize) -> SkipNet {
    let layers = (0..depth)
        .map(|l| {
            (0..width)
                .map(|_| SkipUnit {
                    wx: (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                    wy: if l == 0 { Vec::new() } else { (0..width).map(|_| rng.gen_range(-1.0..1.0)).collect() },
                    b: rng.gen_range(-0.5..0.5),
                })
                .collect()
        })
        .collect();
    let output = SkipOutput {
        a0: rng.gen_range(-1.0..1.0),
        a: (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        beta: (0..depth).map(|_| (0..width).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect(),
    };
    SkipNet::from_parts(d, width, layers, output, Hyperbox::symmetric(d)).unwrap()
}

pub fn random_shallow(rng: &mut ChaCha8Rng, d: usize, units: usize, activation: Activation) -> ShallowNet {
    let units = (0..units)
        .map(|_| ShallowUnit {
            a: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            b: rng.gen_range(-1.0..1.0),
            c: rng.gen_range(-1.0..1.0),
        })
        .collect();
    ShallowNet::new(units, rng.gen_range(-1.0..1.0), activation, Hyperbox::symmetric(d)).unwrap()
}

/// Uniform grid over `[-1, 1]^d` with `n` points per axis.
pub fn grid(d: usize, n: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|p| axis.iter().map(move |&v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}
