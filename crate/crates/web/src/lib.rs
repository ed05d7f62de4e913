//! Browser bindings: plots of the square, product and analytic constructions.

use relu_forge::builders::{build_analytic, build_multiply, build_square, Preset};
use relu_forge::net::Network;
use wasm_bindgen::prelude::*;

/// A net and its target sampled on a uniform 1-d grid.
#[wasm_bindgen]
pub struct Profile {
    xs: Vec<f64>,
    approx: Vec<f64>,
    exact: Vec<f64>,
    measured: f64,
    bound: f64,
    summary: String,
}

#[wasm_bindgen]
impl Profile {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn approx(&self) -> Vec<f64> {
        self.approx.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    /// Largest absolute error over the samples.
    #[wasm_bindgen(getter)]
    pub fn measured(&self) -> f64 {
        self.measured
    }

    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> f64 {
        self.bound
    }

    #[wasm_bindgen(getter)]
    pub fn summary(&self) -> String {
        self.summary.clone()
    }
}

/// `|xy - net(x, y)|` on an `n x n` grid over `[-1, 1]^2`, row-major with `y` varying fastest.
#[wasm_bindgen]
pub struct ErrorMap {
    n: usize,
    errors: Vec<f64>,
    measured: f64,
    bound: f64,
    summary: String,
}

#[wasm_bindgen]
impl ErrorMap {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[wasm_bindgen(getter)]
    pub fn errors(&self) -> Vec<f64> {
        self.errors.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn measured(&self) -> f64 {
        self.measured
    }

    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> f64 {
        self.bound
    }

    #[wasm_bindgen(getter)]
    pub fn summary(&self) -> String {
        self.summary.clone()
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn profile(net: &dyn Network, f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Profile {
    let xs = grid(lo, hi, samples);
    let approx: Vec<f64> = xs.iter().map(|&x| net.forward(&[x])).collect();
    let exact: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let measured = approx.iter().zip(&exact).map(|(a, e)| (a - e).abs()).fold(0.0, f64::max);
    Profile { xs, approx, exact, measured, bound: 0.0, summary: String::new() }
}

pub fn square_profile_impl(depth: usize, samples: usize) -> Result<Profile, String> {
    let b = build_square(depth).map_err(|e| e.to_string())?;
    let mut p = profile(&b.net, |x| x * x, -1.0, 1.0, samples);
    p.bound = b.certificate.bound;
    p.summary = format!("depth {}, width {}, {} parameters", b.net.depth, b.net.width, b.net.param_count());
    Ok(p)
}

pub fn multiply_error_map_impl(depth: usize, n: usize) -> Result<ErrorMap, String> {
    let b = build_multiply(depth).map_err(|e| e.to_string())?;
    let axis = grid(-1.0, 1.0, n);
    let mut errors = Vec::with_capacity(axis.len() * axis.len());
    for &x in &axis {
        for &y in &axis {
            errors.push((x * y - b.net.forward(&[x, y])).abs());
        }
    }
    let measured = errors.iter().copied().fold(0.0, f64::max);
    Ok(ErrorMap {
        n: axis.len(),
        errors,
        measured,
        bound: b.certificate.bound,
        summary: format!("depth {}, width {}", b.net.depth, b.net.width),
    })
}

pub fn analytic_profile_impl(preset: &str, eps: f64, delta: f64, samples: usize) -> Result<Profile, String> {
    let preset: Preset = preset.parse().map_err(|e: relu_forge::Error| e.to_string())?;
    if preset.input_dim() != 1 {
        return Err(format!("{preset} is not a function of one variable"));
    }
    let series = preset.series_for(eps, delta).map_err(|e| e.to_string())?;
    let b = build_analytic(&series, eps, delta, false).map_err(|e| e.to_string())?;
    let r = 1.0 - delta;
    let mut p = profile(&b.net, |x| preset.eval(&[x]), -r, r, samples);
    p.bound = b.concrete_bound();
    p.summary =
        format!("degree {}, stage depth {}, depth {}, width {}", b.degree, b.stage_depth, b.net.depth, b.net.width);
    Ok(p)
}

/// Square construction of the given depth sampled on `[-1, 1]`.
#[wasm_bindgen]
pub fn square_profile(depth: usize, samples: usize) -> Result<Profile, JsError> {
    square_profile_impl(depth, samples).map_err(|e| JsError::new(&e))
}

/// Error heatmap of the product construction.
#[wasm_bindgen]
pub fn multiply_error_map(depth: usize, n: usize) -> Result<ErrorMap, JsError> {
    multiply_error_map_impl(depth, n).map_err(|e| JsError::new(&e))
}

/// Analytic construction for `exp`, `sin` or `rational` on `[-1+delta, 1-delta]`.
#[wasm_bindgen]
pub fn analytic_profile(preset: &str, eps: f64, delta: f64, samples: usize) -> Result<Profile, JsError> {
    analytic_profile_impl(preset, eps, delta, samples).map_err(|e| JsError::new(&e))
}
