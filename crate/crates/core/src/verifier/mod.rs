//! Empirical sup-norm error measurement, certificate checks, convergence
//! sweeps and differential equivalence checks.

mod strategy;

pub use strategy::{PointSet, Strategy, MAX_POINTS};

use serde::Serialize;

use crate::builders::{
    build_monomial, build_multiply, build_polynomial, build_square, BoundCertificate, Built, PolySpec,
};
use crate::calculus::{count_params, skip_to_standard};
use crate::error::{Error, Result};
use crate::interval::Hyperbox;
use crate::net::Network;

/// Largest `value(i)` over `0..n`; NaN counts as infinity, ties go to the lowest index.
fn arg_max(n: usize, value: impl Fn(usize) -> f64 + Sync + Send) -> (f64, usize) {
    let key = |i: usize| {
        let v = value(i);
        (if v.is_nan() { f64::INFINITY } else { v }, i)
    };
    let pick = |a: (f64, usize), b: (f64, usize)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(key).reduce(|| (f64::NEG_INFINITY, usize::MAX), pick)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(key).fold((f64::NEG_INFINITY, usize::MAX), pick)
    }
}

/// Finite-grid estimate of `max |target - net|` over a box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub measured: f64,
    pub argmax: Vec<f64>,
    /// Strategy tag with its resolution, e.g. `uniform:513`.
    pub grid: String,
    pub points: usize,
    pub bound: Option<f64>,
    pub ratio: Option<f64>,
    /// True when the box is not inside the net's domain.
    pub out_of_box: bool,
}

impl ErrorReport {
    /// True unless a bound is present and the measured error exceeds it.
    pub fn within_bound(&self) -> bool {
        self.bound.is_none_or(|b| self.measured <= b)
    }

    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self.ratio = (bound > 0.0).then(|| self.measured / bound);
        self
    }
}

/// Maximise `|target(x) - net(x)|` over the point set `strategy` places on `b`.
pub fn sup_error(
    net: &dyn Network,
    target: &(dyn Fn(&[f64]) -> f64 + Sync),
    b: &Hyperbox,
    strategy: Strategy,
) -> Result<ErrorReport> {
    if net.input_dim() != b.dim() {
        return Err(Error::Structural(format!(
            "net takes {} inputs but the box has {} dimensions",
            net.input_dim(),
            b.dim()
        )));
    }
    let pts = strategy.points(b)?;
    let (measured, idx) = arg_max(pts.len(), |i| {
        let x = pts.point(i);
        (target(&x) - net.forward(&x)).abs()
    });
    Ok(ErrorReport {
        measured,
        argmax: pts.point(idx),
        grid: strategy.to_string(),
        points: pts.len(),
        bound: None,
        ratio: None,
        out_of_box: !net.domain().contains_box(b),
    })
}

/// Recompute a certificate's bound from its parameters.
pub fn theoretical_bound(cert: &BoundCertificate) -> Result<f64> {
    cert.recompute()
}

/// Builders a convergence sweep can vary `L` over.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepTarget {
    Square,
    Multiply,
    /// Zero-based factor indices over `input_dim` variables.
    Monomial {
        input_dim: usize,
        indices: Vec<usize>,
    },
    Polynomial(PolySpec),
}

impl SweepTarget {
    pub fn input_dim(&self) -> usize {
        match self {
            SweepTarget::Square => 1,
            SweepTarget::Multiply => 2,
            SweepTarget::Monomial { input_dim, .. } => *input_dim,
            SweepTarget::Polynomial(p) => p.input_dim(),
        }
    }

    pub fn build(&self, l: usize) -> Result<Built> {
        match self {
            SweepTarget::Square => build_square(l),
            SweepTarget::Multiply => build_multiply(l),
            SweepTarget::Monomial { input_dim, indices } => build_monomial(*input_dim, indices, l, false),
            SweepTarget::Polynomial(p) => build_polynomial(p, l, false),
        }
    }

    /// The exact function the built nets approximate.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            SweepTarget::Square => x[0] * x[0],
            SweepTarget::Multiply => x[0] * x[1],
            SweepTarget::Monomial { indices, .. } => indices.iter().map(|&i| x[i]).product(),
            SweepTarget::Polynomial(p) => p.eval(x),
        }
    }
}

/// Point placement for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStrategy {
    /// Dyadic midpoints at the row's `L` for squares, the default uniform grid otherwise.
    Auto,
    Fixed(Strategy),
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub depth_param: usize,
    pub depth: usize,
    pub std_width: usize,
    pub params: usize,
    pub bound: f64,
    pub measured: f64,
    pub ratio: f64,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "L,depth,std_width,params,bound,measured,ratio";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{:e},{:e},{}",
            self.depth_param, self.depth, self.std_width, self.params, self.bound, self.measured, self.ratio
        )
    }
}

/// Build the target at every `L` and measure its error.
pub fn convergence_sweep(
    target: &SweepTarget,
    l_values: &[usize],
    b: Option<&Hyperbox>,
    strategy: SweepStrategy,
) -> Result<Vec<SweepRow>> {
    if l_values.is_empty() {
        return Err(Error::Parameter("sweep needs at least one L value".to_string()));
    }
    if l_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("sweep L values must be strictly increasing".to_string()));
    }
    let mut rows = Vec::with_capacity(l_values.len());
    for &l in l_values {
        let row = sweep_row(target, l, b, strategy).map_err(|e| e.context(format!("L={l}")))?;
        rows.push(row);
    }
    Ok(rows)
}

fn sweep_row(target: &SweepTarget, l: usize, b: Option<&Hyperbox>, strategy: SweepStrategy) -> Result<SweepRow> {
    let built = target.build(l)?;
    let net = &built.net;
    let b = b.cloned().unwrap_or_else(|| built.certificate.domain.clone());
    let strategy = match strategy {
        SweepStrategy::Fixed(s) => s,
        SweepStrategy::Auto if *target == SweepTarget::Square => Strategy::DyadicMidpoints(l as u32),
        SweepStrategy::Auto => Strategy::default_uniform(b.dim()),
    };
    let report = sup_error(net, &|x| target.eval(x), &b, strategy)?.with_bound(built.certificate.bound);
    let std_width = skip_to_standard(net)?.max_width();
    Ok(SweepRow {
        depth_param: l,
        depth: net.depth,
        std_width,
        params: count_params(net.width, net.depth, net.input_dim),
        bound: built.certificate.bound,
        measured: report.measured,
        ratio: report.ratio.unwrap_or(0.0),
    })
}

/// Outcome of comparing two nets on random points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub max_deviation: f64,
    pub argmax: Vec<f64>,
    pub samples: usize,
    pub tol: f64,
    pub passed: bool,
}

/// Compare two nets on `n` seeded random points of `b`.
///
/// A point passes when `|a - b| <= tol * (1 + |a|)`.
pub fn equivalence_check(
    a: &dyn Network,
    b: &dyn Network,
    region: &Hyperbox,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<EquivalenceReport> {
    if a.input_dim() != b.input_dim() || a.input_dim() != region.dim() {
        return Err(Error::Structural(format!(
            "input dimensions differ: {}, {} and box {}",
            a.input_dim(),
            b.input_dim(),
            region.dim()
        )));
    }
    let pts = Strategy::Random { n, seed }.points(region)?;
    let (max_deviation, idx) = arg_max(pts.len(), |i| {
        let x = pts.point(i);
        (a.forward(&x) - b.forward(&x)).abs()
    });
    let (worst_excess, _) = arg_max(pts.len(), |i| {
        let x = pts.point(i);
        let va = a.forward(&x);
        (va - b.forward(&x)).abs() - tol * (1.0 + va.abs())
    });
    Ok(EquivalenceReport { max_deviation, argmax: pts.point(idx), samples: n, tol, passed: worst_excess <= 0.0 })
}
