use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::analytic::truncation_degree;
use super::poly::{multi_indices, MultiIndex, PolySpec, SeriesSpec, TailBound};
use crate::error::{Error, Result};

/// Analytic functions with known coefficients and closed-form tail bounds.
///
/// | preset | series | `sum |a_k|` | tail bound at degree `p`, radius `r` |
/// |---|---|---|---|
/// | `exp` | `sum x^k / k!` | `e` | `r^{p+1} e^r / (p+1)!` |
/// | `sin` | odd terms of `exp` with alternating signs | `sinh 1` | same as `exp` |
/// | `rational` | `1 / (1 + x^2/4) = sum (-x^2/4)^j` | `4/3` | `q^{j0} / (1 - q)`, `q = r^2/4`, `j0 = floor(p/2) + 1` |
/// | `expsum:D` | `exp(x_1 + ... + x_D)` | `e^D` | `(D r)^{p+1} e^{D r} / (p+1)!` |
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Exp,
    Sin,
    Rational,
    ExpSum(usize),
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn exp_tail(scale: f64) -> TailBound {
    Arc::new(move |p, r| {
        let s = scale * r;
        s.powi(p as i32 + 1) * s.exp() / factorial(p as u32 + 1)
    })
}

impl Preset {
    pub fn input_dim(&self) -> usize {
        match self {
            Preset::ExpSum(d) => *d,
            _ => 1,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Preset::Exp => x[0].exp(),
            Preset::Sin => x[0].sin(),
            Preset::Rational => 1.0 / (1.0 + x[0] * x[0] / 4.0),
            Preset::ExpSum(_) => x.iter().sum::<f64>().exp(),
        }
    }

    fn coefficient(&self, k: &MultiIndex) -> f64 {
        let n = k.degree() as u32;
        match self {
            Preset::Exp => 1.0 / factorial(n),
            Preset::Sin if !n.is_multiple_of(2) => {
                let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign / factorial(n)
            }
            Preset::Sin => 0.0,
            Preset::Rational if n.is_multiple_of(2) => (-0.25f64).powi(n as i32 / 2),
            Preset::Rational => 0.0,
            Preset::ExpSum(_) => 1.0 / k.0.iter().map(|&ki| factorial(ki)).product::<f64>(),
        }
    }

    /// Series with head coefficients through `head_degree`.
    pub fn series(&self, head_degree: usize) -> Result<SeriesSpec> {
        let d = self.input_dim();
        let mut head = PolySpec::new(d);
        for k in multi_indices(d, head_degree) {
            let a = self.coefficient(&k);
            head.add_term(k, a)?;
        }
        let (l1_norm, tail) = match self {
            Preset::Exp => (std::f64::consts::E, exp_tail(1.0)),
            Preset::Sin => (1f64.sinh(), exp_tail(1.0)),
            Preset::Rational => {
                let tail: TailBound = Arc::new(|p, r| {
                    let q = r * r / 4.0;
                    q.powi(p as i32 / 2 + 1) / (1.0 - q)
                });
                (4.0 / 3.0, tail)
            }
            Preset::ExpSum(d) => ((*d as f64).exp(), exp_tail(*d as f64)),
        };
        Ok(SeriesSpec { head, head_degree, l1_norm, tail })
    }

    /// Series with enough head terms for any `(eps, delta)` build.
    pub fn series_for(&self, eps: f64, delta: f64) -> Result<SeriesSpec> {
        self.series(truncation_degree(eps, delta)?)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Exp => f.write_str("exp"),
            Preset::Sin => f.write_str("sin"),
            Preset::Rational => f.write_str("rational"),
            Preset::ExpSum(d) => write!(f, "expsum:{d}"),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(Preset::Exp),
            "sin" => Ok(Preset::Sin),
            "rational" => Ok(Preset::Rational),
            _ => {
                let d = s
                    .strip_prefix("expsum:")
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|d| (1..=3).contains(d))
                    .ok_or_else(|| {
                        Error::Specification(format!("unknown preset {s:?} (exp, sin, rational, expsum:1..3)"))
                    })?;
                Ok(Preset::ExpSum(d))
            }
        }
    }
}
