use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector `k`; `x^k = prod_i x_i^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(k: Vec<u32>) -> Self {
        MultiIndex(k)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    /// Factor sequence: variable 0 repeated `k_0` times, then variable 1, ...
    pub fn factors(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect()
    }

    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&k, &v)| v.powi(k as i32)).product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Every multi-index over `dim` variables with total degree `<= max_degree`,
/// in lexicographic order.
pub fn multi_indices(dim: usize, max_degree: usize) -> Vec<MultiIndex> {
    fn rec(dim: usize, budget: usize, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == dim {
            out.push(MultiIndex(prefix.clone()));
            return;
        }
        for k in 0..=budget {
            prefix.push(k as u32);
            rec(dim, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, max_degree, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Number of monomials in `d` variables of degree `<= p`: `C(p + d, d)`.
pub fn monomial_count(p: usize, d: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 1..=d as u128 {
        c = c * (p as u128 + i) / i;
    }
    c
}

/// Finite polynomial `sum_k a_k x^k`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolySpec {
    input_dim: usize,
    terms: BTreeMap<MultiIndex, f64>,
}

impl PolySpec {
    pub fn new(input_dim: usize) -> Self {
        PolySpec { input_dim, terms: BTreeMap::new() }
    }

    pub fn from_terms(input_dim: usize, terms: impl IntoIterator<Item = (MultiIndex, f64)>) -> Result<Self> {
        let mut p = PolySpec::new(input_dim);
        for (k, a) in terms {
            p.add_term(k, a)?;
        }
        Ok(p)
    }

    /// Adds `a x^k` to the polynomial, merging with an existing term.
    pub fn add_term(&mut self, k: MultiIndex, a: f64) -> Result<()> {
        if k.dim() != self.input_dim {
            return Err(Error::Specification(format!(
                "multi-index {k} has {} entries, polynomial has {} variables",
                k.dim(),
                self.input_dim
            )));
        }
        if !a.is_finite() {
            return Err(Error::Specification(format!("coefficient of {k} is not finite")));
        }
        let v = self.terms.get(&k).copied().unwrap_or(0.0) + a;
        if v == 0.0 {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
        Ok(())
    }

    /// Parses `"k1,..,kd:coeff;k1,..,kd:coeff;..."`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (n, item) in text.split(';').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
            let (ks, coeff) = item
                .split_once(':')
                .ok_or_else(|| Error::Specification(format!("term {n} ({item:?}) lacks ':coefficient'")))?;
            let k = ks
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Specification(format!("term {n}: bad exponent list {ks:?}: {e}")))?;
            let a = coeff
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Specification(format!("term {n}: bad coefficient {coeff:?}: {e}")))?;
            terms.push((MultiIndex(k), a));
        }
        let dim =
            terms.first().map(|(k, _)| k.dim()).ok_or_else(|| Error::Specification("empty polynomial".to_string()))?;
        Self::from_terms(dim, terms)
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.terms.iter().map(|(k, a)| (k, *a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// `sum_k |a_k|`.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|a| a.abs()).sum()
    }

    /// Terms of total degree `<= p`.
    pub fn truncate(&self, p: usize) -> PolySpec {
        PolySpec {
            input_dim: self.input_dim,
            terms: self.terms.iter().filter(|(k, _)| k.degree() <= p).map(|(k, a)| (k.clone(), *a)).collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(k, a)| a * k.monomial(x)).sum()
    }
}

/// Upper bound on `sum_{|k| > p} |a_k| r^{|k|}` as a function of `(p, r)`.
pub type TailBound = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// A power series given by its head coefficients plus a certified tail bound.
#[derive(Clone)]
pub struct SeriesSpec {
    /// Coefficients of every term with `|k| <= head_degree`.
    pub head: PolySpec,
    pub head_degree: usize,
    /// `sum_k |a_k|` over the whole series (an upper bound is fine).
    pub l1_norm: f64,
    pub tail: TailBound,
}

impl fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesSpec")
            .field("head", &self.head)
            .field("head_degree", &self.head_degree)
            .field("l1_norm", &self.l1_norm)
            .finish_non_exhaustive()
    }
}

impl SeriesSpec {
    /// A finite series: the tail beyond the polynomial's degree is zero.
    pub fn finite(poly: PolySpec) -> Self {
        let l1 = poly.l1_norm();
        let terms: Vec<(usize, f64)> = poly.terms().map(|(k, a)| (k.degree(), a.abs())).collect();
        let tail: TailBound = Arc::new(move |p, r| {
            terms.iter().filter(|(deg, _)| *deg > p).map(|(deg, a)| a * r.powi(*deg as i32)).sum()
        });
        SeriesSpec { head: poly, head_degree: usize::MAX, l1_norm: l1, tail }
    }

    pub fn tail_bound(&self, p: usize, radius: f64) -> f64 {
        (self.tail)(p, radius)
    }
}
