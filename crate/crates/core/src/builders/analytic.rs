use super::certificate::{monomial_bound, BoundCertificate};
use super::construct::{build_polynomial, chain_width};
use super::poly::SeriesSpec;
use crate::error::{Error, Result};
use crate::interval::Hyperbox;
use crate::net::SkipNet;

/// Result of [`build_analytic`] with the choices made along the way.
#[derive(Debug, Clone)]
pub struct AnalyticBuild {
    pub net: SkipNet,
    pub certificate: BoundCertificate,
    /// Truncation degree `p`.
    pub degree: usize,
    /// Depth parameter of every multiply stage.
    pub stage_depth: usize,
    /// Depth at which the certificate bound is evaluated.
    pub nominal_depth: u64,
    /// Tail bound at the truncation degree on the shrunk box.
    pub tail_bound: f64,
    /// Polynomial approximation bound of the head.
    pub poly_bound: f64,
}

impl AnalyticBuild {
    /// `tail_bound + poly_bound`, usually much tighter than the certificate.
    pub fn concrete_bound(&self) -> f64 {
        self.tail_bound + self.poly_bound
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Parameter(format!("{name} must lie in (0, 1), got {v}")));
    }
    Ok(())
}

/// `ceil(ln(1/eps) / delta)`: a truncation degree that always suffices.
pub fn truncation_degree(eps: f64, delta: f64) -> Result<usize> {
    check_unit("eps", eps)?;
    check_unit("delta", delta)?;
    Ok(((1.0 / eps).ln() / delta).ceil() as usize)
}

/// `ceil((e (ln(1/eps) / (d delta) + 1))^{2d})`.
pub fn theorem_depth(d: usize, delta: f64, eps: f64) -> Result<u64> {
    check_unit("eps", eps)?;
    check_unit("delta", delta)?;
    if d == 0 {
        return Err(Error::Parameter("input dimension must be at least 1".to_string()));
    }
    let base = std::f64::consts::E * ((1.0 / eps).ln() / (d as f64 * delta) + 1.0);
    let depth = base.powi(2 * d as i32).ceil();
    if !depth.is_finite() || depth > 2f64.powi(53) {
        return Err(Error::Parameter(format!("nominal depth for d={d} is too large to represent")));
    }
    Ok(depth as u64)
}

/// Net approximating an absolutely convergent power series on `[-1+delta, 1-delta]^d`.
///
/// The series is truncated at the smallest degree whose tail is at most
/// `eps |a|_1` (never beyond [`truncation_degree`]), and the per-stage depth is
/// the smallest one that keeps the polynomial error of the head within the
/// same budget.
pub fn build_analytic(series: &SeriesSpec, eps: f64, delta: f64, clamp: bool) -> Result<AnalyticBuild> {
    let p_max = truncation_degree(eps, delta)?;
    let d = series.head.input_dim();
    if d == 0 {
        return Err(Error::Specification("series has no variables".to_string()));
    }
    if !(series.l1_norm.is_finite() && series.l1_norm >= 0.0) {
        return Err(Error::Specification(format!("coefficient norm {} is not usable", series.l1_norm)));
    }
    let r = 1.0 - delta;
    let budget = eps * series.l1_norm;
    let p = (0..=p_max).find(|&p| series.tail_bound(p, r) <= budget).unwrap_or(p_max);
    if p > series.head_degree {
        return Err(Error::Specification(format!(
            "head coefficients stop at degree {}; degree {} is required",
            series.head_degree,
            series.head_degree + 1
        )));
    }
    let head = series.head.truncate(p);
    let head_l1 = head.l1_norm();
    let stage_depth = if p <= 1 {
        1
    } else {
        (1..=512)
            .find(|&l| monomial_bound(p as u64, l as u64) * head_l1 <= budget)
            .ok_or_else(|| Error::Parameter(format!("no stage depth reaches eps = {eps}")))?
    };
    let net = if head.is_empty() {
        SkipNet::affine(0.0, vec![0.0; d], chain_width(p), Hyperbox::symmetric(d))?
    } else {
        build_polynomial(&head, stage_depth, clamp)?.net
    };
    let nominal_depth = theorem_depth(d, delta, eps)?;
    if net.depth as u64 > nominal_depth {
        return Err(Error::Parameter(format!(
            "constructed depth {} exceeds the nominal depth {nominal_depth}",
            net.depth
        )));
    }
    let poly_bound = if p <= 1 { 0.0 } else { monomial_bound(p as u64, stage_depth as u64) * head_l1 };
    Ok(AnalyticBuild {
        net,
        certificate: BoundCertificate::analytic(d, delta, eps, nominal_depth, series.l1_norm),
        degree: p,
        stage_depth,
        nominal_depth,
        tail_bound: series.tail_bound(p, r),
        poly_bound,
    })
}
