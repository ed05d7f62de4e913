use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Hyperbox;

/// Which closed-form bound a certificate carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma {
    Square,
    Multiply,
    Monomial,
    Polynomial,
    Analytic,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Lemma::Square => "square",
            Lemma::Multiply => "multiply",
            Lemma::Monomial => "monomial",
            Lemma::Polynomial => "polynomial",
            Lemma::Analytic => "analytic",
        };
        f.write_str(s)
    }
}

/// Parameters the bound is computed from. Only the ones a lemma uses are set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CertParams {
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_l1: Option<f64>,
}

/// Sup-norm error bound attached to a constructed net, valid on `domain`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub lemma: Lemma,
    pub params: CertParams,
    pub bound: f64,
    pub domain: Hyperbox,
}

fn four_pow_neg(l: u64) -> f64 {
    0.25f64.powi(l.min(i32::MAX as u64) as i32)
}

pub fn square_bound(l: u64) -> f64 {
    four_pow_neg(l)
}

pub fn multiply_bound(l: u64) -> f64 {
    3.0 * four_pow_neg(l)
}

pub fn monomial_bound(p: u64, l: u64) -> f64 {
    3.0 * p.saturating_sub(1) as f64 * four_pow_neg(l)
}

pub fn polynomial_bound(p: u64, l: u64, coeff_l1: f64) -> f64 {
    monomial_bound(p, l) * coeff_l1
}

/// `2 |a|_1 exp(-d delta (L^{1/(2d)} / e - 1))`.
pub fn analytic_bound(d: u64, delta: f64, depth: u64, coeff_l1: f64) -> f64 {
    let d = d as f64;
    let root = (depth as f64).powf(1.0 / (2.0 * d));
    2.0 * coeff_l1 * (-d * delta * (root / std::f64::consts::E - 1.0)).exp()
}

impl BoundCertificate {
    pub fn square(l: u64) -> Self {
        BoundCertificate {
            lemma: Lemma::Square,
            params: CertParams { depth: Some(l), ..Default::default() },
            bound: square_bound(l),
            domain: Hyperbox::symmetric(1),
        }
    }

    pub fn multiply(l: u64) -> Self {
        BoundCertificate {
            lemma: Lemma::Multiply,
            params: CertParams { depth: Some(l), ..Default::default() },
            bound: multiply_bound(l),
            domain: Hyperbox::symmetric(2),
        }
    }

    pub fn monomial(d: usize, p: u64, l: u64) -> Self {
        BoundCertificate {
            lemma: Lemma::Monomial,
            params: CertParams { depth: Some(l), p: Some(p), d: Some(d as u64), ..Default::default() },
            bound: monomial_bound(p, l),
            domain: Hyperbox::symmetric(d),
        }
    }

    pub fn polynomial(d: usize, p: u64, l: u64, coeff_l1: f64) -> Self {
        BoundCertificate {
            lemma: Lemma::Polynomial,
            params: CertParams {
                depth: Some(l),
                p: Some(p),
                d: Some(d as u64),
                coeff_l1: Some(coeff_l1),
                ..Default::default()
            },
            bound: polynomial_bound(p, l, coeff_l1),
            domain: Hyperbox::symmetric(d),
        }
    }

    /// `depth` is the nominal depth the bound is evaluated at.
    pub fn analytic(d: usize, delta: f64, eps: f64, depth: u64, coeff_l1: f64) -> Self {
        BoundCertificate {
            lemma: Lemma::Analytic,
            params: CertParams {
                depth: Some(depth),
                d: Some(d as u64),
                delta: Some(delta),
                eps: Some(eps),
                coeff_l1: Some(coeff_l1),
                ..Default::default()
            },
            bound: analytic_bound(d as u64, delta, depth, coeff_l1),
            domain: Hyperbox::cube(d, -1.0 + delta, 1.0 - delta),
        }
    }

    /// Recompute the bound from the stored parameters.
    pub fn recompute(&self) -> Result<f64> {
        let p = &self.params;
        let need_u = |v: Option<u64>, name: &str| {
            v.ok_or_else(|| Error::Structural(format!("{} certificate is missing parameter {name}", self.lemma)))
        };
        let need_f = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::Structural(format!("{} certificate is missing parameter {name}", self.lemma)))
        };
        Ok(match self.lemma {
            Lemma::Square => square_bound(need_u(p.depth, "L")?),
            Lemma::Multiply => multiply_bound(need_u(p.depth, "L")?),
            Lemma::Monomial => monomial_bound(need_u(p.p, "p")?, need_u(p.depth, "L")?),
            Lemma::Polynomial => {
                polynomial_bound(need_u(p.p, "p")?, need_u(p.depth, "L")?, need_f(p.coeff_l1, "coeff_l1")?)
            }
            Lemma::Analytic => analytic_bound(
                need_u(p.d, "d")?,
                need_f(p.delta, "delta")?,
                need_u(p.depth, "L")?,
                need_f(p.coeff_l1, "coeff_l1")?,
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(BoundCertificate::square(3).bound, 0.015625);
        assert_eq!(BoundCertificate::square(5).bound, 9.765625e-4);
        assert_eq!(BoundCertificate::square(1).bound, 0.25);
        assert_eq!(BoundCertificate::multiply(4).bound, 0.01171875);
        assert_eq!(BoundCertificate::monomial(3, 3, 4).bound, 0.0234375);
        assert_eq!(BoundCertificate::monomial(3, 1, 4).bound, 0.0);
        assert_eq!(BoundCertificate::polynomial(2, 2, 3, 2.0).bound, 0.09375);
    }

    #[test]
    fn recompute_matches() {
        let certs = [
            BoundCertificate::square(7),
            BoundCertificate::multiply(2),
            BoundCertificate::monomial(2, 4, 3),
            BoundCertificate::polynomial(3, 3, 5, 1.75),
            BoundCertificate::analytic(2, 0.5, 0.01, 123_456, 3.0),
        ];
        for c in certs {
            assert_eq!(c.recompute().unwrap(), c.bound, "{}", c.lemma);
        }
    }

    #[test]
    fn missing_parameter() {
        let mut c = BoundCertificate::polynomial(2, 2, 3, 2.0);
        c.params.coeff_l1 = None;
        let e = c.recompute().unwrap_err().to_string();
        assert!(e.contains("coeff_l1"), "{e}");
    }

    #[test]
    fn json_shape() {
        let c = BoundCertificate::multiply(3);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["lemma"], "multiply");
        assert_eq!(v["params"]["L"], 3);
        assert_eq!(v["bound"], 3.0 / 64.0);
        assert!(v["params"].get("p").is_none());
        let back: BoundCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}
