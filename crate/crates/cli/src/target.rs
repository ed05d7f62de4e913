use anyhow::{bail, Context, Result};
use relu_forge::builders::{PolySpec, Preset};
use relu_forge::verifier::SweepTarget;

/// Function a net is checked against.
#[derive(Debug, Clone)]
pub enum Target {
    Square,
    Multiply,
    /// Zero-based factor indices.
    Monomial(Vec<usize>),
    Poly(PolySpec),
    Preset(Preset),
}

/// Parses a one-based comma-separated index list such as `1,2,2`.
pub fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let i: usize = t.trim().parse().with_context(|| format!("bad index {t:?}"))?;
            if i == 0 {
                bail!("indices start at 1");
            }
            Ok(i - 1)
        })
        .collect()
}

impl Target {
    /// `square`, `multiply`, `monomial:I,J,..`, `poly:K..:C;..`, `exp`, `sin`, `rational` or `expsum:D`.
    pub fn parse(s: &str) -> Result<Self> {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        Ok(match (head, rest) {
            ("square", None) => Target::Square,
            ("multiply", None) => Target::Multiply,
            ("monomial", Some(r)) => Target::Monomial(parse_indices(r)?),
            ("poly", Some(r)) => Target::Poly(PolySpec::parse(r)?),
            _ => Target::Preset(s.parse().with_context(|| {
                format!("unknown target {s:?}; use square, multiply, monomial:I,J,.., poly:K:C;.., exp, sin, rational or expsum:D")
            })?),
        })
    }

    pub fn min_dim(&self) -> usize {
        match self {
            Target::Square => 1,
            Target::Multiply => 2,
            Target::Monomial(idx) => idx.iter().max().map_or(1, |m| m + 1),
            Target::Poly(p) => p.input_dim(),
            Target::Preset(p) => p.input_dim(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Target::Square => x[0] * x[0],
            Target::Multiply => x[0] * x[1],
            Target::Monomial(idx) => idx.iter().map(|&i| x[i]).product(),
            Target::Poly(p) => p.eval(x),
            Target::Preset(p) => p.eval(x),
        }
    }

    pub fn sweep_target(&self) -> Result<SweepTarget> {
        Ok(match self {
            Target::Square => SweepTarget::Square,
            Target::Multiply => SweepTarget::Multiply,
            Target::Monomial(idx) => SweepTarget::Monomial { input_dim: self.min_dim(), indices: idx.clone() },
            Target::Poly(p) => SweepTarget::Polynomial(p.clone()),
            Target::Preset(p) => bail!("{p} is built from eps and delta, not a depth; sweep it with build analytic"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_targets() {
        assert!(matches!(Target::parse("square").unwrap(), Target::Square));
        match Target::parse("monomial:1,3").unwrap() {
            Target::Monomial(v) => assert_eq!(v, [0, 2]),
            other => panic!("{other:?}"),
        }
        let p = Target::parse("poly:0,0:1;1,1:0.5").unwrap();
        assert_eq!(p.min_dim(), 2);
        assert_eq!(p.eval(&[0.5, 0.5]), 1.125);
        assert!(matches!(Target::parse("expsum:2").unwrap(), Target::Preset(Preset::ExpSum(2))));
        assert!(Target::parse("monomial:0").is_err());
        assert!(Target::parse("cosh").is_err());
        assert!(Target::parse("exp").unwrap().sweep_target().is_err());
    }
}
