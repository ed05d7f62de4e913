use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interval::Hyperbox;

/// Hard cap on the number of points a strategy may produce.
pub const MAX_POINTS: usize = 1 << 28;

/// How to choose the finite point set an error is maximised over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// `n` equally spaced points per axis, endpoints included.
    Uniform(usize),
    /// `2^L` points per axis at the odd multiples of `2^{-(L+1)}` of the side.
    DyadicMidpoints(u32),
    /// `n` points drawn uniformly from the box with a seeded ChaCha stream.
    Random { n: usize, seed: u64 },
}

impl Strategy {
    /// Default uniform resolution for a `d`-dimensional box.
    pub fn default_uniform(d: usize) -> Strategy {
        Strategy::Uniform(match d {
            1 => (1 << 15) + 1,
            2 => 513,
            3 => 65,
            _ => 17,
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Strategy::Uniform(_) => "uniform",
            Strategy::DyadicMidpoints(_) => "dyadic",
            Strategy::Random { .. } => "random",
        }
    }

    /// Number of points per axis (grid strategies) or in total (random).
    pub fn resolution(&self) -> usize {
        match *self {
            Strategy::Uniform(n) => n,
            Strategy::DyadicMidpoints(l) => 1usize.checked_shl(l).unwrap_or(0),
            Strategy::Random { n, .. } => n,
        }
    }

    /// Materialise the point set over `b` as a point count and an indexer.
    pub fn points(&self, b: &Hyperbox) -> Result<PointSet> {
        let d = b.dim();
        let res = self.resolution();
        if res == 0 || (matches!(self, Strategy::DyadicMidpoints(l) if *l >= usize::BITS)) {
            return Err(Error::Parameter(format!("{self} yields no points")));
        }
        let count = match self {
            Strategy::Random { n, .. } => Some(*n),
            _ => u32::try_from(d).ok().and_then(|d| res.checked_pow(d)),
        };
        let count = count
            .filter(|&c| c <= MAX_POINTS)
            .ok_or_else(|| Error::Parameter(format!("{self} over {d} dimensions exceeds {MAX_POINTS} points")))?;
        let axes = match *self {
            Strategy::Uniform(n) => b
                .sides()
                .iter()
                .map(|s| {
                    if n == 1 {
                        vec![0.5 * (s.lo + s.hi)]
                    } else {
                        (0..n).map(|i| s.lo + s.width() * (i as f64 / (n - 1) as f64)).collect()
                    }
                })
                .collect(),
            Strategy::DyadicMidpoints(_) => {
                let denom = (2 * res) as f64;
                b.sides()
                    .iter()
                    .map(|s| (0..res).map(|i| s.lo + s.width() * ((2 * i + 1) as f64 / denom)).collect())
                    .collect()
            }
            Strategy::Random { n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let flat: Vec<f64> = (0..n)
                    .flat_map(|_| b.sides().iter().map(|s| s.lo + s.width() * rng.gen::<f64>()).collect::<Vec<_>>())
                    .collect();
                return Ok(PointSet { dim: d, count, kind: Kind::Listed(flat) });
            }
        };
        Ok(PointSet { dim: d, count, kind: Kind::Grid(axes) })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Uniform(n) => write!(f, "uniform:{n}"),
            Strategy::DyadicMidpoints(l) => write!(f, "dyadic:{l}"),
            Strategy::Random { n, seed } => write!(f, "random:{n}:{seed}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// `uniform:N`, `dyadic:L` or `random:N:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("bad strategy {s:?}; expected uniform:N, dyadic:L or random:N:SEED"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["uniform", n] => Ok(Strategy::Uniform(n.parse().map_err(|_| bad())?)),
            ["dyadic", l] => Ok(Strategy::DyadicMidpoints(l.parse().map_err(|_| bad())?)),
            ["random", n, seed] => {
                Ok(Strategy::Random { n: n.parse().map_err(|_| bad())?, seed: seed.parse().map_err(|_| bad())? })
            }
            _ => Err(bad()),
        }
    }
}

enum Kind {
    Grid(Vec<Vec<f64>>),
    Listed(Vec<f64>),
}

/// Indexable point set; grid points are generated on demand.
pub struct PointSet {
    dim: usize,
    count: usize,
    kind: Kind,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Write point `i` into `out` (length `dim`). The first axis varies slowest.
    pub fn fill(&self, mut i: usize, out: &mut [f64]) {
        match &self.kind {
            Kind::Grid(axes) => {
                for (slot, axis) in out.iter_mut().zip(axes).rev() {
                    *slot = axis[i % axis.len()];
                    i /= axis.len();
                }
            }
            Kind::Listed(flat) => out.copy_from_slice(&flat[i * self.dim..(i + 1) * self.dim]),
        }
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.fill(i, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_points() {
        let ps = Strategy::DyadicMidpoints(2).points(&Hyperbox::symmetric(1)).unwrap();
        let xs: Vec<f64> = (0..ps.len()).map(|i| ps.point(i)[0]).collect();
        assert_eq!(xs, [-0.75, -0.25, 0.25, 0.75]);
    }

    #[test]
    fn uniform_grid_order() {
        let ps = Strategy::Uniform(3).points(&Hyperbox::symmetric(2)).unwrap();
        assert_eq!(ps.len(), 9);
        assert_eq!(ps.point(0), [-1.0, -1.0]);
        assert_eq!(ps.point(1), [-1.0, 0.0]);
        assert_eq!(ps.point(8), [1.0, 1.0]);
    }

    #[test]
    fn random_is_seeded() {
        let b = Hyperbox::cube(2, 0.0, 0.5);
        let a = Strategy::Random { n: 50, seed: 9 }.points(&b).unwrap();
        let c = Strategy::Random { n: 50, seed: 9 }.points(&b).unwrap();
        let e = Strategy::Random { n: 50, seed: 10 }.points(&b).unwrap();
        for i in 0..50 {
            assert_eq!(a.point(i), c.point(i));
            assert!(b.contains(&a.point(i)));
        }
        assert_ne!(a.point(0), e.point(0));
    }

    #[test]
    fn rejects_empty_and_huge() {
        let b = Hyperbox::symmetric(3);
        assert!(Strategy::Uniform(0).points(&b).is_err());
        assert!(Strategy::Random { n: 0, seed: 1 }.points(&b).is_err());
        assert!(Strategy::Uniform(100_000).points(&b).is_err());
        assert!(Strategy::DyadicMidpoints(70).points(&b).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["uniform:513", "dyadic:7", "random:100:42"] {
            assert_eq!(s.parse::<Strategy>().unwrap().to_string(), s);
        }
        assert!("uniform".parse::<Strategy>().is_err());
        assert!("grid:4".parse::<Strategy>().is_err());
        assert!("random:4".parse::<Strategy>().is_err());
    }
}
