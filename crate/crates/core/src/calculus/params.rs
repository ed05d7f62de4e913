/// Parameter count of a standard ReLU net with `depth` hidden layers of width
/// `width + input_dim + 1`:
///
/// `N = (d+1)(M+d+1) + (M+d+2)^2 (L-1) + (M+d+2)`.
///
/// Arguments are expected to be `>= 1`; `depth = 0` is treated like `depth = 1`.
pub fn count_params(width: usize, depth: usize, input_dim: usize) -> usize {
    let (m, l, d) = (width, depth, input_dim);
    (d + 1) * (m + d + 1) + (m + d + 2) * (m + d + 2) * l.saturating_sub(1) + (m + d + 2)
}

/// How much [`count_params`] exceeds the literal weight-plus-bias count of a
/// standard net with that shape.
///
/// A hidden-to-hidden layer of width `w = M+d+1` holds `w * w` weights and `w`
/// biases, i.e. `(M+d+1)(M+d+2)`. The closed form charges `(M+d+2)^2`, one extra
/// row of `M+d+2` per such layer, so the difference is `(L-1)(M+d+2)`.
pub fn formula_overcount(width: usize, depth: usize, input_dim: usize) -> usize {
    depth.saturating_sub(1) * (width + input_dim + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_case() {
        assert_eq!(count_params(1, 2, 1), 26);
    }

    #[test]
    fn single_layer_drops_middle_term() {
        for (m, d) in [(1, 1), (3, 2), (5, 4)] {
            assert_eq!(count_params(m, 1, d), (d + 1) * (m + d + 1) + (m + d + 2));
        }
    }

    // With M = d the ratio N / ((M+d)^2 L) tends to ((2d+2)/(2d))^2, which is
    // inside [0.5, 2] from d = 3 on (d = 1 gives 4, d = 2 gives 2.25).
    #[test]
    fn quadratic_growth() {
        for d in 3..9 {
            for l in 4..200 {
                let n = count_params(d, l, d) as f64;
                let ratio = n / ((2 * d) * (2 * d) * l) as f64;
                assert!((0.5..=2.0).contains(&ratio), "d={d} L={l} ratio={ratio}");
            }
        }
        for d in 1..3 {
            let limit = ((2 * d + 2) as f64 / (2 * d) as f64).powi(2);
            for l in 4..200 {
                let ratio = count_params(d, l, d) as f64 / ((2 * d) * (2 * d) * l) as f64;
                assert!(ratio <= limit, "d={d} L={l} ratio={ratio}");
            }
        }
    }
}
