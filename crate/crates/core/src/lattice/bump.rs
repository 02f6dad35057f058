//! Smooth dyadic partition of unity.
//!
//! The construction telescopes exactly: with `theta(t) = exp(-1/t)` for
//! `t > 0`, `eta = theta(t) / (theta(t) + theta(1-t))` and
//! `plateau(x) = eta(2 - x)`, the bump `chi(x) = plateau(x) - plateau(2x)`
//! is smooth, supported in `[1/2, 2]`, and `sum_j chi(x / 2^j) = 1` for
//! every `x > 0` once the dyadic range covers `x`.

fn theta(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth step: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn eta(t: f64) -> f64 {
    let a = theta(t);
    let b = theta(1.0 - t);
    if a == 0.0 {
        return 0.0;
    }
    a / (a + b)
}

/// Smooth plateau: 1 on `(-inf, 1]`, 0 on `[2, inf)`.
pub fn plateau(x: f64) -> f64 {
    eta(2.0 - x)
}

/// Dyadic bump supported in `[1/2, 2]`; `sum_{N in 2^Z} chi(x/N) = 1` on `x > 0`.
pub fn chi(x: f64) -> f64 {
    plateau(x) - plateau(2.0 * x)
}

/// `chi_N(x) = chi(x / N)`, supported in `[N/2, 2N]`.
pub fn chi_scaled(x: f64, n: f64) -> f64 {
    chi(x / n)
}

/// Dyadic numbers `2^j` covering `[lo, hi]`: from `2^(ceil(log2 lo) - 1)`
/// to `2^(ceil(log2 hi))`.
pub fn dyadic_range(lo: f64, hi: f64) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo, "dyadic range needs 0 < lo <= hi");
    let j_lo = lo.log2().ceil() as i32 - 1;
    let j_hi = hi.log2().ceil() as i32;
    (j_lo..=j_hi).map(|j| (j as f64).exp2()).collect()
}

/// Largest dyadic `2^j <= x` (for `x > 0`).
pub fn dyadic_floor(x: f64) -> f64 {
    (x.log2().floor()).exp2()
}

/// True when `x` is exactly a power of two (2^j for integer j of either sign).
pub fn is_dyadic(x: f64) -> bool {
    x > 0.0 && x.log2().fract() == 0.0 && x.is_finite()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_endpoints() {
        assert_eq!(plateau(1.0), 1.0);
        assert_eq!(plateau(0.3), 1.0);
        assert_eq!(plateau(2.0), 0.0);
        assert_eq!(plateau(5.0), 0.0);
        let mid = plateau(1.5);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn chi_support() {
        assert_eq!(chi(0.49), 0.0);
        assert_eq!(chi(2.01), 0.0);
        assert_eq!(chi(1.0), 1.0);
        assert!(chi(0.75) > 0.0 && chi(0.75) < 1.0);
    }

    #[test]
    fn partition_telescopes() {
        for &x in &[0.013, 0.7, 1.0, 2.0, 3.7, 129.4, 1e6] {
            let sum: f64 = dyadic_range(x / 8.0, x * 8.0)
                .iter()
                .map(|&n| chi_scaled(x, n))
                .sum();
            assert!((sum - 1.0).abs() < 1e-14, "x={x} sum={sum}");
        }
    }

    #[test]
    fn dyadic_range_covers() {
        let r = dyadic_range(1.0, 100.0);
        assert_eq!(r[0], 0.5);
        assert_eq!(*r.last().unwrap(), 128.0);
    }

    #[test]
    fn dyadic_predicate() {
        assert!(is_dyadic(0.25));
        assert!(is_dyadic(64.0));
        assert!(!is_dyadic(3.0));
        assert!(!is_dyadic(0.0));
    }
}
