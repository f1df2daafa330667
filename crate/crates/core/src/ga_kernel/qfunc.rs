//! Gaussian tail probability and its inverse.

use crate::error::{Error, Result};

/// Upper bracket beyond which `q_func` has underflowed to zero.
const Q_UNDERFLOW_X: f64 = 40.0;

/// Gaussian tail probability `Q(x) = erfc(x / sqrt(2)) / 2`.
///
/// Saturates to 0 once the tail underflows binary64 (around x = 38.5).
pub fn q_func(x: f64) -> f64 {
    0.5 * libm::erfc(x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Inverse of [`q_func`] on `(0, 1/2]`, computed by bisection.
///
/// The bracket is halved until it can no longer be split in binary64, which
/// keeps `|Q(q_inv(p)) - p|` at the level of the erfc evaluation error.
pub fn q_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 0.5) {
        return Err(Error::domain("q_inv", format!("p = {p} outside (0, 1/2]")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while q_func(hi) > p && hi < Q_UNDERFLOW_X {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if q_func(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick whichever end of the collapsed bracket reproduces p more closely
    let x = if (q_func(lo) - p).abs() <= (q_func(hi) - p).abs() {
        lo
    } else {
        hi
    };
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian tail by composite Simpson on [x, x + 40], independent of erfc.
    fn tail_by_simpson(x: f64) -> f64 {
        let n = 200_000;
        let h = 40.0 / n as f64;
        let f = |t: f64| (-0.5 * t * t).exp();
        let mut s = f(x) + f(x + 40.0);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(x + i as f64 * h);
        }
        s * h / 3.0 / (2.0 * std::f64::consts::PI).sqrt()
    }

    #[test]
    fn q_of_zero_is_half() {
        assert_eq!(q_func(0.0), 0.5);
    }

    #[test]
    fn q_underflows_far_in_the_tail() {
        assert!(q_func(40.0) < 1e-300);
        assert!(q_func(40.0) >= 0.0);
    }

    #[test]
    fn q_of_two_matches_quadrature() {
        let oracle = tail_by_simpson(2.0);
        assert!((oracle - 0.022_750_131_948_179).abs() < 1e-12);
        assert!((q_func(2.0) - oracle).abs() < 1e-12);
    }

    #[test]
    fn q_is_monotone_decreasing() {
        let mut prev = q_func(-10.0);
        for i in -99..400 {
            let q = q_func(i as f64 * 0.1);
            assert!(q <= prev);
            prev = q;
        }
    }

    #[test]
    fn q_inv_known_points() {
        assert_eq!(q_inv(0.5).unwrap(), 0.0);
        assert!((q_inv(q_func(2.0)).unwrap() - 2.0).abs() < 1e-9);
        // value frozen from a bisection on the Simpson tail above
        assert!((q_inv(1e-6).unwrap() - 4.753_424_308_822_899).abs() < 1e-9);
    }

    #[test]
    fn q_inv_bisection_oracle_for_1e_minus_6() {
        let (mut lo, mut hi) = (4.0, 5.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if tail_by_simpson(mid) > 1e-6 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((q_inv(1e-6).unwrap() - 0.5 * (lo + hi)).abs() < 1e-7);
    }

    #[test]
    fn q_inv_relative_round_trip() {
        let mut p = 0.5_f64;
        while p > 1e-300 {
            let x = q_inv(p).unwrap();
            let back = q_func(x);
            assert!(
                (back - p).abs() <= 1e-12 * p,
                "p = {p:e}, x = {x}, Q(x) = {back:e}"
            );
            p *= 0.37;
        }
    }

    #[test]
    fn q_inv_rejects_out_of_domain() {
        assert!(q_inv(0.0).is_err());
        assert!(q_inv(-1e-3).is_err());
        assert!(q_inv(0.5000001).is_err());
        assert!(q_inv(f64::NAN).is_err());
    }
}
