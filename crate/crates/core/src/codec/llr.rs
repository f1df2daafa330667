/// Log-likelihood ratio `ln p(y|0) / p(y|1)`. Infinite values are
/// saturated certainties; NaN is never produced by this module.
pub type Llr = f64;

/// Min-sum part of the check-node combination.
#[inline]
pub fn min_sum(a: Llr, b: Llr) -> Llr {
    let mag = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -mag
    } else {
        mag
    }
}

/// Exact check-node combination `2 atanh(tanh(a/2) tanh(b/2))`, evaluated as
/// the min-sum term plus both correction terms.
#[inline]
pub fn boxplus(a: Llr, b: Llr) -> Llr {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    if a.is_infinite() {
        return if a > 0.0 { b } else { -b };
    }
    if b.is_infinite() {
        return if b > 0.0 { a } else { -a };
    }
    min_sum(a, b) + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

/// Direct tanh form of [`boxplus`]; loses precision for large magnitudes.
pub fn boxplus_tanh(a: Llr, b: Llr) -> Llr {
    2.0 * ((0.5 * a).tanh() * (0.5 * b).tanh()).atanh()
}

/// Channel LLR of a BPSK/AWGN sample, `4 sqrt(Es) y / N0`.
#[inline]
pub fn channel_llr(y: f64, es: f64, n0: f64) -> Llr {
    4.0 * es.sqrt() / n0 * y
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_annihilates() {
        assert_eq!(boxplus(3.0, 0.0), 0.0);
        assert_eq!(boxplus(0.0, -7.0), 0.0);
        assert_eq!(boxplus(f64::INFINITY, 0.0), 0.0);
    }

    #[test]
    fn infinity_is_identity() {
        assert_eq!(boxplus(f64::INFINITY, 2.5), 2.5);
        assert_eq!(boxplus(-1.5, f64::INFINITY), -1.5);
        assert_eq!(boxplus(f64::NEG_INFINITY, 2.5), -2.5);
        assert_eq!(boxplus(f64::INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
        assert_eq!(boxplus(f64::NEG_INFINITY, f64::NEG_INFINITY), f64::INFINITY);
    }

    #[test]
    fn two_three_matches_tanh_form() {
        let oracle = 2.0 * ((1.0f64).tanh() * (1.5f64).tanh()).atanh();
        assert!((boxplus(2.0, 3.0) - oracle).abs() < 1e-13);
        assert!((boxplus(2.0, 3.0) - 1.693_453_660_970_895).abs() < 1e-12);
    }

    #[test]
    fn large_magnitudes_stay_finite() {
        assert!((boxplus(800.0, 900.0) - 800.0).abs() < 1e-12);
        assert!((boxplus(-800.0, 800.0) + 800.0 - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn channel_llr_examples() {
        assert_eq!(channel_llr(0.0, 1.0, 1.0), 0.0);
        assert_eq!(channel_llr(1.0, 1.0, 1.0), 4.0);
        assert_eq!(channel_llr(-0.3, 1.0, 0.5), -channel_llr(0.3, 1.0, 0.5));
    }

    proptest! {
        #[test]
        fn commutative(a in -60.0f64..60.0, b in -60.0f64..60.0) {
            prop_assert!((boxplus(a, b) - boxplus(b, a)).abs() <= 1e-12);
        }

        #[test]
        fn associative(a in -30.0f64..30.0, b in -30.0f64..30.0, c in -30.0f64..30.0) {
            let l = boxplus(boxplus(a, b), c);
            let r = boxplus(a, boxplus(b, c));
            prop_assert!((l - r).abs() <= 1e-12, "{} vs {}", l, r);
        }

        #[test]
        fn sign_and_magnitude(a in -100.0f64..100.0, b in -100.0f64..100.0) {
            let out = boxplus(a, b);
            prop_assert!(out.abs() <= a.abs().min(b.abs()) + 1e-15);
            if out != 0.0 {
                prop_assert_eq!(out < 0.0, (a < 0.0) != (b < 0.0));
            }
        }

        #[test]
        fn within_ln2_of_min_sum(a in -200.0f64..200.0, b in -200.0f64..200.0) {
            prop_assert!((boxplus(a, b) - min_sum(a, b)).abs() <= std::f64::consts::LN_2);
        }

        #[test]
        fn agrees_with_tanh_form(a in -15.0f64..15.0, b in -15.0f64..15.0) {
            prop_assert!((boxplus(a, b) - boxplus_tanh(a, b)).abs() <= 1e-9);
        }
    }
}
