//! Linear-domain GA variants: Chung's fit and Ha's small-mean correction.
//!
//! These evaluate `phi = 1 - psi` directly and invert it by bisection, so
//! they inherit the cancellation in `1 - (1 - phi)^2` once `phi` drops below
//! machine epsilon, and Chung's fit has `phi(0+) = e^b > 1`. Both defects
//! are kept as-is; they are what separates these variants from the
//! log-domain kernel.

use super::constants;

/// `phi(gamma)` under Chung's fit, with the averaged large-mean bound above
/// the Chung threshold.
pub fn phi_conventional(gamma: f64) -> f64 {
    let k = constants();
    if gamma <= 0.0 {
        return k.chung_b.exp();
    }
    if gamma <= k.gamma_2 {
        (k.chung_a * gamma.powf(k.chung_c) + k.chung_b).exp()
    } else {
        phi_large_bound_average(gamma)
    }
}

/// `phi(gamma)` with Ha's quadratic-exponent correction below `Gamma'_th`.
pub fn phi_ha(gamma: f64) -> f64 {
    let k = constants();
    if gamma <= 0.0 {
        return 1.0;
    }
    if gamma < k.ha_threshold {
        (k.ha_alpha * gamma + k.ha_beta * gamma * gamma).exp()
    } else {
        phi_conventional(gamma)
    }
}

fn phi_large_bound_average(gamma: f64) -> f64 {
    (std::f64::consts::PI / gamma).sqrt() * (-gamma / 4.0).exp() * (1.0 - 10.0 / (7.0 * gamma))
}

/// `phi^{-1}(target)` by bisection on `[0, hi]`, `hi` doubled until it brackets.
///
/// `phi` is only piecewise monotone (the fits do not join continuously at the
/// Chung threshold); the bisection keeps `phi(lo) > target >= phi(hi)` and
/// returns whichever crossing it lands on.
pub fn phi_inverse(phi: impl Fn(f64) -> f64, target: f64) -> f64 {
    if target >= phi(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while phi(hi) > target {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return f64::MAX;
        }
    }
    for _ in 0..super::BISECTION_MAX_ITER {
        if hi - lo <= super::BISECTION_REL_TOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if phi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Check-node mean update `phi^{-1}(1 - (1 - phi(gamma))^2)` evaluated
/// literally in the linear domain.
pub fn check_node_linear(phi: impl Fn(f64) -> f64, gamma: f64) -> f64 {
    if gamma <= 0.0 {
        return 0.0;
    }
    let p = phi(gamma);
    let target = 1.0 - (1.0 - p) * (1.0 - p);
    phi_inverse(phi, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chung_fit_exceeds_one_near_zero() {
        assert!(phi_conventional(1e-9) > 1.0);
        assert!((phi_conventional(0.0) - 0.0218_f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn ha_correction_is_continuous_at_its_threshold() {
        let t = constants().ha_threshold;
        let below = phi_ha(t * (1.0 - 1e-12));
        let above = phi_ha(t);
        assert!((below - above).abs() < 1e-5, "{below} vs {above}");
    }

    #[test]
    fn inverse_recovers_input_on_monotone_pieces() {
        for &g in &[0.05, 0.5, 1.0, 3.0, 9.0, 20.0, 80.0] {
            let back = phi_inverse(phi_ha, phi_ha(g));
            assert!((back - g).abs() <= 1e-9 * g, "{g} -> {back}");
        }
    }

    #[test]
    fn large_mean_cancellation_is_preserved() {
        // phi(400) ~ 1e-44: 1 - (1 - phi)^2 rounds to zero in binary64
        assert_eq!(1.0 - (1.0 - phi_conventional(400.0)).powi(2), 0.0);
        let out = check_node_linear(phi_conventional, 400.0);
        assert!((out - (400.0 - 4.0 * 2f64.ln())).abs() > 1.0);
    }
}
