use std::f64::consts::{PI, SQRT_2};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::codec::boxplus;
use crate::error::{Error, Result};
use crate::ga_kernel::{q_func, LogPhi};

use super::quadrature::{integrate, QuadratureSpec};

/// Mean at which [`exact_mean_boxplus`] switches from the rescaled form to
/// the direct form of the integral.
pub const EXACT_MEAN_SWITCH: f64 = 4.0;

/// Smallest sample count accepted by the Monte-Carlo means.
pub const MC_MIN_TRIALS: usize = 10_000;

fn check_gamma(func: &'static str, gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("gamma = {gamma} must be positive and finite")))
    }
}

/// `E[tanh(L/2)]` for `L ~ N(γ, 2γ)` by adaptive quadrature.
pub fn psi_numeric(gamma: f64) -> Result<f64> {
    psi_numeric_with(gamma, &QuadratureSpec::default())
}

pub fn psi_numeric_with(gamma: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_gamma("psi_numeric", gamma)?;
    let var2 = 4.0 * gamma;
    let sd = (2.0 * gamma).sqrt();
    let norm = (PI * var2).sqrt();
    let f = |x: f64| (0.5 * x).tanh() * (-(x - gamma).powi(2) / var2).exp() / norm;
    let w = spec.half_width_sd * sd;
    let r = integrate(f, gamma - w, gamma + w, &[0.0, gamma, gamma - sd, gamma + sd], spec)?;
    Ok(r.value)
}

/// `ln(1 - E[tanh(L/2)])` evaluated without forming the difference, so it
/// stays accurate where the value underflows a double.
pub fn xi_numeric(gamma: f64) -> Result<LogPhi> {
    check_gamma("xi_numeric", gamma)?;
    let spec = QuadratureSpec::default();
    // 1 - psi = e^{-γ/4} / sqrt(πγ) * ∫ e^{-x²/4γ} / (2 cosh(x/2)) dx
    let var2 = 4.0 * gamma;
    let f = |x: f64| (-x * x / var2).exp() / (2.0 * (0.5 * x).cosh());
    let half = (spec.half_width_sd * (2.0 * gamma).sqrt()).min(100.0);
    let sd = (2.0 * gamma).sqrt().min(half);
    let r = integrate(f, -half, half, &[-sd, 0.0, sd], &spec)?;
    LogPhi::new(-gamma / 4.0 - 0.5 * (PI * gamma).ln() + r.value.ln())
}

/// `E[La ⊞ Lb]` for independent `La, Lb ~ N(γ, 2γ)`, from the min-sum
/// decomposition and its order-statistics density.
pub fn exact_mean_boxplus(gamma: f64) -> Result<f64> {
    check_gamma("exact_mean_boxplus", gamma)?;
    let spec = QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-15,
        ..QuadratureSpec::default()
    };
    let log1p_exp_neg = |a: f64| (-a).exp().ln_1p();
    if gamma < EXACT_MEAN_SWITCH {
        let s = gamma.sqrt();
        let f = |x: f64| {
            let e = -(-s * x).exp_m1();
            let q = q_func((x - s) / SQRT_2) - q_func((x + s) / SQRT_2);
            let first = s * x * (-(x - s).powi(2) / 4.0).exp() * e * q;
            let l = log1p_exp_neg(s * x);
            let second = l
                * ((-x * x / 8.0).exp()
                    - 0.5 * (-(x - 2.0 * s).powi(2) / 8.0).exp() * (1.0 + (-s * x).exp()));
            first - second / SQRT_2
        };
        let upper = 2.0 * s + 60.0;
        let r = integrate(f, 0.0, upper, &[s, 2.0 * s, 10.0, 30.0], &spec)?;
        Ok(r.value / PI.sqrt())
    } else {
        let sd = (2.0 * gamma).sqrt();
        let f = |z: f64| {
            let e = -(-z).exp_m1();
            let q = q_func((z - gamma) / sd) - q_func((z + gamma) / sd);
            let first = z * (-(z - gamma).powi(2) / (4.0 * gamma)).exp() * e * q;
            let l = log1p_exp_neg(z);
            let second = l
                * ((-z * z / (8.0 * gamma)).exp()
                    - 0.5 * (-(z - 2.0 * gamma).powi(2) / (8.0 * gamma)).exp() * (1.0 + (-z).exp()));
            first - second / SQRT_2
        };
        let upper = gamma + spec.half_width_sd * sd + 60.0;
        let breaks = [1.0, 10.0, 40.0, gamma - sd, gamma, gamma + sd, 2.0 * gamma];
        let r = integrate(f, 0.0, upper, &breaks, &spec)?;
        Ok(r.value / (PI * gamma).sqrt())
    }
}

/// Sample mean of a two-input LLR operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McMean {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

/// Monte-Carlo mean of `op(La, Lb)` for independent `N(γ, 2γ)` inputs.
pub fn mc_mean_pair(
    gamma: f64,
    trials: usize,
    seed: u64,
    op: impl Fn(f64, f64) -> f64,
) -> Result<McMean> {
    if trials < MC_MIN_TRIALS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MC_MIN_TRIALS} trials, got {trials}"
        )));
    }
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::domain("mc_mean_pair", format!("gamma = {gamma}")));
    }
    let normal = Normal::new(gamma, (2.0 * gamma).sqrt())
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Welford
    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 1..=trials {
        let v = op(normal.sample(&mut rng), normal.sample(&mut rng));
        let d = v - mean;
        mean += d / i as f64;
        m2 += d * (v - mean);
    }
    let var = m2 / (trials - 1) as f64;
    Ok(McMean {
        mean,
        std_error: (var / trials as f64).sqrt(),
        trials,
    })
}

/// Monte-Carlo mean of the exact check-node combination.
pub fn mc_mean_boxplus(gamma: f64, trials: usize, seed: u64) -> Result<McMean> {
    mc_mean_pair(gamma, trials, seed, boxplus)
}

#[cfg(test)]
mod tests {
    use super::super::series::{phi_series_large, psi_series_small, SeriesTruncation};
    use super::*;
    use crate::ga_kernel::{check_node_transform, xi_hat, GaVariant};

    #[test]
    fn psi_bounds_and_monotone() {
        let mut prev = 0.0;
        for i in 0..60 {
            let g = 10f64.powf(-3.0 + i as f64 * 0.08);
            let p = psi_numeric(g).unwrap();
            assert!(p > prev && p < 1.0, "gamma {g}");
            prev = p;
        }
        assert!(psi_numeric(0.0).is_err());
    }

    #[test]
    fn psi_small_gamma_slope() {
        for g in [1e-6, 1e-5, 1e-4] {
            assert!((psi_numeric(g).unwrap() / g - 0.5).abs() < g);
        }
    }

    #[test]
    fn psi_stable_under_refinement() {
        let tight = QuadratureSpec {
            rel_tol: 1e-15,
            half_width_sd: 60.0,
            ..QuadratureSpec::default()
        };
        for g in [1e-3, 0.3, 2.0, 17.0, 60.0] {
            let a = psi_numeric(g).unwrap();
            let b = psi_numeric_with(g, &tight).unwrap();
            assert!(((a - b) / a).abs() <= 1e-10, "gamma {g}");
        }
    }

    #[test]
    fn xi_numeric_agrees_with_direct_form() {
        for g in [1e-3, 0.1, 1.0, 5.0, 20.0] {
            let direct = (1.0 - psi_numeric(g).unwrap()).ln();
            let log_domain = xi_numeric(g).unwrap().get();
            assert!((direct - log_domain).abs() < 1e-9 * direct.abs().max(1e-3), "gamma {g}");
        }
    }

    #[test]
    fn psi_at_hundred_matches_asymptotic_form() {
        let g: f64 = 100.0;
        let pi2 = PI * PI;
        let phi = (PI / g).sqrt() * (-g / 4.0).exp() * (1.0 - pi2 / (4.0 * g) + 5.0 * pi2 * pi2 / (32.0 * g * g));
        let num = 1.0 - psi_numeric(g).unwrap();
        assert!((num / phi - 1.0).abs() < 1e-3);
        assert!((xi_numeric(g).unwrap().get() - phi.ln()).abs() < 1e-3);
    }

    #[test]
    fn log_domain_reaches_the_golden_value() {
        let v = xi_numeric(1000.0).unwrap().get();
        assert!((v.exp() / 1.49e-110 - 1.0).abs() < 5e-3);
        assert!((v - phi_series_large(1000.0).unwrap().get()).abs() < 1e-6);
    }

    #[test]
    fn large_series_tracks_numeric() {
        // truncation error of the series falls like γ^-4: 0.105 at 10,
        // 8.2e-3 at 20, 6.2e-4 at 40, 4.4e-5 at 80 (mpmath)
        for (g, tol) in [(10.0, 0.11), (20.0, 1e-2), (40.0, 1e-3), (80.0, 1e-4)] {
            let d = (phi_series_large(g).unwrap().get() - xi_numeric(g).unwrap().get()).abs();
            assert!(d < tol, "gamma {g}: {d}");
        }
    }

    #[test]
    fn small_series_error_is_fourth_order() {
        let t = SeriesTruncation::new(3).unwrap();
        for i in 0..=20 {
            let g = 10f64.powf(-3.0 + i as f64 * 0.1);
            let d = (psi_series_small(g, &t).unwrap() - psi_numeric(g).unwrap()).abs();
            assert!(d / g.powi(4) < 1.0, "gamma {g}: ratio {}", d / g.powi(4));
        }
        let v = psi_series_small(0.2, &t).unwrap();
        assert!((v - psi_numeric(0.2).unwrap()).abs() < 2e-3);
        assert!((v - 0.091_667).abs() < 2e-3);
    }

    #[test]
    fn kernel_tracks_numeric() {
        for i in 0..200 {
            let g = 10f64.powf(-3.0 + i as f64 * (50f64.log10() + 3.0) / 199.0);
            let exact = (1.0 - psi_numeric(g).unwrap()).ln();
            let rel = ((xi_hat(g).unwrap() - exact) / exact).abs();
            assert!(rel <= 2e-2, "gamma {g}: {rel}");
        }
    }

    #[test]
    fn exact_mean_forms_agree_at_switch() {
        // evaluate both forms at the same points by nudging across the switch
        let below = exact_mean_boxplus(EXACT_MEAN_SWITCH * (1.0 - 1e-12)).unwrap();
        let above = exact_mean_boxplus(EXACT_MEAN_SWITCH).unwrap();
        assert!((below - above).abs() < 1e-8 * above);
    }

    #[test]
    fn exact_mean_matches_two_dimensional_grid() {
        // trapezoid over the joint density of both inputs, 6001² points
        let frozen = [
            (0.5, 0.089_139_801_255_111_9),
            (2.0, 0.857_678_998_244_861_6),
            (8.0, 5.637_666_406_960_269),
            (32.0, 27.428_989_471_709_574),
        ];
        for (g, v) in frozen {
            let e = exact_mean_boxplus(g).unwrap();
            assert!((e / v - 1.0).abs() < 1e-9, "gamma {g}: {e} vs {v}");
        }
    }

    #[test]
    fn exact_mean_small_gamma() {
        assert!(exact_mean_boxplus(1e-4).unwrap().abs() < 1e-6);
        assert!(exact_mean_boxplus(0.0).is_err());
    }

    #[test]
    fn exact_mean_matches_mc() {
        for (g, seed) in [(1.0, 1), (3.0, 2), (12.0, 3)] {
            let exact = exact_mean_boxplus(g).unwrap();
            let mc = mc_mean_boxplus(g, 200_000, seed).unwrap();
            assert!((exact - mc.mean).abs() < 3.0 * mc.std_error, "gamma {g}");
        }
    }

    #[test]
    fn exact_mean_below_ga_mean_for_large_gamma() {
        for g in [10.0, 20.0, 50.0] {
            let exact = exact_mean_boxplus(g).unwrap();
            let ga = check_node_transform(g, GaVariant::ImprovedLogDomain);
            assert!(exact < ga, "gamma {g}: exact {exact} ga {ga}");
        }
    }

    #[test]
    fn mc_variable_node_mean() {
        let g = 3.0;
        let mc = mc_mean_pair(g, 100_000, 9, |a, b| a + b).unwrap();
        assert!((mc.mean - 2.0 * g).abs() < 3.0 * mc.std_error);
        let zero = mc_mean_boxplus(0.0, 10_000, 1).unwrap();
        assert_eq!(zero.mean, 0.0);
    }

    #[test]
    fn mc_is_seeded() {
        let a = mc_mean_boxplus(2.0, 10_000, 5).unwrap();
        let b = mc_mean_boxplus(2.0, 10_000, 5).unwrap();
        assert_eq!(a, b);
        assert!(mc_mean_boxplus(2.0, 9_999, 5).is_err());
    }
}
