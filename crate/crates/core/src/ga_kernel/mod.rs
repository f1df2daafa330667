//! Scalar kernels of the Gaussian approximation.
//!
//! An LLR modelled as `N(gamma, 2 gamma)` is summarised by its mean `gamma`.
//! The check-node update needs `phi(gamma) = 1 - E[tanh(L/2)]` and its
//! inverse; `phi` spans hundreds of decades over the means met in long
//! codes, so the improved kernel works with `xi = ln phi` through a
//! piecewise closed form [`xi_hat`] and its inverse [`xi_hat_inv`].

mod chung;
mod qfunc;

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chung::{check_node_linear, phi_conventional, phi_ha, phi_inverse};
pub use qfunc::{q_func, q_inv};

/// Relative bisection tolerance on `gamma`.
pub const BISECTION_REL_TOL: f64 = 1e-12;
pub const BISECTION_MAX_ITER: usize = 200;

/// Mean of a Gaussian-modelled LLR, `L ~ N(gamma, 2 gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct MeanLlr(f64);

impl MeanLlr {
    pub const ZERO: MeanLlr = MeanLlr(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(MeanLlr(value))
        } else {
            Err(Error::domain("MeanLlr", format!("{value} is not a finite non-negative mean")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn xi_hat(self) -> Result<LogPhi> {
        xi_hat(self.0).map(LogPhi)
    }
}

impl TryFrom<f64> for MeanLlr {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        MeanLlr::new(v)
    }
}

impl From<MeanLlr> for f64 {
    fn from(m: MeanLlr) -> f64 {
        m.0
    }
}

/// `ln phi(gamma)`, strictly negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogPhi(f64);

impl LogPhi {
    pub fn new(value: f64) -> Result<Self> {
        if value < 0.0 && !value.is_nan() {
            Ok(LogPhi(value))
        } else {
            Err(Error::domain("LogPhi", format!("{value} is not negative")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn inverse(self) -> MeanLlr {
        MeanLlr(xi_hat_inv_unchecked(self.0))
    }
}

/// Fitted constants of the piecewise kernel and of the comparison variants.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelConstants {
    /// Quadratic fit on `(gamma_0, gamma_1]`.
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    /// Chung's power fit `ln phi = a gamma^c + b`.
    pub chung_a: f64,
    pub chung_b: f64,
    pub chung_c: f64,
    /// Fitting constant of the large-mean asymptotic branch.
    pub kappa0: f64,
    pub gamma_0: f64,
    pub gamma_1: f64,
    pub gamma_2: f64,
    /// `z_i = xi_hat(gamma_i)`, derived from the implemented kernel.
    pub z_0: f64,
    pub z_1: f64,
    pub z_2: f64,
    /// Ha's correction `ln phi = alpha gamma + beta gamma^2` below `ha_threshold`.
    pub ha_alpha: f64,
    pub ha_beta: f64,
    pub ha_threshold: f64,
}

impl KernelConstants {
    fn build() -> Self {
        let mut k = KernelConstants {
            a0: -0.002706,
            a1: -0.476711,
            a2: 0.0512,
            chung_a: -0.4527,
            chung_b: 0.0218,
            chung_c: 0.86,
            kappa0: 8.554,
            gamma_0: 0.2,
            gamma_1: 0.7,
            gamma_2: 10.0,
            z_0: 0.0,
            z_1: 0.0,
            z_2: 0.0,
            ha_alpha: -0.4856,
            ha_beta: 0.0564,
            ha_threshold: 0.867861,
        };
        k.z_0 = xi_hat_with(&k, k.gamma_0);
        k.z_1 = xi_hat_with(&k, k.gamma_1);
        k.z_2 = xi_hat_with(&k, k.gamma_2);
        debug_assert!(k.z_0 > k.z_1 && k.z_1 > k.z_2);
        k
    }
}

static CONSTANTS: LazyLock<KernelConstants> = LazyLock::new(KernelConstants::build);

pub fn constants() -> &'static KernelConstants {
    &CONSTANTS
}

/// Which approximation of `phi` drives the check-node update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaVariant {
    /// Piecewise log-domain kernel.
    ImprovedLogDomain,
    /// Chung's fit with the averaged large-mean bound, linear domain.
    ConventionalChung,
    /// Chung's fit with Ha's correction near zero, linear domain.
    HaModified,
}

impl GaVariant {
    pub const ALL: [GaVariant; 3] = [
        GaVariant::ImprovedLogDomain,
        GaVariant::ConventionalChung,
        GaVariant::HaModified,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GaVariant::ImprovedLogDomain => "improved-ga",
            GaVariant::ConventionalChung => "conventional-ga",
            GaVariant::HaModified => "ha-ga",
        }
    }
}

impl fmt::Display for GaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GaVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown GA variant '{s}'")))
    }
}

fn xi_hat_with(k: &KernelConstants, g: f64) -> f64 {
    // gamma_0 itself takes the quadratic so it round-trips through the
    // closed-form root rather than the series inverse
    if g < k.gamma_0 {
        -0.5 * g + 0.125 * g * g - 0.125 * g * g * g
    } else if g <= k.gamma_1 {
        k.a0 + k.a1 * g + k.a2 * g * g
    } else if g < k.gamma_2 {
        k.chung_a * g.powf(k.chung_c) + k.chung_b
    } else {
        xi_large_branch(k, g)
    }
}

fn xi_large_branch(k: &KernelConstants, g: f64) -> f64 {
    use std::f64::consts::PI;
    let corr = 1.0 - PI * PI / (4.0 * g) + k.kappa0 / (g * g);
    -0.25 * g + 0.5 * PI.ln() - 0.5 * g.ln() + corr.ln()
}

/// Piecewise closed-form approximation of `ln phi(gamma)`.
pub fn xi_hat(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain("xi_hat", format!("gamma = {gamma} must be positive and finite")));
    }
    Ok(xi_hat_with(constants(), gamma))
}

/// Inverse of [`xi_hat`]; closed forms on the three lower branches and a
/// bisection on the asymptotic branch.
pub fn xi_hat_inv(z: f64) -> Result<f64> {
    if !(z < 0.0) {
        return Err(Error::domain("xi_hat_inv", format!("z = {z} must be negative")));
    }
    Ok(xi_hat_inv_unchecked(z))
}

fn xi_hat_inv_unchecked(z: f64) -> f64 {
    let k = constants();
    if z > k.z_0 {
        -2.0 * z + z * z + z * z * z
    } else if z >= k.z_1 {
        let disc = k.a1 * k.a1 - 4.0 * k.a2 * (k.a0 - z);
        (-k.a1 - disc.sqrt()) / (2.0 * k.a2)
    } else if z > k.z_2 {
        ((z - k.chung_b) / k.chung_a).powf(1.0 / k.chung_c)
    } else {
        invert_large_branch(k, z)
    }
}

fn invert_large_branch(k: &KernelConstants, z: f64) -> f64 {
    let mut lo = k.gamma_2;
    let mut hi = (4.0 * k.gamma_2).max(-8.0 * z);
    while xi_large_branch(k, hi) > z {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_REL_TOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if xi_large_branch(k, mid) > z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Quartic small-mean expansion of the check-node map.
fn check_node_small(g: f64) -> f64 {
    let g2 = g * g;
    0.5 * g2 - 0.5 * g2 * g + (2.0 / 3.0) * g2 * g2
}

fn check_node_improved(g: f64) -> f64 {
    let k = constants();
    if g <= k.gamma_0 {
        return check_node_small(g);
    }
    let z = xi_hat_with(k, g);
    let z_out = z + (2.0 - z.exp()).ln();
    if z_out >= 0.0 {
        return 0.0;
    }
    xi_hat_inv_unchecked(z_out)
}

/// Mean-LLR map of a check node, `psi^{-1}(psi(gamma)^2)`, under `variant`.
///
/// Non-positive input is a fully degraded channel and maps to 0.
pub fn check_node_transform(gamma: f64, variant: GaVariant) -> f64 {
    if gamma <= 0.0 {
        return 0.0;
    }
    match variant {
        GaVariant::ImprovedLogDomain => check_node_improved(gamma),
        GaVariant::ConventionalChung => check_node_linear(phi_conventional, gamma),
        GaVariant::HaModified => check_node_linear(phi_ha, gamma),
    }
}

/// Mean-LLR map of a variable node: the two independent means add.
///
/// Saturates at `f64::MAX` instead of overflowing to infinity.
pub fn variable_node_transform(gamma: f64) -> f64 {
    let out = 2.0 * gamma;
    if out.is_infinite() {
        f64::MAX
    } else {
        out
    }
}

/// Large-mean asymptote of the check-node map, `gamma - 4 ln 2`.
pub fn check_node_asymptote(gamma: f64) -> f64 {
    gamma - 4.0 * std::f64::consts::LN_2
}
