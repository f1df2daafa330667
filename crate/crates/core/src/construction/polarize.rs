use crate::error::{Error, Result};
use crate::ga_kernel::{check_node_transform, q_func, q_inv, variable_node_transform};

use super::{DesignSnr, Method, ReliabilityKind, ReliabilityVector};

/// Largest supported number of polarization stages.
pub const MAX_STAGES: u32 = 22;

/// Lower clamp for flipping probabilities.
pub const FLIP_PROB_MIN: f64 = 1e-300;

fn check_stages(n: u32) -> Result<usize> {
    if !(1..=MAX_STAGES).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n must be in 1..={MAX_STAGES}, got {n}"
        )));
    }
    Ok(1usize << n)
}

/// In-place butterfly shared by both recursions: at each stage entry `j`
/// of the first half becomes the check-node child and `j + J/2` the
/// variable-node child of the old `j`.
fn butterfly(values: &mut [f64], n: u32, check: impl Fn(f64) -> f64, var: impl Fn(f64) -> f64) {
    for stage in 1..=n {
        let half = 1usize << (stage - 1);
        for j in 0..half {
            let u = values[j];
            values[j] = check(u);
            values[j + half] = var(u);
        }
    }
}

/// Mean LLR of every bit channel under the Gaussian approximation.
pub fn run_ga(n: u32, snr: DesignSnr, variant: crate::ga_kernel::GaVariant) -> Result<ReliabilityVector> {
    let len = check_stages(n)?;
    let mut values = vec![0.0; len];
    values[0] = 4.0 * snr.linear();
    butterfly(
        &mut values,
        n,
        |g| check_node_transform(g, variant),
        variable_node_transform,
    );
    Ok(ReliabilityVector {
        kind: ReliabilityKind::MeanLlr,
        values,
        n,
        design_snr: snr,
        method: Method::Ga(variant),
    })
}

/// Probability that each bit-channel LLR has the wrong sign, tracked
/// through the hard-decision recursion.
pub fn run_flipping(n: u32, snr: DesignSnr) -> Result<ReliabilityVector> {
    let len = check_stages(n)?;
    let clamp = |p: f64| p.clamp(FLIP_PROB_MIN, 0.5);
    let mut values = vec![0.0; len];
    values[0] = clamp(q_func((2.0 * snr.linear()).sqrt()));
    butterfly(
        &mut values,
        n,
        |p| clamp(2.0 * p * (1.0 - p)),
        // p is already clamped into the domain of q_inv
        |p| clamp(q_func(std::f64::consts::SQRT_2 * q_inv(p).unwrap_or(0.0))),
    );
    Ok(ReliabilityVector {
        kind: ReliabilityKind::FlipProb,
        values,
        n,
        design_snr: snr,
        method: Method::Flipping,
    })
}

/// Dispatches on `method`.
pub fn reliabilities(n: u32, snr: DesignSnr, method: Method) -> Result<ReliabilityVector> {
    match method {
        Method::Ga(v) => run_ga(n, snr, v),
        Method::Flipping => run_flipping(n, snr),
    }
}
