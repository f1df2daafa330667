use crate::error::{Error, Result};

use super::{reliabilities, select_info_set, DesignSnr, Method, PolarCodeSpec, ReliabilityVector};

/// Grid step of the design-SNR search.
pub const DESIGN_SNR_STEP_DB: f64 = 0.01;

/// Search window of the design-SNR search, in dB.
pub const DESIGN_SNR_WINDOW_DB: (f64, f64) = (-10.0, 10.0);

/// Analytic block error rate of a code under SC decoding, assuming
/// independent bit-channel errors.
#[derive(Debug, Clone, PartialEq)]
pub struct BlerEstimate {
    pub value: f64,
    /// Error probability of each information channel, in information-set
    /// order.
    pub bit_error_probs: Vec<f64>,
}

/// `1 - prod(1 - P_i)` over the information set, accumulated with log1p.
pub fn estimate_bler(code: &PolarCodeSpec, rel: &ReliabilityVector) -> Result<BlerEstimate> {
    if rel.len() != code.len() {
        return Err(Error::DimensionMismatch {
            expected: code.len(),
            got: rel.len(),
        });
    }
    let bit_error_probs: Vec<f64> = code.info_set().iter().map(|&i| rel.bit_error_prob(i)).collect();
    let log_success: f64 = bit_error_probs.iter().map(|&p| (-p).ln_1p()).sum();
    Ok(BlerEstimate {
        value: -log_success.exp_m1(),
        bit_error_probs,
    })
}

/// Estimate for the code designed at `snr` and evaluated at the same SNR.
pub fn min_estimated_bler(n: u32, k: usize, snr: DesignSnr, method: Method) -> Result<BlerEstimate> {
    let rel = reliabilities(n, snr, method)?;
    let code = select_info_set(&rel, k)?;
    estimate_bler(&code, &rel)
}

/// Outcome of [`find_design_snr`].
#[derive(Debug, Clone, PartialEq)]
pub struct DesignSearch {
    pub snr: DesignSnr,
    /// Minimum estimated BLER at `snr`.
    pub bler: f64,
    /// Number of constructions evaluated.
    pub evaluations: usize,
}

/// Smallest SNR on the 0.01 dB grid whose minimum estimated BLER lies in
/// `[lo, hi]`, found by bisection on the monotone BLER curve.
pub fn find_design_snr(n: u32, k: usize, lo: f64, hi: f64, method: Method) -> Result<DesignSearch> {
    if !(0.0 < lo && lo < hi && hi < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target band must satisfy 0 < lo < hi < 1, got [{lo}, {hi}]"
        )));
    }
    let (w_lo, w_hi) = DESIGN_SNR_WINDOW_DB;
    let per_db = (1.0 / DESIGN_SNR_STEP_DB).round();
    let base = (w_lo * per_db).round() as i64;
    let steps = ((w_hi - w_lo) * per_db).round() as i64;
    // divide so grid points like -1.48 come out as the nearest double
    let db_at = |i: i64| (base + i) as f64 / per_db;
    let mut evaluations = 0;
    let mut bler_at = |i: i64| -> Result<f64> {
        evaluations += 1;
        Ok(min_estimated_bler(n, k, DesignSnr::from_db(db_at(i))?, method)?.value)
    };
    let no_solution = || Error::NoDesignSnr { lo_db: w_lo, hi_db: w_hi };

    // invariant: bler(left) > hi >= bler(right)
    let mut right = steps;
    let mut right_bler = bler_at(right)?;
    if right_bler > hi {
        return Err(no_solution());
    }
    let first = bler_at(0)?;
    if first <= hi {
        right = 0;
        right_bler = first;
    } else {
        let mut left = 0;
        while right - left > 1 {
            let mid = left + (right - left) / 2;
            let b = bler_at(mid)?;
            if b <= hi {
                right = mid;
                right_bler = b;
            } else {
                left = mid;
            }
        }
    }
    if right_bler < lo {
        return Err(no_solution());
    }
    Ok(DesignSearch {
        snr: DesignSnr::from_db(db_at(right))?,
        bler: right_bler,
        evaluations,
    })
}
