use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Method;

/// How a code was designed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub method: Method,
    pub design_snr_db: f64,
}

/// A designed polar code: length `2^n`, `K` information positions, all
/// frozen positions fixed to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCodeSpec {
    n: u32,
    info_set: Vec<usize>,
    record: ConstructionRecord,
}

impl PolarCodeSpec {
    /// Builds a spec from an information set; indices are sorted and must
    /// be distinct and below `2^n`.
    pub fn new(n: u32, mut info_set: Vec<usize>, record: ConstructionRecord) -> Result<Self> {
        if n > 30 {
            return Err(Error::InvalidArgument(format!("n = {n} is too large")));
        }
        let len = 1usize << n;
        info_set.sort_unstable();
        if info_set.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate index in information set".into()));
        }
        if let Some(&last) = info_set.last() {
            if last >= len {
                return Err(Error::InvalidArgument(format!(
                    "information index {last} out of range for N = {len}"
                )));
            }
        }
        Ok(PolarCodeSpec {
            n,
            info_set,
            record,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Code length `N = 2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of information bits.
    pub fn k(&self) -> usize {
        self.info_set.len()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.len() as f64
    }

    /// Information positions in ascending order.
    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn record(&self) -> &ConstructionRecord {
        &self.record
    }

    /// `mask[i]` is true when input bit `i` carries information.
    pub fn info_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        for &i in &self.info_set {
            mask[i] = true;
        }
        mask
    }

    /// Frozen positions in ascending order.
    pub fn frozen_set(&self) -> Vec<usize> {
        let mask = self.info_mask();
        (0..self.len()).filter(|&i| !mask[i]).collect()
    }
}
