//! Bit-channel reliabilities, information-set selection and analytic BLER
//! estimation.

mod bler;
mod code;
mod files;
mod polarize;
mod select;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga_kernel::GaVariant;

pub use bler::{
    estimate_bler, find_design_snr, min_estimated_bler, BlerEstimate, DesignSearch,
    DESIGN_SNR_STEP_DB, DESIGN_SNR_WINDOW_DB,
};
pub use code::{ConstructionRecord, PolarCodeSpec};
pub use files::{
    code_spec_text, read_code_spec, read_reliability_csv, write_code_spec, write_reliability_csv,
    CODE_SPEC_FORMAT, RELIABILITY_FORMAT,
};
pub use polarize::{reliabilities, run_flipping, run_ga, FLIP_PROB_MIN, MAX_STAGES};
pub use select::{select_info_set, select_info_set_full_sort, PrefilterThresholds};

/// Es/N0 used to initialise a reliability computation. Stored linear.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DesignSnr(f64);

impl DesignSnr {
    pub fn from_linear(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(DesignSnr(value))
        } else {
            Err(Error::InvalidArgument(format!("SNR must be positive, got {value}")))
        }
    }

    pub fn from_db(db: f64) -> Result<Self> {
        Self::from_linear(10f64.powf(db / 10.0))
    }

    pub fn linear(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        10.0 * self.0.log10()
    }
}

/// Construction method: a GA variant tracing mean LLRs, or the flipping
/// probability recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Ga(GaVariant),
    Flipping,
}

impl Method {
    pub const IMPROVED: Method = Method::Ga(GaVariant::ImprovedLogDomain);
    pub const CONVENTIONAL: Method = Method::Ga(GaVariant::ConventionalChung);
    pub const HA: Method = Method::Ga(GaVariant::HaModified);

    pub const ALL: [Method; 4] = [
        Method::IMPROVED,
        Method::CONVENTIONAL,
        Method::HA,
        Method::Flipping,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ga(v) => v.name(),
            Method::Flipping => "flipping",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown construction method '{s}'")))
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What a [`ReliabilityVector`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReliabilityKind {
    /// GA mean LLR per bit channel; larger is better.
    MeanLlr,
    /// Probability the bit-channel LLR is negative; smaller is better.
    FlipProb,
}

/// Per-bit-channel quality metric, indexed by input bit.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityVector {
    pub kind: ReliabilityKind,
    pub values: Vec<f64>,
    pub n: u32,
    pub design_snr: DesignSnr,
    pub method: Method,
}

impl ReliabilityVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Error probability of bit channel `i` given correct previous decisions.
    pub fn bit_error_prob(&self, i: usize) -> f64 {
        match self.kind {
            ReliabilityKind::MeanLlr => crate::ga_kernel::q_func((self.values[i] / 2.0).sqrt()),
            ReliabilityKind::FlipProb => self.values[i],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_conversion() {
        let s = DesignSnr::from_db(-3.0).unwrap();
        assert!((s.linear() - 0.501_187_233_627_272_2).abs() < 1e-15);
        assert!((s.db() + 3.0).abs() < 1e-12);
        assert_eq!(DesignSnr::from_db(0.0).unwrap().linear(), 1.0);
        assert!(DesignSnr::from_linear(0.0).is_err());
        assert!(DesignSnr::from_linear(-1.0).is_err());
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(serde_json::from_str::<Method>(&json).unwrap(), m);
        }
        assert!("bhattacharyya".parse::<Method>().is_err());
    }
}
