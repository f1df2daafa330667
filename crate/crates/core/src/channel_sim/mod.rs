//! BPSK over AWGN, seeded Monte-Carlo BLER campaigns and the genie-aided
//! bit-channel probe.
//!
//! Every block draws from its own ChaCha stream keyed by the master seed and
//! the block index, so tallies do not depend on how blocks are spread over
//! threads.

mod campaign;
mod genie;
mod trials;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::codec::Llr;
use crate::error::{Error, Result};

pub use campaign::{append_campaign, campaign_csv, read_campaign, write_campaign, CampaignRecord, CAMPAIGN_COLUMNS};
pub use genie::{genie_bit_channel_probe, spearman, GenieProbe};
pub use trials::{
    run_trials, wilson_interval, SimResult, StopReason, TrialConfig, DEFAULT_MAX_BLOCKS,
    DEFAULT_TARGET_ERRORS,
};

/// Es/N0 with Es fixed to 1. Stored linear.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ChannelSnr(f64);

impl ChannelSnr {
    pub fn from_linear(value: f64) -> Result<Self> {
        if value > 0.0 && !value.is_nan() {
            Ok(ChannelSnr(value))
        } else {
            Err(Error::InvalidArgument(format!("channel SNR must be positive, got {value}")))
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

    /// Noise density for unit symbol energy.
    pub fn n0(self) -> f64 {
        1.0 / self.0
    }

    /// Standard deviation of each noise sample, `sqrt(N0 / 2)`.
    pub fn sigma(self) -> f64 {
        (0.5 * self.n0()).sqrt()
    }

    /// Scale from a received sample to its LLR, `4 / N0`.
    pub fn llr_scale(self) -> f64 {
        4.0 * self.0
    }
}

/// Maps bits to `±1` and adds Gaussian noise of variance `N0/2`.
pub fn bpsk_awgn(x: &[u8], snr: ChannelSnr, rng: &mut impl Rng) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    bpsk_awgn_into(x, snr, rng, &mut y);
    y
}

/// [`bpsk_awgn`] writing into `out`.
pub fn bpsk_awgn_into(x: &[u8], snr: ChannelSnr, rng: &mut impl Rng, out: &mut [f64]) {
    let sigma = snr.sigma();
    for (o, &b) in out.iter_mut().zip(x) {
        let s = 1.0 - 2.0 * f64::from(b);
        let z: f64 = rng.sample(StandardNormal);
        *o = s + sigma * z;
    }
}

/// Channel LLRs of received samples, in place.
pub fn samples_to_llrs(y: &mut [f64], snr: ChannelSnr) {
    let scale = snr.llr_scale();
    y.iter_mut().for_each(|v| *v *= scale);
}

pub(crate) fn llrs_into(x: &[u8], snr: ChannelSnr, rng: &mut impl Rng, out: &mut [Llr]) {
    bpsk_awgn_into(x, snr, rng, out);
    samples_to_llrs(out, snr);
}
