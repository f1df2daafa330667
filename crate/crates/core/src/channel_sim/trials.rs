use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codec::{encode, ScDecoder};
use crate::construction::PolarCodeSpec;
use crate::error::{Error, Result};

use super::{llrs_into, ChannelSnr};

/// Block errors after which a campaign point stops by default.
pub const DEFAULT_TARGET_ERRORS: u64 = 100;

/// Block budget of a campaign point by default.
pub const DEFAULT_MAX_BLOCKS: u64 = 10_000_000;

/// One Monte-Carlo point.
#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub code: PolarCodeSpec,
    pub snr: ChannelSnr,
    pub max_blocks: u64,
    pub target_block_errors: u64,
    pub seed: u64,
    /// Threads used; 0 means the rayon default.
    pub workers: usize,
    /// Send the all-zero codeword instead of random messages.
    pub all_zero: bool,
}

impl TrialConfig {
    pub fn new(code: PolarCodeSpec, snr: ChannelSnr, seed: u64) -> Self {
        TrialConfig {
            code,
            snr,
            max_blocks: DEFAULT_MAX_BLOCKS,
            target_block_errors: DEFAULT_TARGET_ERRORS,
            seed,
            workers: 0,
            all_zero: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    TargetErrors,
    MaxBlocks,
}

/// Tallies of a finished point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub blocks: u64,
    pub block_errors: u64,
    pub bit_errors: u64,
    pub bler: f64,
    pub ber: f64,
    /// Wilson 95% interval on the BLER.
    pub interval: (f64, f64),
    pub seed: u64,
    pub stop: StopReason,
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

pub(crate) fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

struct Worker {
    decoder: ScDecoder,
    llr: Vec<f64>,
    msg: Vec<u8>,
}

fn one_block(cfg: &TrialConfig, w: &mut Worker, block: u64) -> Result<u64> {
    let mut rng = block_rng(cfg.seed, block);
    if cfg.all_zero {
        w.msg.iter_mut().for_each(|b| *b = 0);
    } else {
        w.msg.iter_mut().for_each(|b| *b = rng.gen::<u8>() & 1);
    }
    let x = encode(&cfg.code, &w.msg)?;
    llrs_into(&x, cfg.snr, &mut rng, &mut w.llr);
    let out = w.decoder.decode(&w.llr)?;
    Ok(out.message.iter().zip(&w.msg).filter(|(a, b)| a != b).count() as u64)
}

/// Runs blocks until the error target or the block budget is reached.
///
/// Blocks are evaluated in parallel in chunks and tallied in index order;
/// the run stops at the first block whose error brings the count to the
/// target, so the result is identical for every worker count.
pub fn run_trials(cfg: &TrialConfig) -> Result<SimResult> {
    if cfg.max_blocks == 0 || cfg.target_block_errors == 0 {
        return Err(Error::InvalidArgument(
            "max_blocks and target_block_errors must be positive".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let threads = pool.current_num_threads() as u64;
    let chunk = (64 * threads).max(256);
    let k = cfg.code.k() as u64;

    let (mut blocks, mut block_errors, mut bit_errors) = (0u64, 0u64, 0u64);
    let mut stop = StopReason::MaxBlocks;
    'outer: while blocks < cfg.max_blocks {
        let end = (blocks + chunk).min(cfg.max_blocks);
        let outcomes: Vec<u64> = pool.install(|| {
            (blocks..end)
                .into_par_iter()
                .map_init(
                    || Worker {
                        decoder: ScDecoder::new(&cfg.code),
                        llr: vec![0.0; cfg.code.len()],
                        msg: vec![0; cfg.code.k()],
                    },
                    |w, b| one_block(cfg, w, b),
                )
                .collect::<Result<_>>()
        })?;
        for errs in outcomes {
            blocks += 1;
            bit_errors += errs;
            if errs > 0 {
                block_errors += 1;
                if block_errors >= cfg.target_block_errors {
                    stop = StopReason::TargetErrors;
                    break 'outer;
                }
            }
        }
    }
    let bler = block_errors as f64 / blocks as f64;
    let ber = if k == 0 { 0.0 } else { bit_errors as f64 / (blocks * k) as f64 };
    Ok(SimResult {
        blocks,
        block_errors,
        bit_errors,
        bler,
        ber,
        interval: wilson_interval(block_errors, blocks),
        seed: cfg.seed,
        stop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{ConstructionRecord, Method};
    use crate::ga_kernel::q_func;

    fn spec(n: u32, info: Vec<usize>) -> PolarCodeSpec {
        let record = ConstructionRecord {
            method: Method::IMPROVED,
            design_snr_db: 0.0,
        };
        PolarCodeSpec::new(n, info, record).unwrap()
    }

    #[test]
    fn wilson_known_values() {
        let (lo, hi) = wilson_interval(10, 100);
        assert!((lo - 0.055_229).abs() < 1e-5 && (hi - 0.174_366).abs() < 1e-5);
        let (lo, hi) = wilson_interval(0, 50);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.071_348).abs() < 1e-5);
    }

    #[test]
    fn repetition_code_ber() {
        let code = spec(1, vec![1]);
        let mut cfg = TrialConfig::new(code, ChannelSnr::from_linear(1.0).unwrap(), 3);
        cfg.max_blocks = 400_000;
        cfg.target_block_errors = u64::MAX;
        let r = run_trials(&cfg).unwrap();
        let p = q_func(2.0);
        let se = (p * (1.0 - p) / r.blocks as f64).sqrt();
        assert!((r.ber - p).abs() < 3.0 * se, "{} vs {p}", r.ber);
        assert_eq!(r.stop, StopReason::MaxBlocks);
        assert_eq!(r.blocks, 400_000);
    }

    #[test]
    fn full_rate_code_at_high_snr() {
        let code = spec(4, (0..16).collect());
        let mut cfg = TrialConfig::new(code, ChannelSnr::from_db(20.0).unwrap(), 4);
        cfg.max_blocks = 5_000;
        let r = run_trials(&cfg).unwrap();
        assert_eq!(r.block_errors, 0);
        assert_eq!(r.bler, 0.0);
    }

    #[test]
    fn stops_at_target() {
        let code = spec(3, (0..8).collect());
        let mut cfg = TrialConfig::new(code, ChannelSnr::from_db(0.0).unwrap(), 5);
        cfg.target_block_errors = 37;
        let r = run_trials(&cfg).unwrap();
        assert_eq!(r.block_errors, 37);
        assert_eq!(r.stop, StopReason::TargetErrors);
        assert!(r.interval.0 <= r.bler && r.bler <= r.interval.1);
    }

    #[test]
    fn identical_for_any_worker_count() {
        let code = spec(6, (20..64).collect());
        let mut cfg = TrialConfig::new(code, ChannelSnr::from_db(1.0).unwrap(), 11);
        cfg.target_block_errors = 50;
        cfg.workers = 1;
        let one = run_trials(&cfg).unwrap();
        for w in [2, 3, 8] {
            cfg.workers = w;
            assert_eq!(run_trials(&cfg).unwrap(), one);
        }
    }

    #[test]
    fn rejects_empty_budget() {
        let mut cfg = TrialConfig::new(spec(1, vec![1]), ChannelSnr::from_linear(1.0).unwrap(), 0);
        cfg.max_blocks = 0;
        assert!(run_trials(&cfg).is_err());
    }
}
