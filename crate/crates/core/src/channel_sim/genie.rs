use rayon::prelude::*;

use crate::codec::ScDecoder;
use crate::error::{Error, Result};

use super::trials::block_rng;
use super::{llrs_into, ChannelSnr};

/// Per-bit-channel error counts from genie-aided SC on all-zero codewords.
#[derive(Debug, Clone, PartialEq)]
pub struct GenieProbe {
    pub n: u32,
    pub blocks: u64,
    pub seed: u64,
    /// Blocks in which bit channel `i` had a negative LLR.
    pub errors: Vec<u64>,
    /// Negative channel LLRs over all blocks and positions.
    pub channel_flips: u64,
}

impl GenieProbe {
    /// Empirical `Pr(L_i < 0)` per bit channel.
    pub fn rates(&self) -> Vec<f64> {
        self.errors.iter().map(|&e| e as f64 / self.blocks as f64).collect()
    }

    /// Standard error of each rate.
    pub fn std_errors(&self) -> Vec<f64> {
        self.rates()
            .iter()
            .map(|&p| (p * (1.0 - p) / self.blocks as f64).sqrt())
            .collect()
    }

    /// Empirical flip probability of an uncoded channel LLR.
    pub fn channel_flip_rate(&self) -> f64 {
        self.channel_flips as f64 / (self.blocks as f64 * (1u64 << self.n) as f64)
    }
}

/// Sends all-zero codewords and feeds SC the correct previous decisions,
/// tallying how often each bit channel's LLR is negative.
pub fn genie_bit_channel_probe(
    n: u32,
    snr: ChannelSnr,
    blocks: u64,
    seed: u64,
    workers: usize,
) -> Result<GenieProbe> {
    if !(1..=24).contains(&n) || blocks == 0 {
        return Err(Error::InvalidArgument(format!("n = {n}, blocks = {blocks}")));
    }
    let len = 1usize << n;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let zeros = vec![0u8; len];
    // integer tallies, so the reduction order does not matter
    let (errors, channel_flips) = pool.install(|| {
        (0..blocks)
            .into_par_iter()
            .fold(
                || (ScDecoder::genie(n), vec![0.0; len], vec![0u64; len], 0u64),
                |(mut dec, mut llr, mut errs, mut flips), b| {
                    let mut rng = block_rng(seed, b);
                    llrs_into(&zeros, snr, &mut rng, &mut llr);
                    flips += llr.iter().filter(|&&l| l < 0.0).count() as u64;
                    dec.run(&llr).expect("buffer has the decoder length");
                    for (e, &l) in errs.iter_mut().zip(dec.leaf_llrs()) {
                        *e += u64::from(l < 0.0);
                    }
                    (dec, llr, errs, flips)
                },
            )
            .map(|(_, _, errs, flips)| (errs, flips))
            .reduce(
                || (vec![0u64; len], 0),
                |(mut a, fa), (b, fb)| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    (a, fa + fb)
                },
            )
    });
    Ok(GenieProbe {
        n,
        blocks,
        seed,
        errors,
        channel_flips,
    })
}

fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with tied values given their average rank.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let (ra, rb) = (average_ranks(a), average_ranks(b));
    let n = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    sab / (saa * sbb).sqrt()
}
