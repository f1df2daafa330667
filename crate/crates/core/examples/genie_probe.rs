//! Measures every bit channel's error rate with genie-aided SC decoding and
//! ranks the channels against the GA and flipping predictions.

use polar_ga::channel_sim::{genie_bit_channel_probe, spearman, ChannelSnr};
use polar_ga::construction::{reliabilities, DesignSnr, Method};

fn main() -> polar_ga::Result<()> {
    let n = 8;
    let db = 0.0;
    let probe = genie_bit_channel_probe(n, ChannelSnr::from_db(db)?, 200_000, 3, 0)?;
    let measured = probe.rates();
    for m in [Method::IMPROVED, Method::Flipping] {
        let rel = reliabilities(n, DesignSnr::from_db(db)?, m)?;
        let predicted: Vec<f64> = (0..rel.len()).map(|i| rel.bit_error_prob(i)).collect();
        println!(
            "{:>12}: Spearman {:.4}",
            m.name(),
            spearman(&predicted, &measured)
        );
    }
    println!("channel flip rate {:.5}", probe.channel_flip_rate());
    Ok(())
}
