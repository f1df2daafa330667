//! Encodes random messages, sends them over BPSK/AWGN and decodes with
//! exact-LLR successive cancellation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polar_ga::channel_sim::{bpsk_awgn, samples_to_llrs, ChannelSnr};
use polar_ga::codec::{encode, ScDecoder};
use polar_ga::construction::{reliabilities, select_info_set, DesignSnr, Method};

fn main() -> polar_ga::Result<()> {
    let code = select_info_set(
        &reliabilities(8, DesignSnr::from_db(1.0)?, Method::IMPROVED)?,
        128,
    )?;
    let mut decoder = ScDecoder::new(&code);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for db in [-1.0, 1.0, 3.0] {
        let snr = ChannelSnr::from_db(db)?;
        let mut errors = 0;
        for _ in 0..2000 {
            let msg: Vec<u8> = (0..code.k()).map(|_| rng.gen::<u8>() & 1).collect();
            let mut y = bpsk_awgn(&encode(&code, &msg)?, snr, &mut rng);
            samples_to_llrs(&mut y, snr);
            errors += usize::from(decoder.decode(&y)?.message != msg);
        }
        println!("{db:>5.1} dB: {errors} block errors in 2000");
    }
    Ok(())
}
