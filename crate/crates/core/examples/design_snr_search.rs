//! Searches the design SNR whose minimum estimated BLER falls in
//! [1e-4, 1e-3] for several lengths at rate 1/2.

use polar_ga::construction::{find_design_snr, Method};

fn main() -> polar_ga::Result<()> {
    for n in [8, 10, 12, 14, 16] {
        let k = 1usize << (n - 1);
        let s = find_design_snr(n, k, 1e-4, 1e-3, Method::IMPROVED)?;
        println!(
            "n={n:>2} K={k:>6}: {:>6.2} dB  BLER {:.3e}  ({} evaluations)",
            s.snr.db(),
            s.bler,
            s.evaluations
        );
    }
    Ok(())
}
