//! Fraction of frozen positions shared by the improved and Ha
//! constructions at several lengths and rates.

use polar_ga::construction::{find_design_snr, reliabilities, select_info_set, Method};

fn main() -> polar_ga::Result<()> {
    for n in [12, 14, 16] {
        for den in [2, 4, 8] {
            let k = (1usize << n) / den;
            let snr = find_design_snr(n, k, 1e-4, 1e-3, Method::IMPROVED)?.snr;
            let a = select_info_set(&reliabilities(n, snr, Method::IMPROVED)?, k)?;
            let b = select_info_set(&reliabilities(n, snr, Method::HA)?, k)?;
            let mask = b.info_mask();
            let frozen = a.frozen_set();
            let shared = frozen.iter().filter(|&&i| !mask[i]).count();
            println!(
                "n={n} R=1/{den} ({:>6.2} dB): {:.4}",
                snr.db(),
                shared as f64 / frozen.len() as f64
            );
        }
    }
    Ok(())
}
