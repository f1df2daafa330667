//! Minimum estimated BLER of every construction method over a design-SNR
//! grid, at a low rate where the methods separate.

use polar_ga::construction::{min_estimated_bler, DesignSnr, Method};

fn main() -> polar_ga::Result<()> {
    let (n, k) = (14, 1 << 11);
    print!("{:>8}", "dB");
    for m in Method::ALL {
        print!(" {:>16}", m.name());
    }
    println!();
    for i in 0..=12 {
        let db = -8.0 + 0.5 * i as f64;
        print!("{db:>8.2}");
        for m in Method::ALL {
            print!(
                " {:>16.4e}",
                min_estimated_bler(n, k, DesignSnr::from_db(db)?, m)?.value
            );
        }
        println!();
    }
    Ok(())
}
