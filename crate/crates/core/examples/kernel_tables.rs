//! Prints the log-domain kernel, its inverse and the three check-node
//! maps on a log-spaced grid of mean LLRs.

use polar_ga::ga_kernel::{check_node_asymptote, check_node_transform, xi_hat, xi_hat_inv, GaVariant};

fn main() -> polar_ga::Result<()> {
    println!(
        "{:>10} {:>14} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "gamma", "xi_hat", "inverse", "improved", "conventional", "ha", "g-4ln2"
    );
    for i in 0..=24 {
        let g = 10f64.powf(-3.0 + i as f64 * 0.25);
        let z = xi_hat(g)?;
        print!("{g:>10.4e} {z:>14.6e} {:>12.6e}", xi_hat_inv(z)?);
        for v in GaVariant::ALL {
            print!(" {:>12.6e}", check_node_transform(g, v));
        }
        println!(" {:>12.6e}", check_node_asymptote(g));
    }
    Ok(())
}
