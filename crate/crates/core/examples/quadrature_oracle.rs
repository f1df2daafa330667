//! The kernel against the direct quadrature of ln(1 - psi) and the
//! small- and large-mean series.

use polar_ga::ga_kernel::xi_hat;
use polar_ga::oracles::{phi_series_large, psi_series_small, xi_numeric, SeriesTruncation};

fn main() -> polar_ga::Result<()> {
    let trunc = SeriesTruncation::new(3)?;
    for g in [0.01, 0.1, 0.5, 1.0, 5.0, 10.0, 40.0, 200.0] {
        let numeric = xi_numeric(g)?.get();
        let small = if g <= 0.5 {
            format!("{:.8e}", (1.0 - psi_series_small(g, &trunc)?).ln())
        } else {
            "-".into()
        };
        let large = if g >= 10.0 {
            format!("{:.8e}", phi_series_large(g)?.get())
        } else {
            "-".into()
        };
        println!(
            "{g:>6}: kernel {:.8e}  quadrature {numeric:.8e}  small {small}  large {large}",
            xi_hat(g)?
        );
    }
    Ok(())
}
