//! Exact mean of the check-node LLR against Monte-Carlo and the GA map.

use polar_ga::ga_kernel::{check_node_transform, GaVariant};
use polar_ga::oracles::{exact_mean_boxplus, mc_mean_boxplus};

fn main() -> polar_ga::Result<()> {
    println!(
        "{:>6} {:>12} {:>12} {:>10} {:>12}",
        "gamma", "exact", "mc", "mc se", "ga"
    );
    for g in [0.5, 2.0, 8.0, 32.0] {
        let mc = mc_mean_boxplus(g, 1_000_000, 1)?;
        println!(
            "{g:>6} {:>12.6} {:>12.6} {:>10.2e} {:>12.6}",
            exact_mean_boxplus(g)?,
            mc.mean,
            mc.std_error,
            check_node_transform(g, GaVariant::ImprovedLogDomain)
        );
    }
    Ok(())
}
