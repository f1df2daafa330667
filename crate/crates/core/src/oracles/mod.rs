//! Reference implementations used to validate the kernels: adaptive
//! quadrature, small- and large-mean series, and Monte-Carlo means.
//! None of these run inside a construction.

mod numeric;
mod quadrature;
mod series;

pub use numeric::{
    exact_mean_boxplus, mc_mean_boxplus, mc_mean_pair, psi_numeric, psi_numeric_with, xi_numeric,
    McMean, EXACT_MEAN_SWITCH, MC_MIN_TRIALS,
};
pub use quadrature::{integrate, Integral, QuadratureSpec};
pub use series::{
    bernoulli_even, hurwitz_zeta, kummer_1f1_poly, phi_asymptotic_coefficients, phi_series_large,
    psi_series_small, SeriesTruncation, LARGE_SERIES_MIN, SMALL_SERIES_RADIUS,
};
