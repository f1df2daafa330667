use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ga_kernel::LogPhi;

/// Largest `γ` at which the small-γ series is treated as trustworthy.
pub const SMALL_SERIES_RADIUS: f64 = 0.5;

/// Smallest `γ` accepted by the large-γ asymptotic series.
pub const LARGE_SERIES_MIN: f64 = 10.0;

/// Even Bernoulli numbers `B_2, B_4, ..., B_{2 kmax}` from the standard
/// recurrence `sum_{j<=m} C(m+1, j) B_j = 0`.
pub fn bernoulli_even(kmax: usize) -> Vec<f64> {
    let m_max = 2 * kmax;
    let mut b = vec![0.0; m_max + 1];
    b[0] = 1.0;
    for m in 1..=m_max {
        let mut binom = 1.0; // C(m+1, 0)
        let mut acc = 0.0;
        for (j, &bj) in b.iter().enumerate().take(m) {
            acc += binom * bj;
            binom *= (m + 1 - j) as f64 / (j + 1) as f64;
        }
        b[m] = -acc / (m + 1) as f64;
    }
    (1..=kmax).map(|k| b[2 * k]).collect()
}

/// Number of terms kept in the small-γ series, with the Bernoulli numbers
/// it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTruncation {
    kmax: usize,
    bernoulli: Vec<f64>,
}

impl SeriesTruncation {
    pub fn new(kmax: usize) -> Result<Self> {
        if kmax == 0 {
            return Err(Error::domain("SeriesTruncation::new", "kmax must be positive"));
        }
        Ok(SeriesTruncation {
            kmax,
            bernoulli: bernoulli_even(kmax),
        })
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// `B_2, B_4, ..., B_{2 kmax}`.
    pub fn bernoulli(&self) -> &[f64] {
        &self.bernoulli
    }
}

/// Kummer's `1F1(a; b; x)` for a non-positive integer `a`, where the
/// series terminates after `-a + 1` terms.
pub fn kummer_1f1_poly(a: i32, b: f64, x: f64) -> Result<f64> {
    if a > 0 {
        return Err(Error::domain(
            "kummer_1f1_poly",
            format!("first parameter {a} is positive; series does not terminate"),
        ));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..(-a) {
        let j = j as f64;
        term *= (a as f64 + j) / (b + j) * x / (j + 1.0);
        sum += term;
    }
    Ok(sum)
}

/// Small-γ series of `E[tanh(L/2)]` for `L ~ N(γ, 2γ)`, truncated after
/// `kmax` terms.
pub fn psi_series_small(gamma: f64, trunc: &SeriesTruncation) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain("psi_series_small", format!("gamma = {gamma}")));
    }
    if gamma > SMALL_SERIES_RADIUS {
        log::warn!("psi_series_small: gamma = {gamma} beyond validated radius {SMALL_SERIES_RADIUS}");
    }
    let mut sum = 0.0;
    let mut factorial = 1.0;
    for (k, &b2k) in (1..=trunc.kmax).zip(&trunc.bernoulli) {
        factorial *= k as f64;
        let coeff = (4f64.powi(k as i32) - 1.0) * b2k / factorial;
        sum += coeff * gamma.powi(k as i32) * kummer_1f1_poly(1 - k as i32, 1.5, -gamma / 4.0)?;
    }
    Ok(sum)
}

/// Hurwitz zeta `sum_{l>=0} (l + q)^-s` by Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: u32, q: f64) -> Result<f64> {
    if s < 2 || !(q > 0.0 && q.is_finite()) {
        return Err(Error::domain("hurwitz_zeta", format!("s = {s}, q = {q}")));
    }
    const DIRECT: usize = 24;
    const TAIL_TERMS: usize = 10;
    let s_f = s as f64;
    let mut sum: f64 = (0..DIRECT).map(|l| (l as f64 + q).powf(-s_f)).sum();
    let nq = DIRECT as f64 + q;
    sum += nq.powf(1.0 - s_f) / (s_f - 1.0) + 0.5 * nq.powf(-s_f);
    // B_2j/(2j)! * s(s+1)...(s+2j-2) * nq^(-s-2j+1)
    let bern = bernoulli_even(TAIL_TERMS);
    let mut rising = s_f;
    let mut fact = 2.0;
    let mut power = nq.powf(-s_f - 1.0);
    for (j, &b) in (1..=TAIL_TERMS).zip(&bern) {
        sum += b / fact * rising * power;
        let jf = j as f64;
        rising *= (s_f + 2.0 * jf - 1.0) * (s_f + 2.0 * jf);
        fact *= (2.0 * jf + 1.0) * (2.0 * jf + 2.0);
        power /= nq * nq;
    }
    Ok(sum)
}

/// Coefficients `c_k` of `sqrt(pi/γ) e^{-γ/4} sum_k c_k γ^-k`, built from
/// Hurwitz zeta differences.
pub fn phi_asymptotic_coefficients(kmax: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut ratio = 1.0; // (2k)! / (k! 16^k)
    for k in 0..=kmax {
        if k > 0 {
            ratio *= (2 * k - 1) as f64 * (2 * k) as f64 / (k as f64 * 16.0);
        }
        let m = 2 * k as u32 + 1;
        let diff = if k == 0 {
            PI
        } else {
            hurwitz_zeta(m, 0.25)? - hurwitz_zeta(m, 0.75)?
        };
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push(sign * ratio * diff / PI);
    }
    Ok(out)
}

/// Log of the large-γ expansion of `1 - E[tanh(L/2)]`, truncated after the
/// `γ^-3` term.
pub fn phi_series_large(gamma: f64) -> Result<LogPhi> {
    if !(gamma >= LARGE_SERIES_MIN && gamma.is_finite()) {
        return Err(Error::domain("phi_series_large", format!("gamma = {gamma} below {LARGE_SERIES_MIN}")));
    }
    let pi2 = PI * PI;
    let g = gamma;
    let poly = 1.0 - pi2 / (4.0 * g) + 5.0 * pi2 * pi2 / (32.0 * g * g)
        - 61.0 * pi2 * pi2 * pi2 / (384.0 * g * g * g);
    LogPhi::new(-g / 4.0 + 0.5 * PI.ln() - 0.5 * g.ln() + poly.ln())
}
