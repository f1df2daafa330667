use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Kronrod abscissae on [0, 1]; odd entries are the Gauss 7-point nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integration scheme and tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Nodes per panel of the Kronrod rule.
    pub nodes: usize,
    /// Truncation of Gaussian-weighted integrals, in standard deviations.
    pub half_width_sd: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl QuadratureSpec {
    pub const SCHEME: &'static str = "adaptive-gauss-kronrod-7-15";
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes: 15,
            half_width_sd: 40.0,
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_panels: 4000,
        }
    }
}

/// Value and error estimate of an integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kron += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integral of `f` over `[a, b]`, splitting first at `breaks`.
/// Panels with the largest error estimate are bisected until the total
/// error meets the tolerance.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::Integration(format!("bad interval [{a}, {b}]")));
    }
    let mut edges = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    edges.extend(inner);
    edges.push(b);

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    let (mut value, mut error) = (0.0, 0.0);
    for w in edges.windows(2) {
        let (v, e) = kronrod(&f, w[0], w[1]);
        evaluations += 15;
        value += v;
        error += e;
        heap.push(Panel { a: w[0], b: w[1], value: v, error: e });
    }
    loop {
        if !value.is_finite() {
            return Err(Error::Integration("integrand is not finite".into()));
        }
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            break;
        }
        if heap.len() >= spec.max_panels {
            return Err(Error::Integration(format!(
                "no convergence after {} panels: value {value:e}, error {error:e}",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel cannot be split further; accept its estimate
            if heap.iter().map(|p| p.error).sum::<f64>() <= spec.rel_tol * value.abs() {
                heap.push(worst);
                break;
            }
            return Err(Error::Integration("panel width underflow".into()));
        }
        let (v1, e1) = kronrod(&f, worst.a, mid);
        let (v2, e2) = kronrod(&f, mid, worst.b);
        evaluations += 30;
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // re-sum to shed the drift of the running totals
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Integral { value, error, evaluations })
}
