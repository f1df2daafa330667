use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::{ConstructionRecord, PolarCodeSpec, ReliabilityKind, ReliabilityVector};

/// Bands used to skip sorting channels that are clearly good or clearly
/// bad. Any setting gives the same selection as a full sort; they only
/// change how much work is done.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefilterThresholds {
    /// Mean LLRs at or above this are accepted unsorted.
    pub gamma_saturated: f64,
    /// Mean LLRs below this are rejected unsorted.
    pub gamma_floor: f64,
    /// Flip probabilities at or below this are accepted unsorted.
    pub flip_saturated: f64,
    /// Flip probabilities within this of 1/2 are rejected unsorted.
    pub flip_epsilon: f64,
}

impl Default for PrefilterThresholds {
    fn default() -> Self {
        PrefilterThresholds {
            gamma_saturated: 1.0e3,
            gamma_floor: 1.0e-6,
            flip_saturated: super::FLIP_PROB_MIN,
            flip_epsilon: 1.0e-12,
        }
    }
}

/// Larger is better for both kinds.
fn score(kind: ReliabilityKind, v: f64) -> f64 {
    match kind {
        ReliabilityKind::MeanLlr => v,
        ReliabilityKind::FlipProb => -v,
    }
}

fn rank(rel: &ReliabilityVector) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&a, &b| {
        let sa = score(rel.kind, rel.values[a]);
        let sb = score(rel.kind, rel.values[b]);
        sb.total_cmp(&sa).then(a.cmp(&b))
    }
}

fn check_k(rel: &ReliabilityVector, k: usize) -> Result<()> {
    if rel.values.len() != 1usize << rel.n {
        return Err(Error::DimensionMismatch {
            expected: 1 << rel.n,
            got: rel.values.len(),
        });
    }
    if k == 0 || k > rel.len() {
        return Err(Error::InvalidArgument(format!(
            "K must be in 1..={}, got {k}",
            rel.len()
        )));
    }
    Ok(())
}

fn finish(rel: &ReliabilityVector, info: Vec<usize>) -> Result<PolarCodeSpec> {
    let record = ConstructionRecord {
        method: rel.method,
        design_snr_db: rel.design_snr.db(),
    };
    PolarCodeSpec::new(rel.n, info, record)
}

/// Reference selection: ranks every channel, best first, lower index
/// winning ties.
pub fn select_info_set_full_sort(rel: &ReliabilityVector, k: usize) -> Result<PolarCodeSpec> {
    check_k(rel, k)?;
    let mut order: Vec<usize> = (0..rel.len()).collect();
    order.sort_by(rank(rel));
    order.truncate(k);
    finish(rel, order)
}

/// Picks the `k` most reliable channels with default pre-filter bands.
pub fn select_info_set(rel: &ReliabilityVector, k: usize) -> Result<PolarCodeSpec> {
    select_info_set_with(rel, k, &PrefilterThresholds::default())
}

/// Picks the `k` most reliable channels. Saturated channels are taken
/// without sorting, useless ones dropped, and only the middle band is
/// partially ordered.
pub fn select_info_set_with(
    rel: &ReliabilityVector,
    k: usize,
    th: &PrefilterThresholds,
) -> Result<PolarCodeSpec> {
    check_k(rel, k)?;
    let (accept, reject) = match rel.kind {
        ReliabilityKind::MeanLlr => (th.gamma_saturated, th.gamma_floor),
        ReliabilityKind::FlipProb => (-th.flip_saturated, -(0.5 - th.flip_epsilon)),
    };
    let mut saturated = Vec::new();
    let mut middle = Vec::new();
    let mut dropped = 0usize;
    for (i, &v) in rel.values.iter().enumerate() {
        let s = score(rel.kind, v);
        if s >= accept {
            saturated.push(i);
        } else if s < reject {
            dropped += 1;
        } else {
            middle.push(i);
        }
    }
    // the shortcut only holds when the cut falls inside the middle band
    if saturated.len() > k || rel.len() - dropped < k {
        return select_info_set_full_sort(rel, k);
    }
    let need = k - saturated.len();
    if need > 0 && need < middle.len() {
        middle.select_nth_unstable_by(need - 1, rank(rel));
    }
    middle.truncate(need);
    saturated.extend(middle);
    finish(rel, saturated)
}

#[cfg(test)]
mod tests {
    use super::super::{DesignSnr, Method};
    use super::*;
    use proptest::prelude::*;

    fn rel(kind: ReliabilityKind, values: Vec<f64>) -> ReliabilityVector {
        let n = values.len().trailing_zeros();
        ReliabilityVector {
            kind,
            values,
            n,
            design_snr: DesignSnr::from_db(0.0).unwrap(),
            method: match kind {
                ReliabilityKind::MeanLlr => Method::IMPROVED,
                ReliabilityKind::FlipProb => Method::Flipping,
            },
        }
    }

    #[test]
    fn top_two() {
        let r = rel(ReliabilityKind::MeanLlr, vec![0.5, 3.0, 1.0, 9.0]);
        assert_eq!(select_info_set(&r, 2).unwrap().info_set(), &[1, 3]);
    }

    #[test]
    fn k_equals_n() {
        let r = rel(ReliabilityKind::MeanLlr, vec![0.5, 3.0, 1.0, 9.0]);
        assert_eq!(select_info_set(&r, 4).unwrap().info_set(), &[0, 1, 2, 3]);
    }

    #[test]
    fn ties_go_to_lower_index() {
        let r = rel(ReliabilityKind::MeanLlr, vec![2.0; 4]);
        assert_eq!(select_info_set(&r, 2).unwrap().info_set(), &[0, 1]);
        let r = rel(ReliabilityKind::FlipProb, vec![0.5; 4]);
        assert_eq!(select_info_set(&r, 3).unwrap().info_set(), &[0, 1, 2]);
    }

    #[test]
    fn flip_prob_prefers_small() {
        let r = rel(ReliabilityKind::FlipProb, vec![0.4, 1e-300, 0.01, 0.5]);
        assert_eq!(select_info_set(&r, 2).unwrap().info_set(), &[1, 2]);
    }

    #[test]
    fn k_out_of_range() {
        let r = rel(ReliabilityKind::MeanLlr, vec![1.0; 4]);
        assert!(select_info_set(&r, 0).is_err());
        assert!(select_info_set(&r, 5).is_err());
    }

    #[test]
    fn record_carries_method_and_snr() {
        let r = rel(ReliabilityKind::FlipProb, vec![0.1, 0.2]);
        let code = select_info_set(&r, 1).unwrap();
        assert_eq!(code.record().method, Method::Flipping);
        assert_eq!(code.record().design_snr_db, 0.0);
    }

    /// Values drawn so that every band, and many ties, occur.
    fn mean_llr_value() -> impl Strategy<Value = f64> {
        prop_oneof![
            Just(0.0),
            Just(1e-7),
            Just(2.0),
            Just(1e3),
            Just(5e4),
            0.0f64..10.0,
            1.0f64..2e3,
        ]
    }

    fn flip_value() -> impl Strategy<Value = f64> {
        prop_oneof![
            Just(1e-300),
            Just(0.5),
            Just(0.5 - 1e-13),
            Just(0.25),
            0.0f64..0.5,
            (-300.0f64..0.0).prop_map(|e| 10f64.powf(e)),
        ]
    }

    fn case(value: BoxedStrategy<f64>) -> impl Strategy<Value = (Vec<f64>, usize)> {
        (1u32..=12)
            .prop_flat_map(move |n| proptest::collection::vec(value.clone(), 1usize << n))
            .prop_flat_map(|v| {
                let len = v.len();
                (Just(v), 1..=len)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn prefilter_matches_full_sort_mean_llr((values, k) in case(mean_llr_value().boxed())) {
            let r = rel(ReliabilityKind::MeanLlr, values);
            prop_assert_eq!(select_info_set(&r, k).unwrap(), select_info_set_full_sort(&r, k).unwrap());
        }

        #[test]
        fn prefilter_matches_full_sort_flip((values, k) in case(flip_value().boxed())) {
            let r = rel(ReliabilityKind::FlipProb, values);
            prop_assert_eq!(select_info_set(&r, k).unwrap(), select_info_set_full_sort(&r, k).unwrap());
        }
    }
}
