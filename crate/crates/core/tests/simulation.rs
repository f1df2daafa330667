use polar_ga::channel_sim::{genie_bit_channel_probe, run_trials, spearman, ChannelSnr, TrialConfig};
use polar_ga::construction::{reliabilities, select_info_set, DesignSnr, Method};

#[test]
fn genie_rates_follow_predicted_ranking() {
    let n = 8;
    let probe = genie_bit_channel_probe(n, ChannelSnr::from_db(0.0).unwrap(), 100_000, 3, 0).unwrap();
    let measured = probe.rates();
    for m in [Method::IMPROVED, Method::HA, Method::Flipping] {
        let rel = reliabilities(n, DesignSnr::from_db(0.0).unwrap(), m).unwrap();
        let predicted: Vec<f64> = (0..rel.len()).map(|i| rel.bit_error_prob(i)).collect();
        let rho = spearman(&predicted, &measured);
        assert!(rho > 0.95, "{m}: {rho}");
    }
}

#[test]
fn genie_rates_match_prediction_on_unsaturated_channels() {
    let n = 6;
    let db = -1.0;
    let probe = genie_bit_channel_probe(n, ChannelSnr::from_db(db).unwrap(), 200_000, 8, 0).unwrap();
    let rel = reliabilities(n, DesignSnr::from_db(db).unwrap(), Method::IMPROVED).unwrap();
    let (rates, se) = (probe.rates(), probe.std_errors());
    for i in 0..rel.len() {
        let p = rel.bit_error_prob(i);
        if (0.01..0.45).contains(&p) {
            // GA is an approximation, so allow a relative band on top of noise
            assert!((rates[i] - p).abs() <= 0.25 * p + 4.0 * se[i], "channel {i}: {} vs {p}", rates[i]);
        }
    }
}

#[test]
fn all_zero_and_random_messages_agree() {
    let code = select_info_set(&reliabilities(8, DesignSnr::from_db(0.5).unwrap(), Method::IMPROVED).unwrap(), 128)
        .unwrap();
    let mut cfg = TrialConfig::new(code, ChannelSnr::from_db(0.0).unwrap(), 21);
    cfg.target_block_errors = 400;
    let random = run_trials(&cfg).unwrap();
    cfg.all_zero = true;
    cfg.seed = 22;
    let zero = run_trials(&cfg).unwrap();
    let se = |r: &polar_ga::channel_sim::SimResult| r.bler * (1.0 - r.bler) / r.blocks as f64;
    let z = (random.bler - zero.bler) / (se(&random) + se(&zero)).sqrt();
    assert!(z.abs() < 4.0, "random {} vs all-zero {} (z {z})", random.bler, zero.bler);
}
