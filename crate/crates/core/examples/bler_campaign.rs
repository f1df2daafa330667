//! Monte-Carlo BLER against the analytic estimate over a channel-SNR grid,
//! logged to a campaign CSV that a rerun resumes.

use polar_ga::channel_sim::{
    append_campaign, read_campaign, run_trials, CampaignRecord, ChannelSnr, TrialConfig,
};
use polar_ga::construction::{estimate_bler, reliabilities, select_info_set, DesignSnr, Method};

fn main() -> polar_ga::Result<()> {
    let design = DesignSnr::from_db(0.5)?;
    let code = select_info_set(&reliabilities(9, design, Method::IMPROVED)?, 256)?;
    let log = std::env::temp_dir().join("polar_ga_example_campaign.csv");
    let done = read_campaign(&log)?;
    for db in [-0.5, 0.0, 0.5, 1.0, 1.5] {
        let rec = CampaignRecord {
            n: code.n(),
            k: code.k(),
            method: code.record().method,
            design_snr_db: code.record().design_snr_db,
            channel_snr_db: db,
            blocks: 0,
            block_errs: 0,
            bler: 0.0,
            ber: 0.0,
            seed: 1,
        };
        if done.iter().any(|r| r.same_point(&rec)) {
            println!("{db:>5.1} dB: already logged");
            continue;
        }
        let mut cfg = TrialConfig::new(code.clone(), ChannelSnr::from_db(db)?, rec.seed);
        cfg.max_blocks = 200_000;
        let r = run_trials(&cfg)?;
        let est = estimate_bler(
            &code,
            &reliabilities(code.n(), DesignSnr::from_db(db)?, Method::IMPROVED)?,
        )?
        .value;
        println!(
            "{db:>5.1} dB: simulated {:.3e} [{:.2e}, {:.2e}] over {} blocks, estimate {est:.3e}",
            r.bler, r.interval.0, r.interval.1, r.blocks
        );
        append_campaign(
            &log,
            &CampaignRecord {
                blocks: r.blocks,
                block_errs: r.block_errors,
                bler: r.bler,
                ber: r.ber,
                ..rec
            },
        )?;
    }
    println!("log {}", log.display());
    Ok(())
}
