use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::channel_sim::{campaign_csv, read_campaign, run_trials, write_campaign, CampaignRecord, ChannelSnr, TrialConfig};
use crate::construction::{
    code_spec_text, estimate_bler, find_design_snr, min_estimated_bler, read_code_spec, reliabilities,
    select_info_set, write_reliability_csv, ConstructionRecord, DesignSnr, PolarCodeSpec,
};
use crate::ga_kernel::{check_node_asymptote, check_node_transform, xi_hat, xi_hat_inv, GaVariant};
use crate::oracles::{exact_mean_boxplus, xi_numeric};

use super::{
    resolve_out, Cli, CliError, Command, ConstructArgs, Dimension, EstimateArgs, KernelArgs, Provenance,
    SimulateArgs, SnrGrid, SweepArgs,
};

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub(super) fn run(cli: &Cli, prov: &Provenance) -> CliResult<()> {
    match &cli.command {
        Command::Construct(a) => construct(cli, a, prov),
        Command::Sweep(a) => sweep(cli, a, prov),
        Command::Estimate(a) => estimate(cli, a, prov),
        Command::Simulate(a) => simulate(cli, a, prov),
        Command::Kernel(a) => kernel(cli, a, prov),
        Command::OracleCompare(a) => oracle_compare(cli, a, prov),
    }
}

fn check_n(n: u32) -> CliResult<()> {
    if n > crate::construction::MAX_STAGES {
        return usage(format!("n must be at most {}, got {n}", crate::construction::MAX_STAGES));
    }
    Ok(())
}

/// `K` from either flag; a rate must give an integer `K` exactly.
fn resolve_k(n: u32, dim: &Dimension) -> CliResult<usize> {
    let len = 1usize << n;
    let k = match (dim.k, dim.rate) {
        (Some(k), None) => k,
        (None, Some(r)) => {
            if !(0.0..=1.0).contains(&r) {
                return usage(format!("rate must lie in [0, 1], got {r}"));
            }
            let k = (r * len as f64).round();
            if (k - r * len as f64).abs() > 1e-9 * len as f64 {
                return usage(format!("rate {r} does not give an integer K for N = {len}"));
            }
            k as usize
        }
        _ => return usage("give exactly one of --k and --rate"),
    };
    if k > len {
        return usage(format!("K = {k} exceeds N = {len}"));
    }
    Ok(k)
}

/// Grid points, rounded so repeated runs print identical values.
fn grid_points(g: &SnrGrid) -> CliResult<Vec<f64>> {
    if !(g.snr_db_step > 0.0) || !g.snr_db_start.is_finite() || !g.snr_db_stop.is_finite() {
        return usage("SNR grid needs finite endpoints and a positive step");
    }
    if g.snr_db_stop < g.snr_db_start {
        return usage("SNR grid stop lies below start");
    }
    let count = ((g.snr_db_stop - g.snr_db_start) / g.snr_db_step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return usage(format!("SNR grid has {count} points"));
    }
    Ok((0..count)
        .map(|i| ((g.snr_db_start + i as f64 * g.snr_db_step) * 1e9).round() / 1e9)
        .collect())
}

fn gamma_points(a: &KernelArgs) -> CliResult<Vec<f64>> {
    if !(a.gamma_min > 0.0 && a.gamma_max >= a.gamma_min && a.gamma_max.is_finite()) {
        return usage("gamma grid needs 0 < gamma-min <= gamma-max");
    }
    if a.points == 0 || a.points > 1_000_000 {
        return usage("points must lie in 1..=1000000");
    }
    if a.points == 1 {
        return Ok(vec![a.gamma_min]);
    }
    let (l0, l1) = (a.gamma_min.ln(), a.gamma_max.ln());
    let last = (a.points - 1) as f64;
    Ok((0..a.points)
        .map(|i| match i {
            0 => a.gamma_min,
            i if i + 1 == a.points => a.gamma_max,
            i => (l0 + (l1 - l0) * i as f64 / last).exp(),
        })
        .collect())
}

fn write_out(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn construct(cli: &Cli, a: &ConstructArgs, prov: &Provenance) -> CliResult<()> {
    check_n(a.n)?;
    let k = resolve_k(a.n, &a.dim)?;
    let (db, search) = match (&a.design_snr_db, &a.target_bler) {
        (Some(db), None) => (*db, None),
        (None, Some(band)) => {
            let s = find_design_snr(a.n, k, band[0], band[1], a.method)?;
            let db = (s.snr.db() * 100.0).round() / 100.0;
            (db, Some(s))
        }
        _ => return usage("give exactly one of --design-snr-db and --target-bler"),
    };
    let snr = DesignSnr::from_db(db)?;
    let rel = reliabilities(a.n, snr, a.method)?;
    let info = if k == 0 {
        Vec::new()
    } else {
        select_info_set(&rel, k)?.info_set().to_vec()
    };
    let code = PolarCodeSpec::new(
        a.n,
        info,
        ConstructionRecord {
            method: a.method,
            design_snr_db: db,
        },
    )?;
    let est = estimate_bler(&code, &rel)?;
    let out = resolve_out(&cli.out_dir, &a.out, &format!("code_n{}_k{}_{}.json", a.n, k, a.method));
    write_out(&out, &code_spec_text(&code, &prov.comments())?)?;
    if let Some(path) = &a.reliabilities {
        write_reliability_csv(path, &rel)?;
    }
    if let Some(s) = search {
        println!("design search: {} evaluations", s.evaluations);
    }
    println!("wrote {}", out.display());
    println!("n={} K={} method={} design_snr_db={db} estimated_bler={:e}", a.n, k, a.method, est.value);
    Ok(())
}

fn sweep(cli: &Cli, a: &SweepArgs, prov: &Provenance) -> CliResult<()> {
    check_n(a.n)?;
    let k = resolve_k(a.n, &a.dim)?;
    let grid = grid_points(&a.grid)?;
    let mut body = String::from("design_snr_db,method,min_est_bler\n");
    for &method in &a.methods {
        for &db in &grid {
            let bler = if k == 0 {
                0.0
            } else {
                min_estimated_bler(a.n, k, DesignSnr::from_db(db)?, method)?.value
            };
            let _ = writeln!(body, "{db},{method},{bler:e}");
        }
    }
    let out = resolve_out(&cli.out_dir, &a.out, &format!("sweep_n{}_k{}.csv", a.n, k));
    write_out(&out, &prov.stamp(&body))?;
    println!("wrote {} ({} rows)", out.display(), grid.len() * a.methods.len());
    Ok(())
}

fn load_code(path: &Path) -> CliResult<PolarCodeSpec> {
    read_code_spec(path).map_err(CliError::Runtime)
}

fn estimate(cli: &Cli, a: &EstimateArgs, prov: &Provenance) -> CliResult<()> {
    let grid = grid_points(&a.grid)?;
    let code = load_code(&a.code)?;
    let method = code.record().method;
    let mut body = String::from("channel_snr_db,estimated_bler\n");
    for &db in &grid {
        let rel = reliabilities(code.n(), DesignSnr::from_db(db)?, method)?;
        let _ = writeln!(body, "{db},{:e}", estimate_bler(&code, &rel)?.value);
    }
    let out = resolve_out(&cli.out_dir, &a.out, &format!("estimate_n{}_k{}_{method}.csv", code.n(), code.k()));
    write_out(&out, &prov.stamp(&body))?;
    println!("wrote {} ({} rows)", out.display(), grid.len());
    Ok(())
}

fn simulate(cli: &Cli, a: &SimulateArgs, prov: &Provenance) -> CliResult<()> {
    let grid = grid_points(&a.grid)?;
    if a.max_blocks == 0 || a.target_errors == 0 {
        return usage("max-blocks and target-errors must be positive");
    }
    let code = load_code(&a.code)?;
    let log = resolve_out(&cli.out_dir, &a.log, "campaign.csv");
    if let Some(dir) = log.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut rows = read_campaign(&log)?;
    let header = vec![format!("polar-ga {}", env!("CARGO_PKG_VERSION")), format!("args {}", prov.args)];
    let mut failures = 0;
    for &db in &grid {
        let mut rec = CampaignRecord {
            n: code.n(),
            k: code.k(),
            method: code.record().method,
            design_snr_db: code.record().design_snr_db,
            channel_snr_db: db,
            blocks: 0,
            block_errs: 0,
            bler: 0.0,
            ber: 0.0,
            seed: a.seed,
        };
        if rows.iter().any(|r| r.same_point(&rec)) {
            println!("{db} dB: already in {}, skipped", log.display());
            continue;
        }
        let mut cfg = TrialConfig::new(code.clone(), ChannelSnr::from_db(db)?, a.seed);
        cfg.max_blocks = a.max_blocks;
        cfg.target_block_errors = a.target_errors;
        cfg.workers = a.workers;
        cfg.all_zero = a.all_zero;
        let r = run_trials(&cfg)?;
        rec.blocks = r.blocks;
        rec.block_errs = r.block_errors;
        rec.bler = r.bler;
        rec.ber = r.ber;
        rows.push(rec);
        println!(
            "{db} dB: {} blocks, {} errors, bler {:e} [{:e}, {:e}]",
            r.blocks, r.block_errors, r.bler, r.interval.0, r.interval.1
        );
        let mut lines = header.clone();
        let written = campaign_csv(&rows).and_then(|body| {
            lines.push(format!("sha256 {}", hex::encode(Sha256::digest(body.as_bytes()))));
            write_campaign(&log, &lines, &rows)
        });
        if let Err(e) = written {
            eprintln!("error: writing {} after {db} dB: {e}", log.display());
            failures += 1;
        }
    }
    if failures > 0 {
        return Err(CliError::Runtime(crate::Error::Io(std::io::Error::other(format!(
            "{failures} campaign rows could not be written"
        )))));
    }
    println!("log {}", log.display());
    Ok(())
}

fn kernel(cli: &Cli, a: &KernelArgs, prov: &Provenance) -> CliResult<()> {
    let gammas = gamma_points(a)?;
    let mut body = String::from(
        "gamma,xi_hat,xi_hat_roundtrip,cn_improved,cn_conventional,cn_ha,asymptote,exact_mean\n",
    );
    for &g in &gammas {
        let z = xi_hat(g)?;
        let back = xi_hat_inv(z)?;
        let _ = write!(body, "{g:e},{z:e},{back:e}");
        for v in GaVariant::ALL {
            let _ = write!(body, ",{:e}", check_node_transform(g, v));
        }
        let _ = writeln!(body, ",{:e},{:e}", check_node_asymptote(g), exact_mean_boxplus(g)?);
    }
    let out = resolve_out(&cli.out_dir, &a.out, "kernel.csv");
    write_out(&out, &prov.stamp(&body))?;
    println!("wrote {} ({} rows)", out.display(), gammas.len());
    Ok(())
}

fn oracle_compare(cli: &Cli, a: &KernelArgs, prov: &Provenance) -> CliResult<()> {
    let gammas = gamma_points(a)?;
    let mut body = String::from(
        "gamma,xi_hat,xi_numeric,cn_improved,cn_conventional,cn_ha,exact_mean,asymptote\n",
    );
    for &g in &gammas {
        let _ = write!(body, "{g:e},{:e},{:e}", xi_hat(g)?, xi_numeric(g)?.get());
        for v in GaVariant::ALL {
            let _ = write!(body, ",{:e}", check_node_transform(g, v));
        }
        let _ = writeln!(body, ",{:e},{:e}", exact_mean_boxplus(g)?, check_node_asymptote(g));
    }
    let out = resolve_out(&cli.out_dir, &a.out, "oracle_compare.csv");
    write_out(&out, &prov.stamp(&body))?;
    println!("wrote {} ({} rows)", out.display(), gammas.len());
    Ok(())
}
