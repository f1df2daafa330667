//! Command-line front end. The `polar-ga` binary only forwards to
//! [`main_with_args`].

mod commands;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::construction::Method;
use crate::error::Error;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "POLAR_GA_OUT_DIR";

/// Exit status for bad arguments.
pub const EXIT_USAGE: i32 = 1;
/// Exit status for failures while running a command.
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "polar-ga", version, about = "Polar code construction with Gaussian approximation")]
pub struct Cli {
    /// Directory for outputs not given an explicit path.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Design a code and write its specification file.
    Construct(ConstructArgs),
    /// Minimum estimated BLER against design SNR.
    Sweep(SweepArgs),
    /// Estimated BLER of a code file against channel SNR.
    Estimate(EstimateArgs),
    /// Monte-Carlo BLER of a code file, appended to a campaign log.
    Simulate(SimulateArgs),
    /// Tables of the mean-LLR kernels.
    Kernel(KernelArgs),
    /// Kernels side by side with quadrature and exact-mean references.
    OracleCompare(KernelArgs),
}

/// Code dimension, as `K` or as a rate.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Dimension {
    /// Number of information bits.
    #[arg(short = 'k', long = "k")]
    pub k: Option<usize>,
    /// Code rate K/N.
    #[arg(long)]
    pub rate: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// log2 of the code length.
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub dim: Dimension,
    #[arg(long, default_value = "improved-ga", value_parser = parse_method)]
    pub method: Method,
    /// Design Es/N0 in dB.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "target_bler", required_unless_present = "target_bler")]
    pub design_snr_db: Option<f64>,
    /// Search the design SNR whose minimum estimated BLER lies in [LO, HI].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub target_bler: Option<Vec<f64>>,
    /// Output path of the code specification.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also dump the bit-channel reliabilities as CSV.
    #[arg(long)]
    pub reliabilities: Option<PathBuf>,
}

/// Grid of SNR points in dB, endpoints included.
#[derive(Debug, Args, Clone)]
pub struct SnrGrid {
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db_start: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db_stop: f64,
    #[arg(long, default_value_t = 0.25)]
    pub snr_db_step: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub dim: Dimension,
    /// One or more construction methods.
    #[arg(long, num_args = 1.., default_value = "improved-ga", value_parser = parse_method)]
    pub methods: Vec<Method>,
    #[command(flatten)]
    pub grid: SnrGrid,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Code specification file.
    #[arg(long)]
    pub code: PathBuf,
    #[command(flatten)]
    pub grid: SnrGrid,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[command(flatten)]
    pub grid: SnrGrid,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::channel_sim::DEFAULT_MAX_BLOCKS)]
    pub max_blocks: u64,
    #[arg(long, default_value_t = crate::channel_sim::DEFAULT_TARGET_ERRORS)]
    pub target_errors: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Transmit the all-zero codeword instead of random messages.
    #[arg(long)]
    pub all_zero: bool,
    /// Campaign log to append to; points already present are skipped.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub gamma_min: f64,
    #[arg(long, default_value_t = 1e3)]
    pub gamma_max: f64,
    /// Number of log-spaced points.
    #[arg(long, default_value_t = 121)]
    pub points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command, split by exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(msg) => CliError::Usage(msg),
            other => CliError::Runtime(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

/// Invocation details stamped into output headers.
pub(crate) struct Provenance {
    pub args: String,
}

impl Provenance {
    fn from_args(args: &[OsString]) -> Self {
        let words: Vec<String> = args
            .iter()
            .skip(1)
            .map(|a| {
                let s = a.to_string_lossy();
                if s.is_empty() || s.contains(char::is_whitespace) {
                    format!("'{s}'")
                } else {
                    s.into_owned()
                }
            })
            .collect();
        Provenance { args: words.join(" ") }
    }

    pub fn comments(&self) -> Vec<String> {
        vec![format!("args {}", self.args)]
    }

    /// Header lines followed by `body`, hashed so edits are detectable.
    pub fn stamp(&self, body: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# polar-ga {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# args {}", self.args);
        let _ = writeln!(out, "# sha256 {}", hex::encode(Sha256::digest(body.as_bytes())));
        out + body
    }
}

pub(crate) fn resolve_out(out_dir: &Path, explicit: &Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit.clone().unwrap_or_else(|| out_dir.join(default_name))
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let prov = Provenance::from_args(&args);
    match commands::run(&cli, &prov) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(args: &[&str]) -> Vec<OsString> {
        args.iter().map(OsString::from).collect()
    }

    #[test]
    fn parse_construct() {
        let cli = Cli::try_parse_from(os(&[
            "polar-ga", "construct", "--n", "10", "--rate", "0.5", "--design-snr-db", "-1.5",
        ]))
        .unwrap();
        match cli.command {
            Command::Construct(a) => {
                assert_eq!(a.dim.rate, Some(0.5));
                assert_eq!(a.design_snr_db, Some(-1.5));
                assert_eq!(a.method, Method::IMPROVED);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k_and_rate_are_exclusive() {
        let r = Cli::try_parse_from(os(&[
            "polar-ga", "construct", "--n", "4", "--k", "8", "--rate", "0.5", "--design-snr-db", "0",
        ]));
        assert!(r.is_err());
        let r = Cli::try_parse_from(os(&["polar-ga", "construct", "--n", "4", "--design-snr-db", "0"]));
        assert!(r.is_err());
    }

    #[test]
    fn unknown_method_is_usage_error() {
        assert_eq!(
            main_with_args(os(&["polar-ga", "sweep", "--n", "4", "--k", "8", "--methods", "bogus",
                "--snr-db-start", "0", "--snr-db-stop", "1"])),
            EXIT_USAGE
        );
    }

    #[test]
    fn provenance_hash_covers_body() {
        let p = Provenance { args: "kernel".into() };
        let a = p.stamp("x\n");
        let b = p.stamp("y\n");
        assert_ne!(a.lines().nth(2), b.lines().nth(2));
        assert!(a.ends_with("\nx\n"));
    }
}
