use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Fault-tolerant rotation synthesis and chemistry resource estimates.
#[derive(Debug, Parser)]
#[command(name = "ftqc", version)]
pub struct Cli {
    /// Seed for randomized commands; falls back to FTQC_SEED, then 7.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate RZ(angle) over the Clifford+T set.
    Synth(SynthArgs),
    /// Build a phase-kickback rotation and report its error and cost.
    Kickback(KickbackArgs),
    /// Build a quantum variable rotation and report its cost.
    Qvr(QvrArgs),
    /// Monte Carlo statistics of the ancilla cascade.
    ParSim(ParSimArgs),
    /// Second-quantized phase-estimation estimate from an integral file.
    #[command(name = "estimate-2q")]
    Estimate2q(Estimate2qArgs),
    /// First-quantized split-operator estimate.
    #[command(name = "estimate-1q")]
    Estimate1q(Estimate1qArgs),
    /// Efficient frontiers and the cost-minimizing point.
    Frontier(FrontierArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthMethod {
    Min,
    Sk,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub angle: f64,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value = "min")]
    pub method: SynthMethod,
    /// Length bound of the sequence search.
    #[arg(long, default_value_t = ftqc_core::synth::DEFAULT_SEARCH_LEN)]
    pub max_len: usize,
    /// Recursion level for `--method sk`.
    #[arg(long, default_value_t = 2)]
    pub level: usize,
}

#[derive(Debug, Args)]
pub struct KickbackArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub phi: f64,
    /// γ-register width; derived from --epsilon when absent.
    #[arg(long)]
    pub bits: Option<usize>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Odd multiplier of the γ register.
    #[arg(long, default_value_t = 1)]
    pub k: u64,
    #[arg(long)]
    pub controlled: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QvrMethod {
    Kickback,
    Bitwise,
}

#[derive(Debug, Args)]
pub struct QvrArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub xi: f64,
    /// Width of the rotated register.
    #[arg(long)]
    pub bits: usize,
    #[arg(long, value_enum, default_value = "kickback")]
    pub method: QvrMethod,
    /// Total accuracy for bitwise sequences.
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
    #[arg(long)]
    pub controlled: bool,
}

#[derive(Debug, Args)]
pub struct ParSimArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 20)]
    pub ancillas: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LadderArg {
    Direct,
    Teleported,
}

#[derive(Debug, Args)]
pub struct Estimate2qArgs {
    /// Integral table: `p q value` and `p q r s value` lines, 1-based.
    #[arg(long)]
    pub integrals: PathBuf,
    /// kickback, sequence, sk, par or all.
    #[arg(long, default_value = "all")]
    pub method: String,
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 10)]
    pub readout_bits: u32,
    #[arg(long, default_value_t = 0.1)]
    pub dt: f64,
    /// Drop entries with magnitude at or below this.
    #[arg(long, default_value_t = 0.0)]
    pub cutoff: f64,
    #[arg(long, value_enum, default_value = "teleported")]
    pub ladder: LadderArg,
    #[arg(long, default_value_t = 1e-3)]
    pub seconds_per_gate: f64,
    /// Also write the retained-term curve over thresholds as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Inplace,
    Parallel,
}

#[derive(Debug, Args)]
pub struct Estimate1qArgs {
    #[arg(long)]
    pub particles: usize,
    #[arg(long)]
    pub grid_bits: usize,
    #[arg(long, default_value_t = 1023)]
    pub steps: u64,
    #[arg(long, value_enum, default_value = "inplace")]
    pub mode: ModeArg,
    /// Arithmetic width in bits.
    #[arg(long, default_value_t = ftqc_core::firstq::DEFAULT_ARITH_BITS)]
    pub width: u32,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Also write both modes for b = 2..=particles as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FrontierArgs {
    /// JSON reports from the estimators, or arrays of points.
    #[arg(long = "in", num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    /// depth, qubits, weighted:A,B or cap:N.
    #[arg(long, default_value = "depth")]
    pub cost: String,
    /// Also write the frontier points as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only this criterion.
    #[arg(long)]
    pub criterion: Option<u8>,
}
