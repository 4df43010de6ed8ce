use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epr_core::mz::Splitter;

use crate::output::Format;

#[derive(Debug, Clone, Parser)]
#[command(name = "epr", version, about = "Numerical checks of EPR, Bell, GHZ and Hardy arguments")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Decimal places for table and CSV values (default: full precision).
    #[arg(long, global = true)]
    pub digits: Option<usize>,

    /// Read and print angles in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Singlet outcome probabilities for two measurement axes.
    SingletProb(AxisPair),
    /// Joint polarization probabilities for a photon pair.
    PhotonProb(PhotonArgs),
    /// Singlet correlation P(a, b).
    Correlation(AxisPair),
    /// Coplanar Bell inequality over a grid of angles in [0, π/2].
    BellScan(BellScanArgs),
    /// CHSH combination for four coplanar axes.
    Chsh(ChshArgs),
    /// Monte Carlo correlations from a local hidden-variable model.
    LhvSim(LhvArgs),
    /// Remote-measurement independence over seeded random unitaries.
    NoSignaling(NoSignalingArgs),
    /// GHZ operator algebra, eigenvalues and the realism enumeration.
    GhzVerify,
    /// Probabilities for a particle split between two boxes.
    Boxes,
    /// Detection probabilities of the double interferometer.
    Hardy(HardyArgs),
    /// States and inferred values in the K+, K− and K0 frames.
    HardyFrames,
    /// The four local-realism facts and their contradiction.
    HardyRealism,
}

#[derive(Debug, Clone, Args)]
pub struct AxisPair {
    #[arg(long, allow_hyphen_values = true)]
    pub theta_a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi_a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Debug, Clone, Args)]
pub struct PhotonArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BellScanArgs {
    /// Grid points, endpoints included.
    #[arg(long, default_value_t = 181, value_parser = clap::value_parser!(u32).range(1..))]
    pub steps: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChshPreset {
    Paper,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ChshSource {
    /// Preset axes: b′, a′, b, a fanned out in steps of π/4.
    #[arg(long, value_enum)]
    pub config: Option<ChshPreset>,
    /// Angles a,a′,b,b′ in the x–z plane.
    #[arg(long, value_delimiter = ',', value_name = "A,A',B,B'", allow_hyphen_values = true)]
    pub angles: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ChshArgs {
    #[command(flatten)]
    pub source: ChshSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Sign,
}

#[derive(Debug, Clone, Args)]
pub struct LhvArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Sign)]
    pub model: ModelArg,
    #[arg(long, default_value_t = epr_core::bell::DEFAULT_SAMPLES)]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Angle between neighbouring axes, in [0, π].
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_hyphen_values = true)]
    pub theta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct NoSignalingArgs {
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
}

#[derive(Debug, Clone, Args)]
pub struct HardyArgs {
    /// File with `bs2_plus = ...` and `bs2_minus = ...` lines.
    #[arg(long, conflicts_with_all = ["bs2_plus", "bs2_minus"], required_unless_present_all = ["bs2_plus", "bs2_minus"])]
    pub experiment: Option<PathBuf>,
    #[arg(long, value_parser = parse_splitter, requires = "bs2_minus")]
    pub bs2_plus: Option<Splitter>,
    #[arg(long, value_parser = parse_splitter, requires = "bs2_plus")]
    pub bs2_minus: Option<Splitter>,
}

fn parse_splitter(s: &str) -> Result<Splitter, String> {
    s.parse()
}
