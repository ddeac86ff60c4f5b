use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "moduli", version, about = "Intersection pairings on moduli of SU(n) bundles, with cross-checks")]
pub struct Cli {
    /// Emit JSON (sorted keys, every number as a string).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit one CSV row per spec.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Intersection pairing of a-, f- and b-classes.
    Pair(PairArgs),
    /// Verlinde dimension from the residue formula against the sine sum.
    Verlinde(VerlindeArgs),
    /// Independent oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Deterministic self-check suite.
    Selftest,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Rank; comma lists form a grid.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub d: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<usize>,
    /// a-class exponent, as r=m.
    #[arg(long = "a")]
    pub a: Vec<String>,
    /// f-class exponent, as r=m.
    #[arg(long = "f")]
    pub f: Vec<String>,
    /// b-class index, as r:j.
    #[arg(long = "b")]
    pub b: Vec<String>,
    /// Rescale by ε (a rational p/q).
    #[arg(long)]
    pub epsilon: Option<String>,
    /// mainab, t96b, eq936 or binverse-check.
    #[arg(long)]
    pub route: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerlindeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub d: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<usize>,
    /// Level; must be a multiple of n.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u64>,
    /// Decimal digits for the sine sum.
    #[arg(long, default_value_t = moduli_core::verlinde::DEFAULT_DIGITS)]
    pub precision: usize,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Truncated lattice sum over regular weights.
    Witten(WittenArgs),
    /// Lattice sum against the residue side for a built-in test function.
    Szenes(SzenesArgs),
    /// Rank-two closed form for a₂^j.
    Thaddeus(ThaddeusArgs),
    /// Rank-two symplectic volume from Bernoulli numbers.
    Svol(SvolArgs),
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    /// Box half-width for the first sum.
    #[arg(long, default_value_t = 1000)]
    pub cutoff: i64,
    /// Number of cutoff doublings after the first sum.
    #[arg(long, default_value_t = 1)]
    pub doublings: u32,
    /// Significant digits in decimal output.
    #[arg(long, default_value_t = 15)]
    pub digits: usize,
    /// Relative tolerance for the agreement and convergence checks.
    #[arg(long, default_value_t = 1e-5)]
    pub tolerance: f64,
}

#[derive(Args, Debug)]
pub struct WittenArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub d: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<usize>,
    #[arg(long = "a")]
    pub a: Vec<String>,
    #[command(flatten)]
    pub lattice: LatticeArgs,
}

#[derive(Args, Debug)]
pub struct SzenesArgs {
    /// Test function ids; all four by default.
    #[arg(long, value_delimiter = ',')]
    pub function: Vec<String>,
    #[command(flatten)]
    pub lattice: LatticeArgs,
}

#[derive(Args, Debug)]
pub struct ThaddeusArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub j: Vec<usize>,
    /// Allow j = g − 1 through η(0) = 1/2.
    #[arg(long)]
    pub regularize: bool,
}

#[derive(Args, Debug)]
pub struct SvolArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}
