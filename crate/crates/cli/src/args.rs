use clap::{Args, Parser, Subcommand, ValueEnum};
use negabeta::numeration::{Preset, DEFAULT_MAX_ITERS};
use negabeta::oracle::{DEFAULT_ORACLE_BITS, DEFAULT_SAMPLE_SEED};

#[derive(Parser, Debug)]
#[command(name = "negabeta", version, about = "Expansions in base -β on a shifted domain [l, l+1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Iteration budget for orbit computations.
    #[arg(long, global = true, env = "NEGABETA_MAX_ITERS", default_value_t = DEFAULT_MAX_ITERS)]
    pub max_iters: usize,

    /// Starting precision of the interval oracle, in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BITS)]
    pub oracle_bits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone, Default)]
pub struct BaseArgs {
    /// Minimal polynomial of β, ascending coefficients, e.g. "-1,-1,1".
    #[arg(long, allow_hyphen_values = true)]
    pub beta_poly: Option<String>,

    /// Interval isolating β among the roots, e.g. "1,2".
    #[arg(long, allow_hyphen_values = true)]
    pub beta_interval: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SystemArgs {
    #[command(flatten)]
    pub base: BaseArgs,

    /// Named left endpoint: ito-sadahiro, balanced or inv-beta.
    #[arg(long, value_parser = parse_preset)]
    pub preset: Option<Preset>,

    /// Left endpoint as coordinates in 1, β, β², ...: "-1/2" or "0,-1/3".
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<String>,

    /// The whole system as JSON.
    #[arg(long)]
    pub system: Option<String>,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: negabeta::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Digits of x, or of (−β)^-k x when --real is given.
    Expand {
        #[command(flatten)]
        system: SystemArgs,
        /// The point, as coordinates in 1, β, β², ...
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Rescale x into the domain first.
        #[arg(long)]
        real: bool,
    },
    /// Numeric value of digit words such as "2 0 0 (2 1)".
    Value {
        #[command(flatten)]
        system: SystemArgs,
        /// Words; read from stdin, one per line, when absent.
        #[arg(allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// The reference strings d(l), d*(l) and d*(r).
    Refs {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Whether eventually periodic words are expansions of some point.
    Admissible {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// Automaton of the finite words occurring in expansions.
    Automaton {
        #[command(flatten)]
        system: SystemArgs,
        /// Keep the unminimized construction.
        #[arg(long)]
        raw: bool,
        /// Also count accepted words of each length up to N.
        #[arg(long, value_name = "N")]
        count: Option<usize>,
    },
    /// Pisot, Salem or neither.
    Classify {
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Structural predicates of the system.
    Predicates {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Properties of the systems with l = −k/grid for k = grid−1, ..., 0.
    ScanL {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
    /// Compare exact digits with interval-oracle digits at random points.
    OracleCheck {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 50)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_SEED)]
        seed: u64,
    },
    /// Alternate-order comparison of two words.
    AltCompare {
        #[arg(allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// The set of points whose expansion starts with a finite word.
    Cylinder {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Test a claimed d(l) of the Ito-Sadahiro system.
    Refute {
        #[arg(allow_hyphen_values = true)]
        words: Vec<String>,
    },
}
