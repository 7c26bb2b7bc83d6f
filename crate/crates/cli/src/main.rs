mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fusionframe::generators::GenKind;
use fusionframe::{Field, Tol};

#[derive(Debug, Parser)]
#[command(name = "fusionframe", version, about = "Fusion frame duals: validate, construct and verify")]
pub struct Cli {
    /// Tolerance for identity and duality checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Seed for sampled checks and the random generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Output path. For `dual` and `gen` this is the fusion frame written;
    /// for the other commands the report goes here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DualMode {
    Canonical,
    LeftInverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    SlidingWindow,
    CyclicWindow,
    Random,
}

impl From<KindArg> for GenKind {
    fn from(k: KindArg) -> GenKind {
        match k {
            KindArg::SlidingWindow => GenKind::SlidingWindow,
            KindArg::CyclicWindow => GenKind::CyclicWindow,
            KindArg::Random => GenKind::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds and tight/Parseval/uniform flags of a fusion frame.
    Validate { path: PathBuf },

    /// Construct a dual fusion frame and its operator Q.
    Dual {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = DualMode::Canonical)]
        mode: DualMode,
        /// Row-major parameter matrix R (n x Σd_i); zero when omitted.
        #[arg(long = "r")]
        r: Option<PathBuf>,
        /// Comma-separated dual weights; defaults to the input weights.
        #[arg(long = "v", value_delimiter = ',')]
        v: Option<Vec<f64>>,
        /// Where to write Q; defaults to `<out stem>.q.json`.
        #[arg(long)]
        q_out: Option<PathBuf>,
    },

    /// Check whether (V, Q) is a dual of W.
    Verify {
        #[arg(required_unless_present = "batch")]
        w: Option<PathBuf>,
        #[arg(required_unless_present = "batch")]
        v: Option<PathBuf>,
        #[arg(required_unless_present = "batch")]
        q: Option<PathBuf>,
        /// Directory whose subdirectories each hold w.json, v.json and q.json.
        #[arg(long, conflicts_with_all = ["w", "v", "q"])]
        batch: Option<PathBuf>,
    },

    /// Compare global frame duality with the Q-duality lifted from local frames.
    LocalLift { w: PathBuf, v: PathBuf },

    /// Generate a fusion frame.
    Gen {
        /// JSON generator spec; overrides the flags below.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum, required_unless_present = "spec")]
        kind: Option<KindArg>,
        #[arg(long, required_unless_present = "spec")]
        dim: Option<usize>,
        #[arg(long, default_value_t = 1)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
        field: FieldArg,
    },
}

impl Cli {
    pub fn tol(&self) -> fusionframe::Result<Tol> {
        match self.tol {
            Some(t) => Tol::default().with_identity(t),
            None => Ok(Tol::default()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
