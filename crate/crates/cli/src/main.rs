mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gkz_core::gorcone::GorensteinError;
use gkz_core::gseries::SeriesError;
use gkz_core::polycone::ConeError;
use gkz_core::srring::RingError;
use gkz_core::triang::TriangError;

#[derive(Parser, Debug)]
#[command(name = "gkz", version, about = "Regular triangulations, Stanley-Reisner rings and ring-valued Gamma-series for GKZ systems")]
pub struct Cli {
    /// Configuration JSON: {"A": [[...]], "a0vee": [...] (optional)}.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Write the artifact here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Seed for generic-vector choices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct TriangulationArg {
    /// `T<k>` (k-th in the sorted enumeration), a JSON file with "maximal", "1,2,4;1,3,4;..." or "124,134,...".
    #[arg(short, long)]
    triangulation: String,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[command(flatten)]
    tri: TriangulationArg,
    /// `0`, an integer vector "b1,b2,..." or a column combination such as "-a4".
    #[arg(short, long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
    /// Truncation bound on the l1 norm of the exponents.
    #[arg(long, default_value_t = 4)]
    order: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relation lattice basis and degree functional.
    Kernel,
    /// Regular triangulation from a weight in the relation-lattice dual or from heights.
    Triangulate {
        /// Comma-separated rationals, one per basis relation.
        #[arg(long, conflicts_with = "heights", allow_hyphen_values = true)]
        weights: Option<String>,
        /// Comma-separated positive rationals, one per point.
        #[arg(long, allow_hyphen_values = true)]
        heights: Option<String>,
    },
    /// All regular triangulations with their flip adjacency.
    Enumerate,
    /// Structure report of the ring of a triangulation.
    Ring(TriangulationArg),
    /// Truncated Gamma-series.
    Series(SeriesArgs),
    /// Exact operator, recursion and coefficient checks for a truncated series.
    Verify {
        #[command(flatten)]
        series: SeriesArgs,
        /// Number of random non-basis relations for the box operator check.
        #[arg(long, default_value_t = 5)]
        random_relations: usize,
    },
    /// Numeric value of a truncated series at a point.
    Evaluate {
        #[command(flatten)]
        series: SeriesArgs,
        /// Comma-separated complex coordinates such as "0.1+2i,-0.3+1.5i,...".
        #[arg(long, allow_hyphen_values = true, required_unless_present = "deep")]
        z: Option<String>,
        /// Use a seeded point this many times past the domain boundary instead of --z.
        #[arg(long, conflicts_with = "z")]
        deep: Option<f64>,
        /// Working precision in bits; 53 selects double precision.
        #[arg(long, default_value_t = 53)]
        precision: usize,
        /// Skip the convergence-domain test.
        #[arg(long)]
        no_domain_check: bool,
    },
    /// Gorenstein cone report, interior identity and projected fan.
    Gorenstein {
        #[command(flatten)]
        tri: TriangulationArg,
        /// Maximal simplex used for the projected fan, e.g. "124"; defaults to the first one.
        #[arg(long)]
        i0: Option<String>,
        #[arg(long, default_value_t = 3)]
        degree_bound: usize,
    },
    /// Sign vectors of the chambers of the relation-lattice arrangement.
    Chambers,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Kernel => "kernel",
            Command::Triangulate { .. } => "triangulate",
            Command::Enumerate => "enumerate",
            Command::Ring(_) => "ring",
            Command::Series(_) => "series",
            Command::Verify { .. } => "verify",
            Command::Evaluate { .. } => "evaluate",
            Command::Gorenstein { .. } => "gorenstein",
            Command::Chambers => "chambers",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { kind: &'static str, message: String },
    /// The command ran but reported failed checks; the artifact is still written.
    Failed(Value),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn domain(kind: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Domain { kind, message: e.to_string() }
    }
}

impl From<TriangError> for CliError {
    fn from(e: TriangError) -> Self {
        let kind = match e {
            TriangError::DegenerateHeights => "DegenerateHeights",
            TriangError::NonPositiveHeights => "NonPositiveHeights",
            TriangError::WallWeight => "WallWeight",
            TriangError::NotRegular(_) => "NotRegular",
            TriangError::InvalidSimplex(_) => "InvalidSimplex",
            TriangError::DimensionMismatch { .. } => "DimensionMismatch",
            TriangError::NoDegreeFunctional => "NoDegreeFunctional",
            TriangError::RankDeficient { .. } => "RankDeficient",
            TriangError::InternalInconsistency(_) => "InternalInconsistency",
        };
        CliError::domain(kind, e)
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::domain("RingError", e)
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        let kind = match e {
            SeriesError::NoIntegerSolution => "NoIntegerSolution",
            SeriesError::NotInLattice => "NotInLattice",
            SeriesError::OutsideDomain => "OutsideDomain",
            SeriesError::DimensionMismatch { .. } => "DimensionMismatch",
            SeriesError::Ring(_) => "RingError",
        };
        CliError::domain(kind, e)
    }
}

impl From<GorensteinError> for CliError {
    fn from(e: GorensteinError) -> Self {
        match e {
            GorensteinError::PreconditionFailed(c) => CliError::Domain {
                kind: "PreconditionFailed",
                message: format!("{}: {c}", serde_json::to_value(c).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()),
            },
            GorensteinError::NotMaximal(_) => CliError::domain("NotMaximal", e),
            GorensteinError::Triang(t) => t.into(),
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        CliError::domain("ConeError", e)
    }
}

fn write(cli: &Cli, v: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).map_err(|e| e.to_string())? + "\n";
    match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let command = cli.command.name();
    let envelope = |key: &str, v: Value| json!({ "seed": cli.seed, "command": command, key: v });
    let (artifact, code) = match commands::run(&cli) {
        Ok(v) => (envelope("result", v), 0),
        Err(CliError::Failed(v)) => (envelope("result", v), 1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            (envelope("error", json!({ "kind": "Usage", "message": m })), 2)
        }
        Err(CliError::Domain { kind, message }) => {
            eprintln!("error: {message}");
            (envelope("error", json!({ "kind": kind, "message": message })), 1)
        }
    };
    if let Err(e) = write(&cli, &artifact) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
