use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rado", version, about = "Maker-Breaker games on solutions of linear systems over random integer boards")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "RADO_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Machine-readable output instead of text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Largest component (in vertices) the exact solver will take on.
    #[arg(long, global = true)]
    pub cap: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, irredundancy, (*), m(A), balance and the predicted threshold.
    Analyze(AnalyzeArgs),
    /// List the winning sets on a board.
    Enumerate(BoardCommand),
    /// Largest solution-free subset of [n].
    Mu(MuArgs),
    /// Per-component decomposition case or bicycle witness.
    Detect(BoardCommand),
    /// Winner under optimal play, or a certified winner.
    Solve(SolveArgs),
    /// Threshold sweep over random boards.
    Simulate(SimulateArgs),
    /// Play against a strategy from the terminal.
    Play(PlayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Matrix file: `rows cols`, the rows of A, then b (or the JSON form).
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,

    /// Built-in system: schur, 3ap or sidon.
    #[arg(long, conflicts_with_all = ["file", "equation"])]
    pub system: Option<String>,

    /// A single equation given by its coefficients, e.g. `2,-3`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "file")]
    pub equation: Option<Vec<i64>>,

    /// Right-hand side of --equation.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true, requires = "equation")]
    pub rhs: i64,
}

#[derive(Debug, Clone, Args)]
pub struct BoardArgs {
    /// Board is [n], or [n]_p with --p.
    #[arg(long)]
    pub n: Option<u32>,

    /// Keep each element of [n] with this probability.
    #[arg(long, requires = "n")]
    pub p: Option<f64>,

    /// Explicit board members, e.g. `3,5,8`.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "hypergraph"])]
    pub board: Option<Vec<u32>>,

    /// A hypergraph in JSON, `{"vertices": [...], "edges": [[...]]}`, instead of a system.
    #[arg(long, conflicts_with = "n")]
    pub hypergraph: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BoardCommand {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub board: BoardArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Search bound for irredundancy witnesses.
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MuModeArg {
    Exact,
    Bnb,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    #[arg(long)]
    pub n: u32,

    #[arg(long, value_enum, default_value_t = MuModeArg::Bnb)]
    pub mode: MuModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Maker,
    Breaker,
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Vertices Breaker claims per turn.
    #[arg(long, default_value_t = 1)]
    pub bias: u32,

    #[arg(long, value_enum, default_value_t = Side::Maker)]
    pub first: Side,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: BoardCommand,

    #[command(flatten)]
    pub game: GameArgs,

    /// Certify from structure and sub-boards instead of solving the whole board.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Board sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u32>,

    /// Multipliers of n^(-1/m(A)).
    #[arg(long, value_delimiter = ',', conflicts_with = "p")]
    pub multipliers: Option<Vec<f64>>,

    /// Explicit probabilities.
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,

    #[arg(long, default_value_t = 20)]
    pub trials: usize,

    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write a gnuplot frequency table.
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,

    /// Print a logistic fit of the Maker frequency per n.
    #[arg(long)]
    pub fit: bool,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[command(flatten)]
    pub input: BoardCommand,

    #[command(flatten)]
    pub game: GameArgs,

    /// Strategy for Maker; the human plays any side left open.
    #[arg(long)]
    pub maker: Option<String>,

    /// Strategy for Breaker, e.g. es-breaker, dl2-breaker, minimax.
    #[arg(long)]
    pub breaker: Option<String>,
}
