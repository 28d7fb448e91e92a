//! The `tlu` command line: truth-table separability, single-unit training
//! with update traces, small MLPs, bitmap classification, and plot emission.
//!
//! Exit codes are a stable contract:
//!
//! | code | meaning                                  |
//! |------|------------------------------------------|
//! | 0    | success / feasible / accepted            |
//! | 1    | input error (bad flags, files, shapes)   |
//! | 2    | infeasible / rejected                    |
//! | 3    | training stopped without converging      |

pub mod commands;
pub mod data;
pub mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT_ERROR: u8 = 1;
pub const EXIT_NEGATIVE: u8 = 2;
pub const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tlu",
    version,
    about = "Threshold logic units: separability, delta-rule training, MLPs, and plots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide whether a truth table is realizable by one threshold unit.
    Separability {
        /// Truth-table CSV (header x1,...,xn,f; one 0/1 row per combination).
        table: PathBuf,
    },
    /// Train a single unit by iterative error correction, tracing updates.
    Delta(DeltaArgs),
    /// Train or evaluate a small feed-forward network.
    Mlp {
        #[command(subcommand)]
        command: MlpCommand,
    },
    /// Classify a 16x16 bitmap with a trained network.
    Classify(ClassifyArgs),
    /// Emit a scatter/boundary SVG (2 inputs) or a hyperplane mesh CSV (3 inputs).
    Plot(PlotArgs),
}

#[derive(clap::Args)]
pub struct DeltaArgs {
    /// Truth-table CSV.
    pub table: PathBuf,
    /// Initial weights, comma separated (e.g. 0.2,-0.5).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "t")]
    pub w: Option<Vec<f64>>,
    /// Initial threshold.
    #[arg(long, allow_hyphen_values = true, requires = "w")]
    pub t: Option<f64>,
    /// Learning constant added to every observed error.
    #[arg(long, default_value_t = 0.1)]
    pub e: f64,
    /// Column visiting order.
    #[arg(long, value_enum, default_value_t = OrderArg::Gray)]
    pub order: OrderArg,
    #[arg(long, default_value_t = 10_000)]
    pub max_updates: usize,
    /// Write the update trace to this CSV file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Seed for random initial weights in [-1, 1) when --w/--t are absent.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OrderArg {
    /// Reflected Gray sequence over the input bits (00, 01, 11, 10, ...).
    Gray,
    /// The table's own row order.
    File,
}

#[derive(Subcommand)]
pub enum MlpCommand {
    /// Train with full-batch gradient descent and write the model file.
    Train(MlpTrainArgs),
    /// Print a trained network's outputs, one line per data row.
    Eval(MlpEvalArgs),
}

#[derive(clap::Args)]
pub struct MlpTrainArgs {
    /// Data CSV: columns named x* are inputs, the rest are targets.
    pub data: PathBuf,
    /// Layer sizes, input layer first.
    #[arg(long, value_delimiter = ',', default_value = "2,3,1")]
    pub arch: Vec<usize>,
    /// One activation per non-input layer: tanh, logistic, or identity.
    #[arg(long, value_delimiter = ',', default_value = "tanh,identity")]
    pub act: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Learning rate for the full-batch updates.
    #[arg(long, default_value_t = 0.5)]
    pub lr: f64,
    #[arg(long, default_value_t = 20_000)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub target_loss: f64,
    /// Parameters start uniform in [-init-scale, +init-scale).
    #[arg(long, default_value_t = 0.5)]
    pub init_scale: f64,
    /// Where to write the trained model.
    #[arg(long, default_value = "model.mlp")]
    pub model: PathBuf,
    /// Where to write the per-epoch loss history CSV.
    #[arg(long, default_value = "loss_history.csv")]
    pub loss_history: PathBuf,
}

#[derive(clap::Args)]
pub struct MlpEvalArgs {
    /// Data CSV; target columns, if present, are ignored.
    pub data: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
}

#[derive(clap::Args)]
pub struct ClassifyArgs {
    /// 16x16 ASCII portable bitmap (P1).
    pub image: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    /// Label file: line k names class k.
    #[arg(long)]
    pub labels: PathBuf,
    /// Minimum output score for a class to count as recognized.
    #[arg(long, default_value_t = 0.8)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value_t = EncodingArg::Flat256)]
    pub encoding: EncodingArg,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum EncodingArg {
    /// 256 inputs, one 0/1 entry per pixel.
    Flat256,
    /// 16 inputs, one row word in [0, 1] per image row.
    Rowword16,
}

#[derive(clap::Args)]
pub struct PlotArgs {
    /// Truth-table CSV with 2 or 3 inputs.
    pub table: PathBuf,
    /// Unit as w1,...,wn,t. Defaults to the decided witness when separable.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub unit: Option<Vec<f64>>,
    /// Output file: SVG for 2 inputs, mesh CSV for 3.
    #[arg(long)]
    pub out: PathBuf,
    /// Grid resolution per axis for the 3-input mesh.
    #[arg(long, default_value_t = 10)]
    pub grid_steps: usize,
}

pub fn main_impl() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version go to stdout and are not failures; anything
            // else is an input error under the exit-code contract.
            let code = if err.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Separability { table } => commands::separability::run(&table),
        Command::Delta(args) => commands::delta::run(&args),
        Command::Mlp { command } => match command {
            MlpCommand::Train(args) => commands::mlp::train(&args),
            MlpCommand::Eval(args) => commands::mlp::eval(&args),
        },
        Command::Classify(args) => commands::classify::run(&args),
        Command::Plot(args) => commands::plot::run(&args),
    }
}
