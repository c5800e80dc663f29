//! The `slowperc` command-line tool.
//!
//! Each subcommand lives in [`commands`]; [`run`] parses arguments and maps
//! failures to exit codes (1 usage, 2 data, 3 I/O).

pub mod commands;
pub mod dataset;
pub mod error;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use slowperc_core::codec::{ParseMode, PerceptualRuler};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "slowperc", version, about = "Geometric figure dataset, codec and evaluation tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic dataset of images and sequences.
    Generate(GenerateArgs),
    /// Score predicted sequences against ground truth.
    Eval(EvalArgs),
    /// Length and angle histograms of a dataset.
    Stats(StatsArgs),
    /// Figure JSON to sequence text.
    Encode(EncodeArgs),
    /// Sequence text to figure JSON.
    Decode(DecodeArgs),
    /// Draw a figure as PNG or SVG.
    Render(RenderArgs),
    /// Wrap a parsed figure in a reference prompt.
    Reference(ReferenceArgs),
}

/// `--strict` / `--lenient` pair.
#[derive(Debug, Clone, Copy, Default, Args)]
pub struct ModeFlags {
    /// Reject any deviation from the grammar.
    #[arg(long, conflicts_with = "lenient")]
    pub strict: bool,
    /// Skip malformed statements and report them (default).
    #[arg(long)]
    pub lenient: bool,
}

impl ModeFlags {
    pub fn mode(&self) -> ParseMode {
        if self.strict {
            ParseMode::Strict
        } else {
            ParseMode::Lenient
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Generator config (TOML). Missing keys take defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub count: u64,
    /// Perceptual ruler, a length or `inf`.
    #[arg(long, default_value = "inf")]
    pub ruler: PerceptualRuler,
    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Jitter gaze points by up to this fraction of the segment length.
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Also write an SVG next to every PNG.
    #[arg(long)]
    pub svg: bool,
    /// Apply photometric jitter and noise to the PNGs.
    #[arg(long)]
    pub perturb: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Predictions (JSONL).
    #[arg(long)]
    pub pred: PathBuf,
    /// Ground truth (JSONL), parsed strictly.
    #[arg(long)]
    pub gt: PathBuf,
    /// IoU thresholds.
    #[arg(long, value_delimiter = ',', default_values_t = [0.75, 0.9])]
    pub iou: Vec<f64>,
    /// Widen projection intervals by this much before IoU.
    #[arg(long = "iou-pad", default_value_t = 0.0)]
    pub iou_pad: f64,
    /// Parse mode for predictions.
    #[command(flatten)]
    pub mode: ModeFlags,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    /// Dataset JSONL.
    pub dataset: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EncodeArgs {
    /// Figure JSON.
    pub figure: PathBuf,
    #[arg(long, default_value = "inf")]
    pub ruler: PerceptualRuler,
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DecodeArgs {
    /// Sequence text.
    pub sequence: PathBuf,
    #[arg(long, default_value = "inf")]
    pub ruler: PerceptualRuler,
    #[command(flatten)]
    pub mode: ModeFlags,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    /// Figure JSON.
    pub figure: PathBuf,
    #[arg(long, default_value_t = 96)]
    pub dpi: u32,
    #[arg(long = "line-width", default_value_t = 2.0)]
    pub line_width: f64,
    #[arg(long)]
    pub dashed: bool,
    /// `.png` or `.svg`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ReferenceArgs {
    /// Figure JSON (`.json`) or sequence text.
    pub figure: PathBuf,
    #[arg(long, default_value = "inf")]
    pub ruler: PerceptualRuler,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn dispatch(cli: Cli) -> error::Result<()> {
    match cli.command {
        Command::Generate(a) => commands::generate::run(&a),
        Command::Eval(a) => commands::eval::run(&a),
        Command::Stats(a) => commands::stats::run(&a),
        Command::Encode(a) => commands::codec::encode(&a),
        Command::Decode(a) => commands::codec::decode(&a),
        Command::Render(a) => commands::render::run(&a),
        Command::Reference(a) => commands::reference::run(&a),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
