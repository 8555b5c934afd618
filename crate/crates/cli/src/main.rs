mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "triclose", version, about = "Triadic-closure metrics for coauthorship corpora")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Corpus file (`-` for stdin)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Input layout; inferred from the file extension when omitted
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,

    /// Write data here instead of stdout; a `.manifest.json` sidecar is written next to it
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Use the brute-force reference implementation (small inputs only)
    #[arg(long, global = true)]
    pub oracle: bool,

    /// First year kept by the corpus filter
    #[arg(long, global = true)]
    pub from_year: Option<i32>,

    /// Last year kept by the corpus filter
    #[arg(long, global = true)]
    pub to_year: Option<i32>,

    /// Drop papers with more than N authors
    #[arg(long, global = true, conflicts_with = "percentile")]
    pub max_authors: Option<usize>,

    /// Drop papers larger than the byline size covering this fraction of papers
    #[arg(long, global = true)]
    pub percentile: Option<f64>,

    /// Keep single-authored papers
    #[arg(long, global = true)]
    pub keep_single_authored: bool,

    /// Compute the percentile cap before dropping single-authored papers
    #[arg(long, global = true)]
    pub percentile_before_single_drop: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Jsonl,
    Tsv,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EligibilityArg {
    Strict,
    Literal,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Args, Serialize)]
pub struct WindowArgs {
    /// Year in which closure is counted
    #[arg(long)]
    pub target_year: i32,

    /// Length of the preceding window in years
    #[arg(long, default_value_t = 5)]
    pub window: u32,

    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ModeArgs {
    #[arg(long, value_enum, default_value = "strict")]
    pub eligibility: EligibilityArg,

    /// Restrict pairs to authors active in both the preceding window and the target year
    #[arg(long, value_enum, default_value = "on")]
    pub dual_activity: Switch,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Parse and filter the input, then report what was kept and dropped
    Validate,
    /// Corpus and projection statistics
    Stats {
        /// Also write the one-mode edge list (`author1<TAB>author2`)
        #[arg(long)]
        edge_list: Option<PathBuf>,
    },
    /// Closed 2-paths over 2-paths on the author projection
    Ncc {
        #[arg(long)]
        csv: bool,
    },
    /// Closed 4-paths over 4-paths on the author-paper graph
    Occ {
        #[arg(long)]
        csv: bool,
    },
    /// Open pairs of the preceding window that coauthor in the target year
    Tcc {
        #[command(flatten)]
        window: WindowArgs,
        /// Write one pair observation per line
        #[arg(long)]
        details: Option<PathBuf>,
    },
    /// TCC for several preceding-window lengths
    Sweep {
        #[arg(long)]
        target_year: i32,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        lengths: Vec<u32>,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        csv: bool,
    },
    /// Share of closed pairs whose closing paper includes a shared coauthor
    Involvement {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Closure ratio by number of shared collaborators (CSV)
    SharedCurve {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Authors active in both the target year and the preceding window
    Overlap {
        #[arg(long)]
        target_year: i32,
        #[arg(long, default_value_t = 5)]
        window: u32,
    },
    /// Per-year NCC, OCC, TCC sweep, overlap and involvement (CSV)
    Timeseries {
        #[arg(long)]
        from: i32,
        #[arg(long)]
        to: i32,
        #[arg(long, default_value_t = 5)]
        window: u32,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        sweep: Vec<u32>,
        #[command(flatten)]
        mode: ModeArgs,
        /// JSON lines instead of CSV
        #[arg(long)]
        json: bool,
    },
    /// Generate a synthetic corpus (JSONL) plus a config-and-log sidecar
    Synth {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1995)]
        start_year: i32,
        #[arg(long, default_value_t = 15)]
        years: u32,
        #[arg(long, default_value_t = 200)]
        papers_per_year: usize,
        /// Fixed size (`3`) or weighted sizes (`2:0.3,3:0.4,4:0.3`)
        #[arg(long, default_value = "2:0.3,3:0.4,4:0.3")]
        authors_per_paper: String,
        #[arg(long, default_value_t = 400)]
        initial_authors: usize,
        #[arg(long, default_value_t = 40)]
        pool_growth: usize,
        #[arg(long, default_value_t = 0.2)]
        repeat_prob: f64,
        #[arg(long, default_value_t = 0.1)]
        closure_prob: f64,
        #[arg(long, default_value_t = 5)]
        closure_lookback: u32,
    },
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
        }
    }
}

impl From<triclose::Error> for Failure {
    fn from(e: triclose::Error) -> Self {
        match e {
            triclose::Error::InvalidConfig(_) | triclose::Error::InvertedRange { .. } => Failure::Usage(e.into()),
            other => Failure::Data(other.into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(e) | Failure::Data(e)) = &f;
            eprintln!("error: {e:#}");
            ExitCode::from(f.code())
        }
    }
}
