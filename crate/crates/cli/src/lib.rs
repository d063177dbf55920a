//! The `slither` command line, as a library so it can be driven in-process.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code: 0 on success, 2 when the input is rejected, 1 on internal failure.

mod commands;
mod verify;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slither_core::codec::CodecError;
use slither_core::enumeration::EnumError;
use slither_core::games::GameError;
use slither_core::io::FormatError;
use slither_core::tree::TreeError;
use slither_core::Variant;
use thiserror::Error;

pub use verify::{run_checks, Check, Level};

#[derive(Debug, Parser)]
#[command(name = "slither", version, about = "Slither codes, tree parameters and the sampling games built on them")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: $SLITHER_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Where to read a tree or code from.
#[derive(Debug, Args)]
pub struct Input {
    /// Read from this file instead of the argument or standard input.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tree in, slither code out.
    Encode {
        #[arg(long)]
        variant: Variant,
        /// Also print the auxiliary sequence (json includes it always).
        #[arg(long)]
        aux: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Slither code in, tree out.
    Decode {
        #[arg(long)]
        variant: Variant,
        /// Vertex count; defaults to the symbol count plus one.
        #[arg(long)]
        n: Option<usize>,
        /// Symbols, e.g. "3 1 4 1 5"; read from input when absent.
        code: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Tree in, independence, matching, path cover and classification out.
    Params {
        /// Also report the maximum edge set with degree at most K.
        #[arg(long)]
        b: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Read parameters off a code without decoding it.
    Read {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        n: Option<usize>,
        code: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Draw random trees.
    Sample {
        /// uniform, full-binary, binary-lr or plane.
        #[arg(long)]
        family: slither_core::games::Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Play a game many times and histogram the outcome.
    Simulate {
        #[arg(long, value_enum)]
        game: Game,
        /// Vertex count (odd for full-binary; implied by --deck for cards).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Card multiplicities d_1,..,d_n summing to n - 1.
        #[arg(long, value_delimiter = ',')]
        deck: Option<Vec<usize>>,
    },
    /// Exact distribution table.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TableFamily::Unrooted)]
        family: TableFamily,
        /// independence, matching, path-edges, path-cover or b=K.
        #[arg(long, default_value = "independence")]
        parameter: slither_core::enumeration::Parameter,
        /// Variant used to decode codes in rooted sweeps (default follows the parameter).
        #[arg(long)]
        variant: Option<Variant>,
        /// Largest number of sequences an exhaustive sweep may visit.
        #[arg(long, default_value_t = slither_core::enumeration::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Limiting constants.
    Constants,
    /// Monte-Carlo central-limit check of the dice game.
    Clt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the built-in oracle checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Game {
    Dice,
    Cards,
    FullBinary,
    BinaryLr,
    Plane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    /// Closed form over unrooted labelled trees.
    Unrooted,
    /// Exhaustive decode of every code.
    Rooted,
    /// Exhaustive dice-game throw sequences.
    Dice,
    /// Closed form over full binary trees; --n is the vertex count 2m + 1.
    FullBinary,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Internal(_) | CliError::Enum(EnumError::NonIntegral(_)) => 1,
            _ => 2,
        }
    }
}

/// Thread count from the flag, then `SLITHER_THREADS`.
fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(t) = flag {
        return Ok(Some(t));
    }
    match std::env::var("SLITHER_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Invalid(format!("SLITHER_THREADS must be a number, got {v:?}"))),
        _ => Ok(None),
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = thread_count(cli.threads).and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            if t == 0 {
                return Err(CliError::Invalid("--threads must be at least 1".into()));
            }
            builder = builder.num_threads(t);
        }
        let pool = builder.build().map_err(|e| CliError::Internal(e.to_string()))?;
        commands::execute(&cli, &pool, stdin, out, err)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
