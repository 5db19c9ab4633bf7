//! `finring`: radicals, semisimple decomposition, nil diagnostics,
//! automorphisms and verification suites for finite rings.
//!
//! Exit codes: 0 success, 1 property violation, 2 invalid input, 3 budget exceeded.

mod commands;
mod report;
mod suites;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CmdResult, Failure};
use finring::iso::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "finring", version, about = "Exact computations with finite associative rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobson radical, cross-checked against maximal regular left ideals.
    Radical { file: PathBuf },
    /// Decompose a semisimple ring into matrix rings over finite fields.
    Decompose { file: PathBuf },
    /// Nilexponent, nilpotency class and nullity of the ring.
    Nil { file: PathBuf },
    /// Automorphism group by generator-image search.
    Aut {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Orbits of S_m permuting the rows of m x n arrays over the ring.
    Orbits {
        file: PathBuf,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// Free commutative nil ring of characteristic p and nilexponent p.
    Freenil {
        #[arg(short)]
        p: u64,
        /// Number of generators.
        #[arg(short)]
        g: usize,
        /// Report K consecutive levels starting at g, with connecting maps.
        #[arg(long, value_name = "K")]
        tower: Option<usize>,
    },
    /// Size bounds for simple images of rings where w_m vanishes on a coset.
    Bounds {
        #[arg(short)]
        m: u32,
        /// Index of the ideal.
        #[arg(short)]
        s: u64,
    },
    /// Run a verification suite (`all` runs every suite).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory of `.ring` files to use instead of the built-in corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Record elapsed milliseconds per case (reports are then not byte-stable).
        #[arg(long)]
        timing: bool,
    },
}

fn run(cli: &Cli) -> CmdResult {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Radical { file } => commands::radical(&commands::load_ring(file)?),
        Command::Decompose { file } => commands::decompose(&commands::load_ring(file)?),
        Command::Nil { file } => commands::nil(&commands::load_ring(file)?),
        Command::Aut { file, budget } => commands::aut(&commands::load_ring(file)?, *budget),
        Command::Orbits { file, m, n } => commands::orbits(&commands::load_ring(file)?, *m, *n),
        Command::Freenil { p, g, tower } => commands::freenil(*p, *g, *tower, json),
        Command::Bounds { m, s } => commands::bounds(*m, *s as u128),
        Command::Verify { suite, seed, corpus, timing } => {
            let rings = match corpus {
                Some(dir) => commands::load_corpus_dir(dir)?,
                None => finring::corpus::corpus(),
            };
            commands::verify(suite, &rings, *seed, *timing)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let body = match cli.format {
        Format::Text => output.text,
        Format::Json => serde_json::to_string_pretty(&output.json).expect("JSON output") + "\n",
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(if output.violation { 1 } else { 0 })
}
