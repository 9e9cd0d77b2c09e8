//! `burau` -- exact checks around the reduced Burau representation of B4.
//!
//! Machine-readable JSON on stdout, human summaries on stderr. Exit codes:
//! 0 success, 1 verification/parse failure, 2 identity hit.

mod commands;
mod json;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use burau_core::search::Alphabet;
use burau_core::Modulus;

use commands::{Output, EXIT_FAIL};

#[derive(Parser)]
#[command(
    name = "burau",
    version,
    about = "Laurent-polynomial matrix checks for the reduced Burau representation of B4",
    after_help = "Exit codes: 0 success, 1 verification or parse failure, 2 identity hit."
)]
struct Cli {
    /// Coefficient modulus p; 0 means the integers (p = 1 is rejected)
    #[arg(long = "mod", global = true, value_name = "P")]
    modulus: Option<u64>,

    /// Machine output only: suppress the stderr summary
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized suites
    #[arg(long, global = true, default_value_t = 0xB04A)]
    seed: u64,

    /// Worker threads for search (default: available parallelism, at most 8)
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlphabetArg {
    /// Letters A, B with exponents +-1
    #[value(name = "ab")]
    Ab,
    /// Cubes A^3, B^3 with exponents +-3
    #[value(name = "a3b3")]
    A3b3,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Alphabet {
        match a {
            AlphabetArg::Ab => Alphabet::Ab,
            AlphabetArg::A3b3 => Alphabet::A3b3,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the conjugation identity suite and the ping-pong mapping checks
    Verify {
        /// Random members per mapping check
        #[arg(long, default_value_t = 1000)]
        samples: u32,
    },
    /// Evaluate a word to its matrix
    Eval {
        /// Word over A and B, e.g. "A^3 B^-3"
        #[arg(long)]
        word: Option<String>,
        /// Braid word over s1, s2, s3, e.g. "s3 s1'"
        #[arg(long)]
        braid: Option<String>,
        /// Add an "identity" field to the output
        #[arg(long)]
        check_identity: bool,
    },
    /// Conjugate to a B^-i suffix and rewrite into the canonical T/B form
    Rewrite {
        /// Word over A and B
        #[arg(long)]
        word: String,
    },
    /// Classify a vector (JSON on stdin) into X1, X2, X3 or none
    Classify,
    /// Prove a word non-identity: ping-pong certificate, or direct
    /// evaluation when the word is outside the certified shape
    Certify {
        /// Word over A and B
        #[arg(long)]
        word: String,
    },
    /// Exhaustively scan all freely reduced words up to a length bound
    Search {
        #[arg(long, value_enum, default_value_t = AlphabetArg::Ab)]
        alphabet: AlphabetArg,
        /// Defaults to the alphabet's cap (12 for ab, 6 for a3b3)
        #[arg(long)]
        max_syllables: Option<u32>,
    },
}

fn modulus_from(p: Option<u64>) -> Result<Modulus, String> {
    Modulus::new(p.unwrap_or(0)).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<i32, String> {
    let out = Output { quiet_summary: cli.json };
    match cli.command {
        Command::Verify { samples } => {
            let ctx = modulus_from(cli.modulus)?;
            commands::cmd_verify(ctx, samples, cli.seed, &out)
        }
        Command::Eval { word, braid, check_identity } => {
            let ctx = modulus_from(cli.modulus)?;
            commands::cmd_eval(ctx, word.as_deref(), braid.as_deref(), check_identity, &out)
        }
        Command::Rewrite { word } => {
            let ctx = modulus_from(cli.modulus)?;
            commands::cmd_rewrite(ctx, &word, &out)
        }
        Command::Classify => commands::cmd_classify(cli.modulus, &out),
        Command::Certify { word } => {
            let ctx = modulus_from(cli.modulus)?;
            commands::cmd_certify(ctx, &word, &out)
        }
        Command::Search { alphabet, max_syllables } => {
            let ctx = modulus_from(cli.modulus)?;
            let workers = cli
                .workers
                .unwrap_or_else(|| {
                    std::thread::available_parallelism()
                        .map(|n| n.get().min(8))
                        .unwrap_or(1)
                })
                .max(1);
            commands::cmd_search(alphabet.into(), max_syllables, ctx, workers, &out)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            std::process::exit(0);
        }
        Err(e) => {
            let _ = e.print();
            // usage problems are reported as failures; exit code 2 is
            // reserved for identity hits
            std::process::exit(EXIT_FAIL);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {}", message);
            std::process::exit(EXIT_FAIL);
        }
    }
}
