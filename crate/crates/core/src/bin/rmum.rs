use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rmum_core::cli::{
    cmd_build, cmd_query, cmd_verify_files, cmd_verify_random, BuildConfig, QueryConfig,
    VerifyOutcome, EXIT_DIVERGENCE, EXIT_OK, EXIT_USAGE,
};
use rmum_core::text::Alphabet;

/// Maximal unique matches against a run-length BWT index.
///
/// Set RMUM_LOG=info (or debug) for timing diagnostics on stderr.
#[derive(Parser)]
#[command(name = "rmum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from one or more FASTA files.
    Build {
        /// Output index file.
        #[arg(short, long)]
        output: PathBuf,
        /// Characters that may match; everything else is never matched.
        #[arg(short, long, default_value = "ACGT")]
        alphabet: String,
        #[arg(required = true)]
        fasta: Vec<PathBuf>,
    },
    /// Report the MUMs of every query record against an index.
    Query {
        /// Minimum MUM length to report.
        #[arg(short = 'l', long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        min_len: u64,
        index: PathBuf,
        patterns: PathBuf,
    },
    /// Compare the query engine with a brute-force oracle.
    #[command(hide = true)]
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Index file (with PATTERNS).
    #[arg(requires = "patterns", conflicts_with = "seed")]
    index: Option<PathBuf>,
    patterns: Option<PathBuf>,
    /// Check random instances drawn from this seed instead of files.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Build {
            output,
            alphabet,
            fasta,
        } => {
            let alphabet = Alphabet::new(alphabet.as_bytes())?;
            let summary = cmd_build(&BuildConfig {
                inputs: fasta,
                output,
                alphabet,
            })?;
            eprintln!(
                "n = {}, r = {}, n/r = {:.2}, sequences = {}",
                summary.n,
                summary.r,
                summary.n_over_r(),
                summary.sequences
            );
            Ok(EXIT_OK)
        }
        Command::Query {
            min_len,
            index,
            patterns,
        } => {
            let cfg = QueryConfig {
                index,
                patterns,
                min_len: min_len as usize,
            };
            cmd_query(&cfg, BufWriter::new(io::stdout().lock()))?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let outcome = match (args.seed, args.index, args.patterns) {
                (Some(seed), _, _) => cmd_verify_random(seed, args.trials)?,
                (None, Some(index), Some(patterns)) => cmd_verify_files(&index, &patterns)?,
                _ => anyhow::bail!("verify needs INDEX PATTERNS or --seed"),
            };
            match outcome {
                VerifyOutcome::Ok { .. } => {
                    println!("OK");
                    Ok(EXIT_OK)
                }
                VerifyOutcome::Diverged {
                    context,
                    divergence,
                } => {
                    println!("DIVERGED ({context}): {divergence}");
                    Ok(EXIT_DIVERGENCE)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("RMUM_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
