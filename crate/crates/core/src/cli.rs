//! The `build`, `query` and `verify` commands, independent of argument
//! parsing so they can be driven from tests.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::mums::{retrieve_mums, Mum};
use crate::rindex::RIndex;
use crate::text::{encode_collection, encode_pattern, parse_fasta, parse_fasta_lenient, Alphabet};
use crate::verify::{random_instance, verify_pattern, Divergence};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DIVERGENCE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Clone, Debug)]
pub struct BuildConfig {
    pub inputs: Vec<PathBuf>,
    pub output: PathBuf,
    pub alphabet: Alphabet,
}

#[derive(Clone, Debug)]
pub struct QueryConfig {
    pub index: PathBuf,
    pub patterns: PathBuf,
    pub min_len: usize,
}

/// Size figures printed after a build.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BuildSummary {
    pub n: usize,
    pub r: usize,
    pub sequences: usize,
}

impl BuildSummary {
    pub fn of(index: &RIndex) -> Self {
        Self {
            n: index.len(),
            r: index.run_count(),
            sequences: index.text().sequence_count(),
        }
    }

    pub fn n_over_r(&self) -> f64 {
        self.n as f64 / self.r as f64
    }
}

fn read_fasta(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Builds an index over every record of every input file, in order.
pub fn build_index(inputs: &[PathBuf], alphabet: &Alphabet) -> anyhow::Result<RIndex> {
    if inputs.is_empty() {
        bail!("no input files");
    }
    let mut records = Vec::new();
    for path in inputs {
        let bytes = read_fasta(path)?;
        records.extend(parse_fasta(&bytes).with_context(|| format!("{}", path.display()))?);
    }
    let text = encode_collection(&records, alphabet)?;
    Ok(RIndex::build(text))
}

pub fn cmd_build(cfg: &BuildConfig) -> anyhow::Result<BuildSummary> {
    let start = Instant::now();
    let index = build_index(&cfg.inputs, &cfg.alphabet)?;
    log::info!("index built in {:.3}s", start.elapsed().as_secs_f64());
    index
        .save(&cfg.output)
        .with_context(|| format!("cannot write {}", cfg.output.display()))?;
    Ok(BuildSummary::of(&index))
}

/// Renders one query block: a `> name` header, then one line per MUM of at
/// least `min_len` symbols with the reference name, the 1-based position
/// in that reference, the 1-based query position and the length.
pub fn render_report(index: &RIndex, query_name: &str, mums: &[Mum], min_len: usize) -> String {
    let names = index.text().names();
    let mut out = format!("> {query_name}\n");
    for m in mums.iter().filter(|m| m.length >= min_len) {
        let (seq, off) = m.locate(index).expect("MUMs never start on a separator");
        writeln!(
            out,
            "{} {} {} {}",
            names[seq],
            off + 1,
            m.pattern_pos + 1,
            m.length
        )
        .unwrap();
    }
    out
}

/// Queries every record of the pattern file and writes the report.
/// Records are processed in parallel and emitted in input order.
pub fn cmd_query<W: Write>(cfg: &QueryConfig, mut out: W) -> anyhow::Result<()> {
    let index = RIndex::load(&cfg.index)
        .with_context(|| format!("cannot load index {}", cfg.index.display()))?;
    let bytes = read_fasta(&cfg.patterns)?;
    let records =
        parse_fasta_lenient(&bytes).with_context(|| format!("{}", cfg.patterns.display()))?;
    let start = Instant::now();
    let blocks: Vec<Option<String>> = records
        .par_iter()
        .map(|(rec, line)| {
            let Ok(pattern) = encode_pattern(&rec.seq, index.alphabet()) else {
                log::warn!("query '{}' (line {line}) is empty, skipped", rec.name);
                return None;
            };
            let mums = retrieve_mums(&index.ems(&pattern));
            Some(render_report(&index, &rec.name, &mums, cfg.min_len))
        })
        .collect();
    for block in blocks.into_iter().flatten() {
        out.write_all(block.as_bytes())?;
    }
    out.flush()?;
    log::info!(
        "{} queries answered in {:.3}s",
        records.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

/// Outcome of a verification run.
#[derive(Debug)]
pub enum VerifyOutcome {
    Ok {
        patterns: usize,
    },
    Diverged {
        context: String,
        divergence: Divergence,
    },
}

/// Checks every pattern record against the brute-force oracle.
pub fn cmd_verify_files(index_path: &Path, patterns: &Path) -> anyhow::Result<VerifyOutcome> {
    let index = RIndex::load(index_path)
        .with_context(|| format!("cannot load index {}", index_path.display()))?;
    let records =
        parse_fasta(&read_fasta(patterns)?).with_context(|| format!("{}", patterns.display()))?;
    for rec in &records {
        let pattern = encode_pattern(&rec.seq, index.alphabet())?;
        if let Err(divergence) = verify_pattern(&index, &pattern) {
            return Ok(VerifyOutcome::Diverged {
                context: format!("query '{}'", rec.name),
                divergence,
            });
        }
    }
    Ok(VerifyOutcome::Ok {
        patterns: records.len(),
    })
}

/// Checks `trials` random instances drawn from `seed`.
pub fn cmd_verify_random(seed: u64, trials: usize) -> anyhow::Result<VerifyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let inst = random_instance(&mut rng, 1000, 100);
        let index = RIndex::build(encode_collection(&inst.records, &inst.alphabet)?);
        let pattern = encode_pattern(&inst.pattern, index.alphabet())?;
        if let Err(divergence) = verify_pattern(&index, &pattern) {
            return Ok(VerifyOutcome::Diverged {
                context: format!("seed {seed}, trial {trial}"),
                divergence,
            });
        }
    }
    Ok(VerifyOutcome::Ok { patterns: trials })
}
