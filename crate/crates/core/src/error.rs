use std::io;

use thiserror::Error;

/// Errors raised while reading FASTA input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FastaError {
    #[error("empty FASTA input")]
    Empty,
    #[error("line {line}: sequence data before the first '>' header")]
    MissingHeader { line: usize },
    #[error("line {line}: record '{name}' has no sequence")]
    EmptyRecord { name: String, line: usize },
}

/// Errors raised while encoding texts and patterns.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("alphabet must contain at least one character")]
    EmptyAlphabet,
    #[error("alphabet character {0:?} is not a printable non-whitespace ASCII byte")]
    InvalidAlphabetChar(char),
    #[error("alphabet has {0} characters, at most {max} are supported", max = crate::text::MAX_ALPHABET)]
    AlphabetTooLarge(usize),
    #[error("no sequences to index")]
    EmptyCollection,
    #[error("pattern is empty")]
    EmptyPattern,
}

/// Errors raised while loading a serialized index.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("not an index file (bad magic bytes)")]
    BadMagic,
    #[error("unsupported index format version {found} (expected {expected})")]
    UnsupportedVersion { found: u32, expected: u32 },
    #[error("index file truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: u64, found: u64 },
    #[error("index checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("malformed index: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}
