//! A run-length compressed BWT index (r-index) extended with two LCP samples
//! per BWT run, and a streaming query engine that computes the extended
//! matching statistics of a pattern and the maximal unique matches (MUMs)
//! between the pattern and the indexed sequences.
//!
//! ```
//! use rmum_core::prelude::*;
//!
//! let records = [FastaRecord::new("t", "ACACTCTTACACCATATCATCAA")];
//! let index = RIndex::build(encode_collection(&records, &Alphabet::dna()).unwrap());
//! let pattern = encode_pattern(b"AACCTAA", index.alphabet()).unwrap();
//!
//! let ems = index.ems(&pattern);
//! assert_eq!(ems.iter().map(|e| e.len).collect::<Vec<_>>(), [2, 3, 2, 2, 2, 2, 1]);
//!
//! let mums = retrieve_mums(&ems);
//! assert_eq!(mums, [Mum { pattern_pos: 1, text_pos: 10, length: 3 }]);
//! ```
//!
//! Modules:
//!
//! - [`text`]: FASTA parsing and symbol encoding of collections and patterns.
//! - [`suffix`]: full SA/ISA/LCP/BWT construction (index building, oracles).
//! - [`rindex`]: the queryable index; [`format`] holds its file format.
//! - [`lce`]: longest common extension queries behind a trait.
//! - [`ems`]: the streaming matching statistics engine.
//! - [`mums`]: MUM extraction from matching statistics.
//! - [`oracle`]: brute-force reference implementations.

pub mod cli;
pub mod ems;
pub mod error;
pub mod format;
pub mod lce;
pub mod mums;
pub mod oracle;
pub mod rindex;
pub mod suffix;
pub mod text;
pub mod verify;

pub use error::{FastaError, LoadError, TextError};

pub mod prelude {
    pub use crate::ems::{compute_ems, EmsCursor, EmsEntry, QueryState};
    pub use crate::lce::{LceOracle, PlainLce};
    pub use crate::mums::{candidates, mums_via_pattern_index, retrieve_mums, Mum};
    pub use crate::rindex::{build_rindex, RIndex};
    pub use crate::text::{
        encode_collection, encode_pattern, parse_fasta, Alphabet, FastaRecord, Symbol,
        TextCollection,
    };
}
