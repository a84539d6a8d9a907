//! Cross-checks of the query engine against the brute-force oracle, plus a
//! seeded generator of small random instances.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ems::EmsEntry;
use crate::mums::{mums_via_pattern_index, retrieve_mums, Mum};
use crate::oracle::{naive_ems, naive_mums};
use crate::rindex::RIndex;
use crate::text::{Alphabet, FastaRecord, Symbol};

/// First disagreement found between the engine and the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divergence {
    Ems {
        pattern_pos: usize,
        engine: EmsEntry,
        oracle: EmsEntry,
    },
    NotAnOccurrence {
        pattern_pos: usize,
        engine: EmsEntry,
    },
    Mums {
        method: &'static str,
        engine: Vec<Mum>,
        oracle: Vec<Mum>,
    },
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Ems { pattern_pos, engine, oracle } => write!(
                f,
                "eMS differs at pattern position {pattern_pos}: engine (len {}, twice {}), oracle (len {}, twice {})",
                engine.len, engine.twice, oracle.len, oracle.twice
            ),
            Divergence::NotAnOccurrence { pattern_pos, engine } => write!(
                f,
                "eMS at pattern position {pattern_pos} reports text position {} for length {}, which is not an occurrence",
                engine.pos, engine.len
            ),
            Divergence::Mums { method, engine, oracle } => {
                write!(f, "MUM sets differ ({method}): engine {engine:?}, oracle {oracle:?}")
            }
        }
    }
}

impl std::error::Error for Divergence {}

/// Runs the engine and the oracle on one pattern and compares eMS lengths
/// and second-match lengths, occurrence validity of every reported
/// position, and both MUM extraction methods.
pub fn verify_pattern(index: &RIndex, pattern: &[Symbol]) -> Result<(), Divergence> {
    let text = index.symbols();
    let ems = index.ems(pattern);
    let expected = naive_ems(text, pattern);
    for (i, (e, o)) in ems.iter().zip(&expected).enumerate() {
        if (e.len, e.twice) != (o.len, o.twice) {
            return Err(Divergence::Ems {
                pattern_pos: i,
                engine: *e,
                oracle: *o,
            });
        }
        let occurs =
            e.pos + e.len <= text.len() && text[e.pos..e.pos + e.len] == pattern[i..i + e.len];
        if !occurs {
            return Err(Divergence::NotAnOccurrence {
                pattern_pos: i,
                engine: *e,
            });
        }
    }
    let oracle = naive_mums(text, pattern);
    let swept = retrieve_mums(&ems);
    if swept != oracle {
        return Err(Divergence::Mums {
            method: "sweep",
            engine: swept,
            oracle,
        });
    }
    let via_pattern = mums_via_pattern_index(&ems, pattern);
    if via_pattern != oracle {
        return Err(Divergence::Mums {
            method: "pattern index",
            engine: via_pattern,
            oracle,
        });
    }
    Ok(())
}

/// A random text collection and query for property testing.
#[derive(Clone, Debug)]
pub struct Instance {
    pub alphabet: Alphabet,
    pub records: Vec<FastaRecord>,
    pub pattern: Vec<u8>,
}

/// Draws an instance: alphabet of 2 to 4 of ACGT, one to three sequences
/// whose encoded text has length at most `max_text`, and a pattern of length at most
/// `max_pattern` stitched from mutated text fragments, random characters
/// and occasional characters outside the alphabet.
pub fn random_instance<R: Rng>(rng: &mut R, max_text: usize, max_pattern: usize) -> Instance {
    let sigma = rng.gen_range(2..=4);
    let mut letters = b"ACGT".to_vec();
    letters.shuffle(rng);
    letters.truncate(sigma);
    let alphabet = Alphabet::new(&letters).expect("nonempty");

    let seq_count = rng.gen_range(1..=3);
    assert!(
        max_text >= 6 && max_pattern >= 1,
        "instance bounds too small"
    );
    // n counts one separator or terminator per sequence.
    let total = rng.gen_range(seq_count..=max_text - seq_count);
    let mut remaining = total;
    let mut records = Vec::with_capacity(seq_count);
    for k in 0..seq_count {
        let left = seq_count - k - 1;
        let len = if left == 0 {
            remaining
        } else {
            rng.gen_range(1..=remaining - left)
        };
        remaining -= len;
        let mut seq: Vec<u8> = (0..len).map(|_| letters[rng.gen_range(0..sigma)]).collect();
        // Repetitive texts exercise long runs and long LCPs.
        if len > 8 && rng.gen_bool(0.5) {
            let unit = rng.gen_range(1..=len / 4);
            for j in unit..len {
                if rng.gen_bool(0.9) {
                    seq[j] = seq[j - unit];
                }
            }
        }
        if rng.gen_bool(0.1) {
            let j = rng.gen_range(0..len);
            seq[j] = b'N';
        }
        records.push(FastaRecord::new(format!("seq{k}"), seq));
    }

    let m = rng.gen_range(1..=max_pattern);
    let mut pattern = Vec::with_capacity(m);
    while pattern.len() < m {
        match rng.gen_range(0..10) {
            0..=5 => {
                let rec = &records[rng.gen_range(0..records.len())];
                let start = rng.gen_range(0..rec.seq.len());
                let take = rng.gen_range(1..=(rec.seq.len() - start).min(m - pattern.len()));
                pattern.extend_from_slice(&rec.seq[start..start + take]);
                if rng.gen_bool(0.5) {
                    let j = rng.gen_range(0..pattern.len());
                    pattern[j] = letters[rng.gen_range(0..sigma)];
                }
            }
            6..=8 => pattern.push(letters[rng.gen_range(0..sigma)]),
            _ => pattern.push(*b"NACGT#$".choose(rng).unwrap()),
        }
    }
    pattern.truncate(m);
    Instance {
        alphabet,
        records,
        pattern,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{encode_collection, encode_pattern};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example_index() -> RIndex {
        let recs = [FastaRecord::new("t", "ACACTCTTACACCATATCATCAA")];
        RIndex::build(encode_collection(&recs, &Alphabet::dna()).unwrap())
    }

    #[test]
    fn example_fixture_ok() {
        let idx = example_index();
        let p = encode_pattern(b"AACCTAA", idx.alphabet()).unwrap();
        verify_pattern(&idx, &p).unwrap();
    }

    #[test]
    fn corrupted_lcp_samples_are_caught() {
        let mut idx = example_index();
        let (_, lcp_head) = idx.samples_mut();
        for v in lcp_head.iter_mut() {
            *v = 0;
        }
        let p = encode_pattern(b"AACCTAA", idx.alphabet()).unwrap();
        let err = verify_pattern(&idx, &p).unwrap_err();
        assert!(!err.to_string().is_empty());
    }

    #[test]
    fn corrupted_sa_samples_are_caught() {
        let mut idx = example_index();
        let n = idx.len();
        let (sa_head, _) = idx.samples_mut();
        for v in sa_head.iter_mut() {
            *v = if *v + 1 < n { *v + 1 } else { 1 };
        }
        let p = encode_pattern(b"AACCTAA", idx.alphabet()).unwrap();
        // Out-of-range positions may also trip an assertion in the engine.
        let caught = std::panic::catch_unwind(|| verify_pattern(&idx, &p).is_err());
        assert!(caught.unwrap_or(true));
    }

    #[test]
    fn random_instances_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let inst = random_instance(&mut rng, 1000, 100);
            let n: usize = inst.records.iter().map(|r| r.seq.len() + 1).sum();
            assert!(n <= 1000);
            assert!((1..=100).contains(&inst.pattern.len()));
            assert!((2..=4).contains(&inst.alphabet.len()));
        }
    }

    #[test]
    fn seeded_batch_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let inst = random_instance(&mut rng, 300, 60);
            let idx = RIndex::build(encode_collection(&inst.records, &inst.alphabet).unwrap());
            let p = encode_pattern(&inst.pattern, idx.alphabet()).unwrap();
            if let Err(d) = verify_pattern(&idx, &p) {
                panic!("{d}\ninstance: {inst:?}");
            }
        }
    }
}
