//! On-disk index format.
//!
//! All integers are little-endian. Layout:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "MPHI"
//! 4       4     format version (u32)
//! 8       8     total file length in bytes, including the checksum (u64)
//! 16      8     text length n (u64)
//! 24      4     section count k (u32)
//! 28      20*k  section table: id (u32), payload offset (u64), payload length (u64)
//! ...           section payloads, in table order
//! end-4   4     CRC-32 (IEEE) of every preceding byte
//! ```
//!
//! Sections:
//!
//! | id | name      | payload                                                        |
//! |----|-----------|----------------------------------------------------------------|
//! | 1  | alphabet  | alphabet characters, ascending, one byte each                  |
//! | 2  | runs      | r entries of (symbol u8, length u64)                           |
//! | 3  | samples   | r entries of (sa_head, sa_tail, lcp_head, lcp_tail), all u64   |
//! | 4  | sequences | count u64, then per sequence: offset u64, length u64, name length u32, UTF-8 name |
//! | 5  | text      | n symbol codes, one byte each                                  |

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::LoadError;
use crate::rindex::{RIndex, Run, RunSamples};
use crate::text::{Alphabet, Symbol, TextCollection};

pub const MAGIC: [u8; 4] = *b"MPHI";
pub const VERSION: u32 = 1;

const HEADER_LEN: usize = 28;
const TABLE_ENTRY_LEN: usize = 20;
const CRC_LEN: usize = 4;

const SEC_ALPHABET: u32 = 1;
const SEC_RUNS: u32 = 2;
const SEC_SAMPLES: u32 = 3;
const SEC_SEQUENCES: u32 = 4;
const SEC_TEXT: u32 = 5;
const SECTION_IDS: [u32; 5] = [SEC_ALPHABET, SEC_RUNS, SEC_SAMPLES, SEC_SEQUENCES, SEC_TEXT];

fn put_u32(buf: &mut Vec<u8>, v: u32) {
    buf.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(buf: &mut Vec<u8>, v: u64) {
    buf.extend_from_slice(&v.to_le_bytes());
}

impl RIndex {
    /// Serializes the index into a byte vector.
    pub fn serialize(&self) -> Vec<u8> {
        let text = self.text();
        let mut sections: Vec<(u32, Vec<u8>)> = Vec::with_capacity(SECTION_IDS.len());

        sections.push((SEC_ALPHABET, self.alphabet().chars().to_vec()));

        let mut runs = Vec::with_capacity(self.run_count() * 9);
        for run in self.runs() {
            runs.push(run.symbol.0);
            put_u64(&mut runs, run.len as u64);
        }
        sections.push((SEC_RUNS, runs));

        let s = self.samples();
        let mut samples = Vec::with_capacity(self.run_count() * 32);
        for j in 0..self.run_count() {
            for v in [s.sa_head[j], s.sa_tail[j], s.lcp_head[j], s.lcp_tail[j]] {
                put_u64(&mut samples, v as u64);
            }
        }
        sections.push((SEC_SAMPLES, samples));

        let mut seqs = Vec::new();
        put_u64(&mut seqs, text.sequence_count() as u64);
        for ((name, &off), &len) in text.names().iter().zip(text.offsets()).zip(text.lengths()) {
            put_u64(&mut seqs, off as u64);
            put_u64(&mut seqs, len as u64);
            put_u32(&mut seqs, name.len() as u32);
            seqs.extend_from_slice(name.as_bytes());
        }
        sections.push((SEC_SEQUENCES, seqs));

        sections.push((SEC_TEXT, text.symbols().iter().map(|s| s.0).collect()));

        let table_len = TABLE_ENTRY_LEN * sections.len();
        let payload_len: usize = sections.iter().map(|(_, p)| p.len()).sum();
        let total = HEADER_LEN + table_len + payload_len + CRC_LEN;

        let mut out = Vec::with_capacity(total);
        out.extend_from_slice(&MAGIC);
        put_u32(&mut out, VERSION);
        put_u64(&mut out, total as u64);
        put_u64(&mut out, self.len() as u64);
        put_u32(&mut out, sections.len() as u32);
        let mut offset = HEADER_LEN + table_len;
        for (id, payload) in &sections {
            put_u32(&mut out, *id);
            put_u64(&mut out, offset as u64);
            put_u64(&mut out, payload.len() as u64);
            offset += payload.len();
        }
        for (_, payload) in &sections {
            out.extend_from_slice(payload);
        }
        let crc = crc32fast::hash(&out);
        put_u32(&mut out, crc);
        debug_assert_eq!(out.len(), total);
        out
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(&self.serialize())?;
        w.flush()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        fs::write(path, self.serialize())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LoadError> {
        Self::deserialize(&fs::read(path)?)
    }

    /// Parses a serialized index, validating framing, checksum and the
    /// structural consistency of every section.
    pub fn deserialize(bytes: &[u8]) -> Result<Self, LoadError> {
        if bytes.len() < MAGIC.len() || bytes[..4] != MAGIC {
            if bytes.len() < MAGIC.len() && MAGIC.starts_with(bytes) {
                return Err(LoadError::Truncated {
                    expected: HEADER_LEN as u64,
                    found: bytes.len() as u64,
                });
            }
            return Err(LoadError::BadMagic);
        }
        if bytes.len() < HEADER_LEN {
            return Err(LoadError::Truncated {
                expected: HEADER_LEN as u64,
                found: bytes.len() as u64,
            });
        }
        let mut hdr = Reader::new(&bytes[4..HEADER_LEN]);
        let version = hdr.u32()?;
        if version != VERSION {
            return Err(LoadError::UnsupportedVersion {
                found: version,
                expected: VERSION,
            });
        }
        let total = hdr.u64()?;
        if (bytes.len() as u64) < total {
            return Err(LoadError::Truncated {
                expected: total,
                found: bytes.len() as u64,
            });
        }
        if bytes.len() as u64 != total {
            return Err(LoadError::Malformed(format!(
                "{} trailing bytes after the index",
                bytes.len() as u64 - total
            )));
        }
        let body = &bytes[..bytes.len() - CRC_LEN];
        let stored = u32::from_le_bytes(bytes[bytes.len() - CRC_LEN..].try_into().unwrap());
        let computed = crc32fast::hash(body);
        if stored != computed {
            return Err(LoadError::ChecksumMismatch { stored, computed });
        }

        let n = to_usize(hdr.u64()?)?;
        let count = hdr.u32()? as usize;
        let table_end = HEADER_LEN + count * TABLE_ENTRY_LEN;
        if table_end > body.len() {
            return Err(malformed("section table exceeds file"));
        }
        let mut table = Reader::new(&body[HEADER_LEN..table_end]);
        let mut found: [Option<&[u8]>; SECTION_IDS.len()] = [None; SECTION_IDS.len()];
        for _ in 0..count {
            let id = table.u32()?;
            let off = to_usize(table.u64()?)?;
            let len = to_usize(table.u64()?)?;
            let end = off
                .checked_add(len)
                .filter(|&e| off >= table_end && e <= body.len());
            let Some(end) = end else {
                return Err(malformed(format!("section {id} out of bounds")));
            };
            if let Some(slot) = SECTION_IDS.iter().position(|&s| s == id) {
                found[slot] = Some(&body[off..end]);
            }
        }
        let section = |id: u32| -> Result<&[u8], LoadError> {
            let slot = SECTION_IDS.iter().position(|&s| s == id).unwrap();
            found[slot].ok_or_else(|| malformed(format!("missing section {id}")))
        };

        let alphabet = Alphabet::new(section(SEC_ALPHABET)?)
            .map_err(|e| malformed(format!("alphabet: {e}")))?;

        let runs_raw = section(SEC_RUNS)?;
        if runs_raw.len() % 9 != 0 {
            return Err(malformed("runs section length"));
        }
        let mut runs = Vec::with_capacity(runs_raw.len() / 9);
        let mut rd = Reader::new(runs_raw);
        let mut start = 0usize;
        while !rd.is_empty() {
            let symbol = Symbol(rd.u8()?);
            let len = to_usize(rd.u64()?)?;
            if len == 0 || runs.last().is_some_and(|r: &Run| r.symbol == symbol) {
                return Err(malformed("runs are not maximal"));
            }
            runs.push(Run { symbol, start, len });
            start = start
                .checked_add(len)
                .ok_or_else(|| malformed("run lengths overflow"))?;
        }
        if start != n {
            return Err(malformed(format!(
                "runs cover {start} positions, text has {n}"
            )));
        }

        let samples_raw = section(SEC_SAMPLES)?;
        if samples_raw.len() != runs.len() * 32 {
            return Err(malformed("samples section length"));
        }
        let mut samples = RunSamples::default();
        let mut rd = Reader::new(samples_raw);
        for _ in 0..runs.len() {
            let vals = [rd.u64()?, rd.u64()?, rd.u64()?, rd.u64()?];
            let [sh, st, lh, lt] = vals.map(|v| to_usize(v).unwrap_or(usize::MAX));
            if sh >= n || st >= n || lh >= n || lt >= n {
                return Err(malformed("sample out of range"));
            }
            samples.sa_head.push(sh);
            samples.sa_tail.push(st);
            samples.lcp_head.push(lh);
            samples.lcp_tail.push(lt);
        }

        let mut rd = Reader::new(section(SEC_SEQUENCES)?);
        let seq_count = to_usize(rd.u64()?)?;
        let mut names = Vec::new();
        let mut offsets = Vec::new();
        let mut lengths = Vec::new();
        for _ in 0..seq_count {
            let off = to_usize(rd.u64()?)?;
            let len = to_usize(rd.u64()?)?;
            let name_len = rd.u32()? as usize;
            let name = std::str::from_utf8(rd.bytes(name_len)?)
                .map_err(|_| malformed("sequence name is not UTF-8"))?;
            if off.checked_add(len).is_none_or(|e| e >= n) {
                return Err(malformed("sequence extent out of range"));
            }
            names.push(name.to_string());
            offsets.push(off);
            lengths.push(len);
        }

        let text_raw = section(SEC_TEXT)?;
        if text_raw.len() != n {
            return Err(malformed("text length does not match header"));
        }
        let symbols: Vec<Symbol> = text_raw.iter().map(|&b| Symbol(b)).collect();
        if symbols.last() != Some(&Symbol::TERMINATOR)
            || symbols[..n - 1].contains(&Symbol::TERMINATOR)
        {
            return Err(malformed("text must end with a unique terminator"));
        }

        let text = TextCollection::from_parts(symbols, names, offsets, lengths, alphabet);
        Ok(RIndex::from_runs(text, runs, samples))
    }
}

fn malformed(msg: impl Into<String>) -> LoadError {
    LoadError::Malformed(msg.into())
}

fn to_usize(v: u64) -> Result<usize, LoadError> {
    usize::try_from(v).map_err(|_| malformed(format!("value {v} does not fit in usize")))
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf }
    }

    fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    fn bytes(&mut self, len: usize) -> Result<&'a [u8], LoadError> {
        if self.buf.len() < len {
            return Err(malformed("section payload too short"));
        }
        let (head, tail) = self.buf.split_at(len);
        self.buf = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8, LoadError> {
        Ok(self.bytes(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, LoadError> {
        Ok(u32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, LoadError> {
        Ok(u64::from_le_bytes(self.bytes(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{encode_collection, FastaRecord};

    fn example() -> RIndex {
        let recs = [
            FastaRecord::new("t", "ACACTCTTACACCATATCATCAA"),
            FastaRecord::new("u", "GGANTTACA"),
        ];
        RIndex::build(encode_collection(&recs, &Alphabet::dna()).unwrap())
    }

    fn assert_same(a: &RIndex, b: &RIndex) {
        assert_eq!(a.len(), b.len());
        assert_eq!(a.runs(), b.runs());
        assert_eq!(a.text(), b.text());
        for q in 0..a.len() {
            assert_eq!(a.lf(q), b.lf(q));
            assert_eq!(a.run_of(q), b.run_of(q));
            assert_eq!(a.try_sa_at_boundary(q), b.try_sa_at_boundary(q));
        }
        for j in 0..a.run_count() {
            assert_eq!(a.lcp_head_of(j), b.lcp_head_of(j));
            assert_eq!(a.lcp_tail_of(j), b.lcp_tail_of(j));
        }
        for c in 0..=255u8 {
            let c = Symbol(c);
            assert_eq!(a.count(c), b.count(c));
            for i in 0..=a.len() {
                assert_eq!(a.rank(c, i), b.rank(c, i));
            }
            for k in 0..=a.count(c) + 1 {
                assert_eq!(a.select(c, k), b.select(c, k));
            }
        }
    }

    #[test]
    fn round_trip() {
        let idx = example();
        let bytes = idx.serialize();
        assert_eq!(&bytes[..4], b"MPHI");
        let back = RIndex::deserialize(&bytes).unwrap();
        assert_same(&idx, &back);
        assert_eq!(back.serialize(), bytes);
    }

    #[test]
    fn header_layout() {
        let idx = example();
        let bytes = idx.serialize();
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), VERSION);
        assert_eq!(
            u64::from_le_bytes(bytes[8..16].try_into().unwrap()),
            bytes.len() as u64
        );
        assert_eq!(
            u64::from_le_bytes(bytes[16..24].try_into().unwrap()),
            idx.len() as u64
        );
        assert_eq!(u32::from_le_bytes(bytes[24..28].try_into().unwrap()), 5);
    }

    #[test]
    fn truncated() {
        let bytes = example().serialize();
        for cut in [2, 10, 27, 40, bytes.len() - 1] {
            let err = RIndex::deserialize(&bytes[..cut]).unwrap_err();
            assert!(
                matches!(err, LoadError::Truncated { .. }),
                "cut {cut}: {err:?}"
            );
        }
    }

    #[test]
    fn bad_magic() {
        let mut bytes = example().serialize();
        bytes[0] = b'X';
        assert!(matches!(
            RIndex::deserialize(&bytes),
            Err(LoadError::BadMagic)
        ));
        assert!(matches!(
            RIndex::deserialize(b"hello world"),
            Err(LoadError::BadMagic)
        ));
    }

    #[test]
    fn wrong_version() {
        let mut bytes = example().serialize();
        bytes[4] = 9;
        assert!(matches!(
            RIndex::deserialize(&bytes),
            Err(LoadError::UnsupportedVersion {
                found: 9,
                expected: VERSION
            })
        ));
    }

    #[test]
    fn flipped_bit() {
        let mut bytes = example().serialize();
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0x10;
        assert!(matches!(
            RIndex::deserialize(&bytes),
            Err(LoadError::ChecksumMismatch { .. })
        ));
    }
}
