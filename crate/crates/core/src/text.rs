//! FASTA ingestion and the symbol encoding shared by the index, the query
//! engine and the reference oracle.
//!
//! Input characters are mapped to small integer codes. Code 0 is the text
//! terminator, code 1 separates consecutive sequences of a collection, and
//! the alphabet characters take codes 2, 3, ... in ascending byte order.
//! Characters outside the alphabet become [`Symbol::NOMATCH`], which sorts
//! after every alphabet code and never matches anything during queries.

use std::fmt;

use crate::error::{FastaError, TextError};

/// Largest supported alphabet: codes 2..=254, with 255 reserved for NOMATCH.
pub const MAX_ALPHABET: usize = 253;

/// One encoded text or pattern character.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Symbol(pub u8);

impl Symbol {
    pub const TERMINATOR: Symbol = Symbol(0);
    pub const SEPARATOR: Symbol = Symbol(1);
    pub const NOMATCH: Symbol = Symbol(u8::MAX);
    /// First code assigned to an alphabet character.
    pub const FIRST_CHAR: u8 = 2;

    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    /// True for codes that a pattern symbol may legitimately match.
    #[inline]
    pub fn is_matchable(self) -> bool {
        self.0 >= Self::FIRST_CHAR && self != Self::NOMATCH
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::TERMINATOR => f.write_str("$"),
            Symbol::SEPARATOR => f.write_str("#"),
            Symbol::NOMATCH => f.write_str("NOMATCH"),
            Symbol(c) => write!(f, "Symbol({c})"),
        }
    }
}

/// Ordered character set mapped onto symbol codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    chars: Vec<u8>,
    codes: [u8; 256],
}

impl Alphabet {
    /// Builds an alphabet from a set of characters. Letters are uppercased,
    /// duplicates dropped, and codes assigned in ascending byte order.
    pub fn new(chars: &[u8]) -> Result<Self, TextError> {
        let mut sorted: Vec<u8> = chars.iter().map(u8::to_ascii_uppercase).collect();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(TextError::EmptyAlphabet);
        }
        if sorted.len() > MAX_ALPHABET {
            return Err(TextError::AlphabetTooLarge(sorted.len()));
        }
        if let Some(&bad) = sorted.iter().find(|c| !c.is_ascii_graphic() || **c == b'>') {
            return Err(TextError::InvalidAlphabetChar(bad as char));
        }
        let mut codes = [Symbol::NOMATCH.0; 256];
        for (rank, &c) in sorted.iter().enumerate() {
            codes[c as usize] = Symbol::FIRST_CHAR + rank as u8;
        }
        Ok(Self {
            chars: sorted,
            codes,
        })
    }

    /// The nucleotide alphabet {A, C, G, T}.
    pub fn dna() -> Self {
        Self::new(b"ACGT").expect("static alphabet")
    }

    pub fn chars(&self) -> &[u8] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Encodes one input byte; lowercase letters fold to uppercase.
    #[inline]
    pub fn encode(&self, byte: u8) -> Symbol {
        Symbol(self.codes[byte.to_ascii_uppercase() as usize])
    }

    /// Decodes an alphabet symbol back to its character. Terminator,
    /// separator and NOMATCH have no character and return `None`.
    pub fn decode(&self, sym: Symbol) -> Option<u8> {
        if !sym.is_matchable() {
            return None;
        }
        self.chars
            .get((sym.0 - Symbol::FIRST_CHAR) as usize)
            .copied()
    }

    /// Printable rendering of any symbol, including the special ones.
    pub fn render(&self, sym: Symbol) -> char {
        match sym {
            Symbol::TERMINATOR => '$',
            Symbol::SEPARATOR => '#',
            Symbol::NOMATCH => 'N',
            s => self.decode(s).map_or('?', char::from),
        }
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::dna()
    }
}

/// A named sequence read from FASTA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastaRecord {
    pub name: String,
    pub seq: Vec<u8>,
}

impl FastaRecord {
    pub fn new(name: impl Into<String>, seq: impl Into<Vec<u8>>) -> Self {
        Self {
            name: name.into(),
            seq: seq.into(),
        }
    }
}

/// Parses FASTA text. Sequences are uppercased and records with no
/// sequence data are rejected.
pub fn parse_fasta(bytes: &[u8]) -> Result<Vec<FastaRecord>, FastaError> {
    let records = parse_fasta_lenient(bytes)?;
    if let Some((rec, line)) = records.iter().find(|(r, _)| r.seq.is_empty()) {
        return Err(FastaError::EmptyRecord {
            name: rec.name.clone(),
            line: *line,
        });
    }
    Ok(records.into_iter().map(|(r, _)| r).collect())
}

/// Like [`parse_fasta`] but keeps empty records, paired with the line number
/// of their header, so callers can warn and skip them.
pub fn parse_fasta_lenient(bytes: &[u8]) -> Result<Vec<(FastaRecord, usize)>, FastaError> {
    let mut records: Vec<(FastaRecord, usize)> = Vec::new();
    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix(b"\r").unwrap_or(raw);
        if let Some(header) = line.strip_prefix(b">") {
            let header = String::from_utf8_lossy(header);
            let name = header.split_whitespace().next().unwrap_or("").to_string();
            records.push((
                FastaRecord {
                    name,
                    seq: Vec::new(),
                },
                line_no,
            ));
            continue;
        }
        let data = line.trim_ascii();
        if data.is_empty() {
            continue;
        }
        match records.last_mut() {
            Some((rec, _)) => rec.seq.extend(
                data.iter()
                    .filter(|b| !b.is_ascii_whitespace())
                    .map(u8::to_ascii_uppercase),
            ),
            None => return Err(FastaError::MissingHeader { line: line_no }),
        }
    }
    if records.is_empty() {
        return Err(FastaError::Empty);
    }
    Ok(records)
}

/// An encoded sequence collection: `seq_1 # seq_2 # ... # seq_k $`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextCollection {
    symbols: Vec<Symbol>,
    names: Vec<String>,
    offsets: Vec<usize>,
    lengths: Vec<usize>,
    alphabet: Alphabet,
}

impl TextCollection {
    pub(crate) fn from_parts(
        symbols: Vec<Symbol>,
        names: Vec<String>,
        offsets: Vec<usize>,
        lengths: Vec<usize>,
        alphabet: Alphabet,
    ) -> Self {
        Self {
            symbols,
            names,
            offsets,
            lengths,
            alphabet,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Text length including separators and the terminator.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false: a collection holds at least the terminator.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sequence_count(&self) -> usize {
        self.names.len()
    }

    /// Decodes every sequence back to characters. Non-alphabet input was
    /// encoded as NOMATCH and comes back as `N`.
    pub fn decode_sequences(&self) -> Vec<Vec<u8>> {
        self.offsets
            .iter()
            .zip(&self.lengths)
            .map(|(&start, &len)| {
                self.symbols[start..start + len]
                    .iter()
                    .map(|&s| self.alphabet.render(s) as u8)
                    .collect()
            })
            .collect()
    }
}

/// Concatenates records into one terminated text.
pub fn encode_collection(
    records: &[FastaRecord],
    alphabet: &Alphabet,
) -> Result<TextCollection, TextError> {
    if records.is_empty() {
        return Err(TextError::EmptyCollection);
    }
    let total: usize = records.iter().map(|r| r.seq.len() + 1).sum();
    let mut symbols = Vec::with_capacity(total);
    let mut names = Vec::with_capacity(records.len());
    let mut offsets = Vec::with_capacity(records.len());
    let mut lengths = Vec::with_capacity(records.len());
    for (k, rec) in records.iter().enumerate() {
        if k > 0 {
            symbols.push(Symbol::SEPARATOR);
        }
        names.push(rec.name.clone());
        offsets.push(symbols.len());
        lengths.push(rec.seq.len());
        symbols.extend(rec.seq.iter().map(|&b| alphabet.encode(b)));
    }
    symbols.push(Symbol::TERMINATOR);
    Ok(TextCollection {
        symbols,
        names,
        offsets,
        lengths,
        alphabet: alphabet.clone(),
    })
}

/// Encodes a query pattern. Anything outside the alphabet, including
/// bytes that would otherwise look like separators, becomes NOMATCH.
pub fn encode_pattern(seq: &[u8], alphabet: &Alphabet) -> Result<Vec<Symbol>, TextError> {
    if seq.is_empty() {
        return Err(TextError::EmptyPattern);
    }
    Ok(seq.iter().map(|&b| alphabet.encode(b)).collect())
}
