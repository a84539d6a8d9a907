//! Longest common extension queries.

use crate::text::Symbol;

/// Answers `lce(i, j)`: the length of the longest common prefix of the text
/// suffixes starting at `i` and `j`.
///
/// Implementations must treat NOMATCH as unequal to every symbol,
/// itself included, and the separator as equal to itself.
pub trait LceOracle {
    fn lce(&self, i: usize, j: usize) -> usize;
}

impl<L: LceOracle + ?Sized> LceOracle for &L {
    fn lce(&self, i: usize, j: usize) -> usize {
        (**self).lce(i, j)
    }
}

/// Symbol-by-symbol scan over the plain text.
#[derive(Clone, Copy, Debug)]
pub struct PlainLce<'a> {
    text: &'a [Symbol],
}

impl<'a> PlainLce<'a> {
    pub fn new(text: &'a [Symbol]) -> Self {
        Self { text }
    }
}

impl LceOracle for PlainLce<'_> {
    fn lce(&self, i: usize, j: usize) -> usize {
        plain_lce(self.text, i, j)
    }
}

pub fn plain_lce(text: &[Symbol], i: usize, j: usize) -> usize {
    let n = text.len();
    assert!(
        i < n && j < n,
        "LCE positions ({i}, {j}) out of range 0..{n}"
    );
    if i == j {
        return n - i;
    }
    text[i..]
        .iter()
        .zip(&text[j..])
        .take_while(|(&a, &b)| a == b && a != Symbol::NOMATCH)
        .count()
}
