//! Full suffix array, inverse suffix array, LCP array and BWT.
//!
//! These are only materialized while building an index and by the
//! verification code; the query path never touches them.

use crate::error::TextError;
use crate::text::{Symbol, TextCollection};

/// SA, ISA, LCP and BWT of one text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixArrays {
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    /// `lcp[0] = 0`; `lcp[i]` is the LCP of the suffixes at `sa[i-1]` and `sa[i]`.
    pub lcp: Vec<usize>,
    pub bwt: Vec<Symbol>,
}

impl SuffixArrays {
    /// Builds all four arrays for a terminated symbol sequence.
    pub fn from_symbols(text: &[Symbol]) -> Self {
        debug_assert!(
            text.last() == Some(&Symbol::TERMINATOR)
                && text[..text.len() - 1]
                    .iter()
                    .all(|&s| s != Symbol::TERMINATOR),
            "text must end with a unique terminator"
        );
        let n = text.len();
        let sa = suffix_array(text);
        let isa = inverse(&sa);
        let lcp = kasai(text, &sa, &isa);
        let bwt = sa.iter().map(|&p| text[(p + n - 1) % n]).collect();
        Self { sa, isa, lcp, bwt }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// `LF(i) = ISA[(SA[i] - 1) mod n]`.
    pub fn lf(&self, i: usize) -> usize {
        let n = self.sa.len();
        self.isa[(self.sa[i] + n - 1) % n]
    }
}

/// Builds the suffix structures of an encoded collection.
pub fn build_suffix_arrays(text: &TextCollection) -> SuffixArrays {
    SuffixArrays::from_symbols(text.symbols())
}

/// Suffix arrays of a pattern, as if a terminator smaller than every
/// symbol were appended. The terminator's own suffix is left out, so all
/// arrays have the pattern's length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternArrays {
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub lcp: Vec<usize>,
}

pub fn lcp_of_pattern(pattern: &[Symbol]) -> Result<PatternArrays, TextError> {
    if pattern.is_empty() {
        return Err(TextError::EmptyPattern);
    }
    let sa = suffix_array(pattern);
    let isa = inverse(&sa);
    let lcp = kasai(pattern, &sa, &isa);
    Ok(PatternArrays { sa, isa, lcp })
}

/// Prefix-doubling suffix sort. A suffix that is a proper prefix of another
/// sorts first, which matches an implicit minimal terminator.
pub fn suffix_array<T: Ord + Copy>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| s[i]);
    let mut rank = vec![0usize; n];
    for w in 1..n {
        rank[sa[w]] = rank[sa[w - 1]] + usize::from(s[sa[w]] != s[sa[w - 1]]);
    }
    let mut next = vec![0usize; n];
    let mut k = 1;
    while rank[sa[n - 1]] < n - 1 {
        // 0 marks "past the end", so live ranks are shifted by one.
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0]] = 0;
        for w in 1..n {
            next[sa[w]] = next[sa[w - 1]] + usize::from(key(sa[w]) != key(sa[w - 1]));
        }
        std::mem::swap(&mut rank, &mut next);
        k *= 2;
    }
    sa
}

fn inverse(sa: &[usize]) -> Vec<usize> {
    let mut isa = vec![0; sa.len()];
    for (i, &p) in sa.iter().enumerate() {
        isa[p] = i;
    }
    isa
}

/// Kasai et al. linear-time LCP from SA and ISA.
pub fn kasai<T: Eq>(s: &[T], sa: &[usize], isa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for i in 0..n {
        let rank = isa[i];
        if rank == 0 {
            h = 0;
            continue;
        }
        let j = sa[rank - 1];
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[rank] = h;
        h = h.saturating_sub(1);
    }
    lcp
}
