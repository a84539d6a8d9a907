//! Maximal unique matches from extended matching statistics.
//!
//! A pattern position `i` is a candidate when its longest match is unique
//! in the text (`twice < len`) and cannot be extended to the left (`i = 0`
//! or `len[i-1] <= len[i]`). Candidates unique in the text map to exactly
//! one text interval, so a candidate is repeated in the pattern exactly when
//! its interval is nested in another candidate's interval.

use crate::ems::EmsEntry;
use crate::rindex::RIndex;
use crate::suffix::lcp_of_pattern;
use crate::text::Symbol;

/// A maximal unique match, in 0-based concatenated-text coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mum {
    pub pattern_pos: usize,
    pub text_pos: usize,
    pub length: usize,
}

impl Mum {
    /// `(sequence index, offset within that sequence)` of the text side.
    pub fn locate(&self, index: &RIndex) -> Option<(usize, usize)> {
        index.locate(self.text_pos)
    }
}

/// A pattern position whose maximal match is unique in the text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub pattern_pos: usize,
    pub text_pos: usize,
    pub len: usize,
}

impl From<Candidate> for Mum {
    fn from(c: Candidate) -> Self {
        Mum {
            pattern_pos: c.pattern_pos,
            text_pos: c.text_pos,
            length: c.len,
        }
    }
}

/// Unique in the text and left-maximal, in pattern order. Reset entries
/// (`len = 0`) are never candidates.
pub fn candidates(ems: &[EmsEntry]) -> Vec<Candidate> {
    ems.iter()
        .enumerate()
        .filter(|&(i, e)| e.len > 0 && e.twice < e.len && (i == 0 || ems[i - 1].len <= e.len))
        .map(|(i, e)| Candidate {
            pattern_pos: i,
            text_pos: e.pos,
            len: e.len,
        })
        .collect()
}

/// Sweeps the candidates in text order and drops every candidate whose
/// text interval equals or lies inside another one. Output is sorted by
/// pattern position.
pub fn retrieve_mums(ems: &[EmsEntry]) -> Vec<Mum> {
    let mut cands = candidates(ems);
    // Longer first on equal positions, so containers precede contents.
    cands.sort_by(|a, b| {
        a.text_pos
            .cmp(&b.text_pos)
            .then(b.len.cmp(&a.len))
            .then(a.pattern_pos.cmp(&b.pattern_pos))
    });
    let mut iter = cands.into_iter();
    let Some(mut cur) = iter.next() else {
        return Vec::new();
    };
    let mut unique = true;
    let mut out = Vec::new();
    for next in iter {
        if next.text_pos == cur.text_pos {
            if next.len == cur.len {
                unique = false;
            } else if cur.len < next.len {
                cur = next;
                unique = true;
            }
        } else if cur.text_pos + cur.len < next.text_pos + next.len {
            if unique {
                out.push(Mum::from(cur));
            }
            cur = next;
            unique = true;
        }
    }
    if unique {
        out.push(Mum::from(cur));
    }
    out.sort();
    out
}

/// Same result as [`retrieve_mums`], deciding pattern uniqueness with the
/// suffix and LCP arrays of the pattern instead of the containment sweep.
pub fn mums_via_pattern_index(ems: &[EmsEntry], pattern: &[Symbol]) -> Vec<Mum> {
    assert_eq!(ems.len(), pattern.len(), "one eMS entry per pattern symbol");
    let Ok(arrays) = lcp_of_pattern(pattern) else {
        return Vec::new();
    };
    let m = pattern.len();
    candidates(ems)
        .into_iter()
        .filter(|c| {
            let rank = arrays.isa[c.pattern_pos];
            let above = arrays.lcp[rank];
            let below = if rank + 1 < m {
                arrays.lcp[rank + 1]
            } else {
                0
            };
            above.max(below) < c.len
        })
        .map(Mum::from)
        .collect()
}
