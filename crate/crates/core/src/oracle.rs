//! Brute-force extended matching statistics and MUMs, computed straight from
//! their definitions. Quadratic time or worse; for verification only.
//!
//! Nothing here uses the index, the suffix arrays or the LCE engine.

use crate::ems::EmsEntry;
use crate::mums::Mum;
use crate::text::Symbol;

/// Symbol equality as seen by a query: a pattern symbol matches a text
/// symbol only if both are the same alphabet character.
#[inline]
fn matches(text_sym: Symbol, pattern_sym: Symbol) -> bool {
    pattern_sym.is_matchable() && text_sym == pattern_sym
}

fn match_len(text: &[Symbol], p: usize, pattern: &[Symbol], i: usize) -> usize {
    text[p..]
        .iter()
        .zip(&pattern[i..])
        .take_while(|(&t, &s)| matches(t, s))
        .count()
}

/// Number of text positions where `factor` occurs.
pub fn count_in_text(text: &[Symbol], factor: &[Symbol]) -> usize {
    if factor.is_empty() || factor.len() > text.len() {
        return 0;
    }
    text.windows(factor.len())
        .filter(|w| w.iter().zip(factor).all(|(&t, &s)| matches(t, s)))
        .count()
}

/// Number of pattern positions where `factor` occurs.
pub fn count_in_pattern(pattern: &[Symbol], factor: &[Symbol]) -> usize {
    count_in_text(pattern, factor)
}

/// eMS by exhaustive scan. `pos` is the leftmost longest match; `twice`
/// is the best match length over all other text positions.
pub fn naive_ems(text: &[Symbol], pattern: &[Symbol]) -> Vec<EmsEntry> {
    (0..pattern.len())
        .map(|i| {
            let mut best = (0usize, 0usize);
            let mut second = 0usize;
            for p in 0..text.len() {
                let l = match_len(text, p, pattern, i);
                if l > best.1 {
                    second = best.1;
                    best = (p, l);
                } else {
                    second = second.max(l);
                }
            }
            if best.1 == 0 {
                EmsEntry::RESET
            } else {
                EmsEntry::new(best.0, best.1, second)
            }
        })
        .collect()
}

/// True if `pattern[i..i+len)` is a MUM by the definition: it occurs in
/// the text, cannot be extended left or right, and occurs exactly once in
/// both the text and the pattern.
pub fn is_mum(text: &[Symbol], pattern: &[Symbol], i: usize, len: usize) -> bool {
    if len == 0 || i + len > pattern.len() {
        return false;
    }
    let w = &pattern[i..i + len];
    let left_max = i == 0 || count_in_text(text, &pattern[i - 1..i + len]) == 0;
    let right_max = i + len == pattern.len() || count_in_text(text, &pattern[i..=i + len]) == 0;
    left_max && right_max && count_in_text(text, w) == 1 && count_in_pattern(pattern, w) == 1
}

/// All MUMs, sorted by pattern position. A right-maximal match starting at
/// `i` has length `len[i]`, so only those factors are tested.
pub fn naive_mums(text: &[Symbol], pattern: &[Symbol]) -> Vec<Mum> {
    naive_ems(text, pattern)
        .iter()
        .enumerate()
        .filter(|(i, e)| is_mum(text, pattern, *i, e.len))
        .map(|(i, e)| {
            let w = &pattern[i..i + e.len];
            let text_pos = (0..text.len())
                .find(|&p| match_len(text, p, w, 0) == w.len())
                .expect("factor occurs");
            Mum {
                pattern_pos: i,
                text_pos,
                length: e.len,
            }
        })
        .collect()
}
