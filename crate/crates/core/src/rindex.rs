//! The r-index: run-length BWT with rank/select and LF-mapping, SA samples
//! at run boundaries and two LCP samples per run.

use crate::suffix::{build_suffix_arrays, SuffixArrays};
use crate::text::{Alphabet, Symbol, TextCollection};

/// A maximal run of equal symbols in the BWT.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub symbol: Symbol,
    pub start: usize,
    pub len: usize,
}

impl Run {
    #[inline]
    pub fn end(&self) -> usize {
        self.start + self.len
    }

    #[inline]
    pub fn last(&self) -> usize {
        self.start + self.len - 1
    }
}

/// Location of a BWT position inside the run decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunPosition {
    pub run: usize,
    pub is_head: bool,
    pub is_tail: bool,
}

/// One run of a symbol as seen by that symbol's occurrence list.
#[derive(Clone, Copy, Debug)]
struct OccRun {
    start: usize,
    len: usize,
    /// Occurrences of the symbol in `BWT[0..start)`.
    before: usize,
}

const SIGMA: usize = 256;

#[derive(Clone, Debug)]
pub struct RIndex {
    n: usize,
    runs: Vec<Run>,
    /// Occurrences of the run's symbol before the run; makes LF a lookup.
    run_rank: Vec<usize>,
    c_table: Vec<usize>,
    occ: Vec<Vec<OccRun>>,
    sa_head: Vec<usize>,
    sa_tail: Vec<usize>,
    lcp_head: Vec<usize>,
    lcp_tail: Vec<usize>,
    text: TextCollection,
}

/// Per-run samples, in run order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct RunSamples {
    pub sa_head: Vec<usize>,
    pub sa_tail: Vec<usize>,
    pub lcp_head: Vec<usize>,
    pub lcp_tail: Vec<usize>,
}

impl RIndex {
    /// Builds the index, going through the full suffix arrays once.
    pub fn build(text: TextCollection) -> Self {
        let arrays = build_suffix_arrays(&text);
        let index = Self::from_arrays(text, &arrays);
        #[cfg(debug_assertions)]
        index.verify_against(&arrays);
        index
    }

    fn from_arrays(text: TextCollection, arrays: &SuffixArrays) -> Self {
        let runs = runs_of(&arrays.bwt);
        let mut samples = RunSamples::default();
        for run in &runs {
            samples.sa_head.push(arrays.sa[run.start]);
            samples.sa_tail.push(arrays.sa[run.last()]);
            if run.len >= 2 {
                samples.lcp_head.push(arrays.lcp[run.start + 1]);
                samples.lcp_tail.push(arrays.lcp[run.last()]);
            } else {
                samples.lcp_head.push(0);
                samples.lcp_tail.push(0);
            }
        }
        Self::from_runs(text, runs, samples)
    }

    /// Assembles an index from its stored parts, deriving the rank/select
    /// tables. `runs` must tile `[0..n)`.
    pub(crate) fn from_runs(text: TextCollection, runs: Vec<Run>, samples: RunSamples) -> Self {
        let n = text.len();
        let mut counts = vec![0usize; SIGMA];
        let mut occ: Vec<Vec<OccRun>> = vec![Vec::new(); SIGMA];
        let mut run_rank = Vec::with_capacity(runs.len());
        for run in &runs {
            let c = run.symbol.0 as usize;
            run_rank.push(counts[c]);
            occ[c].push(OccRun {
                start: run.start,
                len: run.len,
                before: counts[c],
            });
            counts[c] += run.len;
        }
        let mut c_table = vec![0usize; SIGMA + 1];
        for c in 0..SIGMA {
            c_table[c + 1] = c_table[c] + counts[c];
        }
        let RunSamples {
            sa_head,
            sa_tail,
            lcp_head,
            lcp_tail,
        } = samples;
        Self {
            n,
            runs,
            run_rank,
            c_table,
            occ,
            sa_head,
            sa_tail,
            lcp_head,
            lcp_tail,
            text,
        }
    }

    /// Text length including separators and the terminator.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of BWT runs.
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn text(&self) -> &TextCollection {
        &self.text
    }

    pub fn symbols(&self) -> &[Symbol] {
        self.text.symbols()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.text.alphabet()
    }

    /// Number of symbols in the BWT strictly smaller than `c`.
    pub fn c_of(&self, c: Symbol) -> usize {
        self.c_table[c.0 as usize]
    }

    /// Total occurrences of `c` in the text.
    pub fn count(&self, c: Symbol) -> usize {
        self.c_table[c.0 as usize + 1] - self.c_table[c.0 as usize]
    }

    pub fn run_of(&self, q: usize) -> RunPosition {
        assert!(q < self.n, "BWT position {q} out of range 0..{}", self.n);
        let run = self.runs.partition_point(|r| r.start <= q) - 1;
        let r = &self.runs[run];
        RunPosition {
            run,
            is_head: q == r.start,
            is_tail: q == r.last(),
        }
    }

    #[inline]
    pub fn bwt_char(&self, q: usize) -> Symbol {
        self.runs[self.run_of(q).run].symbol
    }

    /// Occurrences of `c` in `BWT[0..i)`.
    pub fn rank(&self, c: Symbol, i: usize) -> usize {
        debug_assert!(i <= self.n);
        let list = &self.occ[c.0 as usize];
        let k = list.partition_point(|o| o.start < i);
        if k == 0 {
            return 0;
        }
        let o = &list[k - 1];
        o.before + o.len.min(i - o.start)
    }

    /// Position of the `k`-th (1-based) occurrence of `c` in the BWT, or
    /// `None` when `k` is 0 or exceeds the number of occurrences.
    pub fn select(&self, c: Symbol, k: usize) -> Option<usize> {
        if k == 0 || k > self.count(c) {
            return None;
        }
        let list = &self.occ[c.0 as usize];
        let j = list.partition_point(|o| o.before + o.len < k);
        let o = &list[j];
        Some(o.start + (k - o.before - 1))
    }

    /// LF-mapping: the BWT row of the suffix one position to the left.
    pub fn lf(&self, q: usize) -> usize {
        let RunPosition { run, .. } = self.run_of(q);
        let r = &self.runs[run];
        self.c_table[r.symbol.0 as usize] + self.run_rank[run] + (q - r.start)
    }

    /// `SA[q]` for a run head or tail.
    ///
    /// Panics if `q` is not a run boundary: the query algorithm may only
    /// ever ask for sampled positions.
    pub fn sa_at_boundary(&self, q: usize) -> usize {
        self.try_sa_at_boundary(q)
            .unwrap_or_else(|| panic!("SA requested at non-boundary BWT position {q}"))
    }

    pub fn try_sa_at_boundary(&self, q: usize) -> Option<usize> {
        let pos = self.run_of(q);
        if pos.is_head {
            Some(self.sa_head[pos.run])
        } else if pos.is_tail {
            Some(self.sa_tail[pos.run])
        } else {
            None
        }
    }

    /// `LCP[start + 1]` of the run, or 0 for a run of length one.
    pub fn lcp_head_of(&self, run: usize) -> usize {
        self.lcp_head[run]
    }

    /// `LCP[start + len - 1]` of the run, or 0 for a run of length one.
    pub fn lcp_tail_of(&self, run: usize) -> usize {
        self.lcp_tail[run]
    }

    pub fn sa_head_of(&self, run: usize) -> usize {
        self.sa_head[run]
    }

    pub fn sa_tail_of(&self, run: usize) -> usize {
        self.sa_tail[run]
    }

    /// Maps a text position to `(sequence index, offset within sequence)`.
    /// Separators and the terminator map to `None`.
    pub fn locate(&self, text_pos: usize) -> Option<(usize, usize)> {
        let offsets = self.text.offsets();
        let seq = offsets.partition_point(|&o| o <= text_pos).checked_sub(1)?;
        let off = text_pos - offsets[seq];
        (off < self.text.lengths()[seq]).then_some((seq, off))
    }

    pub(crate) fn samples(&self) -> RunSamples {
        RunSamples {
            sa_head: self.sa_head.clone(),
            sa_tail: self.sa_tail.clone(),
            lcp_head: self.lcp_head.clone(),
            lcp_tail: self.lcp_tail.clone(),
        }
    }

    #[cfg(test)]
    pub(crate) fn samples_mut(&mut self) -> (&mut Vec<usize>, &mut Vec<usize>) {
        (&mut self.sa_head, &mut self.lcp_head)
    }

    /// Checks every derived table against full suffix arrays.
    #[cfg(debug_assertions)]
    fn verify_against(&self, arrays: &SuffixArrays) {
        assert_eq!(self.runs.iter().map(|r| r.len).sum::<usize>(), self.n);
        for (j, run) in self.runs.iter().enumerate() {
            assert_eq!(self.sa_head[j], arrays.sa[run.start]);
            assert_eq!(self.sa_tail[j], arrays.sa[run.last()]);
            for q in run.start..run.end() {
                assert_eq!(arrays.bwt[q], run.symbol);
                assert_eq!(self.lf(q), arrays.lf(q), "LF mismatch at {q}");
            }
        }
    }
}

/// Builds an index over an encoded collection.
pub fn build_rindex(text: TextCollection) -> RIndex {
    RIndex::build(text)
}

pub(crate) fn runs_of(bwt: &[Symbol]) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    for (q, &c) in bwt.iter().enumerate() {
        match runs.last_mut() {
            Some(r) if r.symbol == c => r.len += 1,
            _ => runs.push(Run {
                symbol: c,
                start: q,
                len: 1,
            }),
        }
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{encode_collection, FastaRecord};

    fn index_of(seqs: &[&str]) -> RIndex {
        let recs: Vec<_> = seqs
            .iter()
            .enumerate()
            .map(|(k, s)| FastaRecord::new(format!("s{k}"), s.as_bytes()))
            .collect();
        RIndex::build(encode_collection(&recs, &Alphabet::dna()).unwrap())
    }

    const A: Symbol = Symbol(2);

    #[test]
    fn homopolymer_runs() {
        // SA of AAAA$ is [4,3,2,1,0], so the BWT is AAAA$ and LCP is [0,0,1,2,3].
        let idx = index_of(&["AAAA"]);
        assert_eq!(idx.len(), 5);
        assert_eq!(idx.run_count(), 2);
        assert_eq!(
            idx.runs(),
            &[
                Run {
                    symbol: A,
                    start: 0,
                    len: 4
                },
                Run {
                    symbol: Symbol::TERMINATOR,
                    start: 4,
                    len: 1
                },
            ]
        );
        assert_eq!(idx.sa_head_of(0), 4);
        assert_eq!(idx.sa_tail_of(0), 1);
        assert_eq!(idx.lcp_head_of(0), 0);
        assert_eq!(idx.lcp_tail_of(0), 2);
        assert_eq!(idx.sa_at_boundary(4), 0);
    }

    #[test]
    fn two_symbol_text() {
        let idx = index_of(&["A"]);
        assert_eq!(
            idx.runs(),
            &[
                Run {
                    symbol: A,
                    start: 0,
                    len: 1
                },
                Run {
                    symbol: Symbol::TERMINATOR,
                    start: 1,
                    len: 1
                },
            ]
        );
        assert_eq!((idx.lcp_head_of(0), idx.lcp_tail_of(0)), (0, 0));
        assert_eq!((idx.lcp_head_of(1), idx.lcp_tail_of(1)), (0, 0));
        assert_eq!(idx.lf(0), 1);
        assert_eq!(idx.lf(1), 0);
        assert_eq!(idx.select(A, 1), Some(0));
        assert_eq!(idx.select(Symbol(3), 1), None);
        assert_eq!(idx.select(A, 0), None);
        assert_eq!(idx.select(A, 2), None);
        let p = idx.run_of(0);
        assert!(p.is_head && p.is_tail);
    }

    #[test]
    fn rank_edges() {
        let idx = index_of(&["ACACTCTTACACCATATCATCAA"]);
        for c in 0..6 {
            assert_eq!(idx.rank(Symbol(c), 0), 0);
        }
        assert_eq!(idx.rank(A, idx.len()), 9);
        assert_eq!(idx.count(A), 9);
        let dollar = (0..idx.len())
            .find(|&q| idx.bwt_char(q) == Symbol::TERMINATOR)
            .unwrap();
        assert_eq!(idx.lf(dollar), 0);
    }

    #[test]
    #[should_panic(expected = "non-boundary")]
    fn interior_sample_access_panics() {
        let idx = index_of(&["AAAA"]);
        idx.sa_at_boundary(2);
    }

    #[test]
    fn locate_positions() {
        let idx = index_of(&["AC", "GTA"]);
        assert_eq!(idx.locate(0), Some((0, 0)));
        assert_eq!(idx.locate(1), Some((0, 1)));
        assert_eq!(idx.locate(2), None);
        assert_eq!(idx.locate(3), Some((1, 0)));
        assert_eq!(idx.locate(5), Some((1, 2)));
        assert_eq!(idx.locate(6), None);
    }
}
