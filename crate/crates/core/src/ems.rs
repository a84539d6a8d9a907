//! Streaming computation of extended matching statistics.
//!
//! For every pattern position `i` the engine reports `(pos, len, twice)`:
//! `P[i..i+len)` is the longest prefix of `P[i..]` occurring in the text, it
//! occurs at `pos`, and `twice` is the longest prefix of `P[i..]` occurring
//! at some text position other than `pos`. The pattern is consumed right to
//! left, one symbol per step, using only LF, rank/select, the run-boundary
//! SA samples, the per-run LCP samples and LCE queries.
//!
//! Besides the BWT row `q` (with `SA[q] = pos` of the previous entry) the
//! cursor carries `lcp_p = min(len, LCP[q])` and `lcp_s = min(len, LCP[q+1])`.
//! `twice` is then `max(lcp_p, lcp_s)` because the second-best match is
//! always found at a lexicographic neighbour of the best one.

use crate::lce::{LceOracle, PlainLce};
use crate::rindex::RIndex;
use crate::text::Symbol;

/// One entry of the extended matching statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EmsEntry {
    pub pos: usize,
    pub len: usize,
    pub twice: usize,
}

impl EmsEntry {
    pub const RESET: EmsEntry = EmsEntry {
        pos: 0,
        len: 0,
        twice: 0,
    };

    pub fn new(pos: usize, len: usize, twice: usize) -> Self {
        Self { pos, len, twice }
    }
}

/// Cursor state between two steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QueryState {
    /// BWT row whose suffix starts at the previous entry's `pos`.
    pub q: usize,
    pub lcp_p: usize,
    pub lcp_s: usize,
}

/// Which rule produced the latest entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// First symbol after the start or after a reset.
    Init,
    Match,
    Mismatch,
    /// Symbol absent from the text (or NOMATCH); the entry is `(0, 0, 0)`.
    Reset,
}

/// Output of [`ms_match`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchStep {
    pub entry: EmsEntry,
    pub lcp_p: usize,
    pub lcp_s: usize,
}

/// Output of [`ms_mismatch`]; `q` is the row the match continues from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MismatchStep {
    pub entry: EmsEntry,
    pub lcp_p: usize,
    pub lcp_s: usize,
    pub q: usize,
}

/// Extends the previous match by `sym`, which precedes it in the text
/// (`BWT[q] = sym` and `SA[q] = prev.pos`).
pub fn ms_match<L: LceOracle>(
    index: &RIndex,
    lce: &L,
    sym: Symbol,
    q: usize,
    prev: EmsEntry,
    lcp_p: usize,
    lcp_s: usize,
) -> MatchStep {
    debug_assert_eq!(index.bwt_char(q), sym);
    let pos = prev.pos - 1;
    let len = prev.len + 1;
    let c = index.rank(sym, q);

    // LF(q) - 1 is the LF image of the previous occurrence of sym, so
    // LCP[LF(q)] = LCE(SA[q], SA[q_p]) + 1. The min against the carried
    // value caps the result by len.
    let lcp_p = if q > 0 && index.bwt_char(q - 1) == sym {
        lcp_p + 1
    } else {
        match index.select(sym, c) {
            Some(qp) => lcp_p.min(lce.lce(prev.pos, index.sa_at_boundary(qp))) + 1,
            None => 0,
        }
    };
    let lcp_s = if q + 1 < index.len() && index.bwt_char(q + 1) == sym {
        lcp_s + 1
    } else {
        match index.select(sym, c + 2) {
            Some(qs) => lcp_s.min(lce.lce(prev.pos, index.sa_at_boundary(qs))) + 1,
            None => 0,
        }
    };
    let twice = len.min(lcp_p.max(lcp_s));
    MatchStep {
        entry: EmsEntry { pos, len, twice },
        lcp_p,
        lcp_s,
    }
}

/// Handles `BWT[q] != sym`: the new match continues from the closest
/// occurrence of `sym` above (`q_p`) or below (`q_s`) row `q`, whichever
/// shares the longer prefix with the previous match. Returns `None` when
/// `sym` does not occur in the text.
pub fn ms_mismatch<L: LceOracle>(
    index: &RIndex,
    lce: &L,
    sym: Symbol,
    q: usize,
    prev: EmsEntry,
    lcp_p: usize,
    lcp_s: usize,
) -> Option<MismatchStep> {
    debug_assert_ne!(index.bwt_char(q), sym);
    let c = index.rank(sym, q);
    let qp = index.select(sym, c);
    let qs = index.select(sym, c + 1);

    // Longest common prefix of each neighbour with the previous match.
    let ext_p = qp.map(|qp| {
        if qp + 1 == q {
            lcp_p
        } else {
            prev.len.min(lce.lce(prev.pos, index.sa_at_boundary(qp)))
        }
    });
    let ext_s = qs.map(|qs| {
        if qs == q + 1 {
            lcp_s
        } else {
            prev.len.min(lce.lce(prev.pos, index.sa_at_boundary(qs)))
        }
    });

    let step = match (qp, ext_p, qs, ext_s) {
        (_, _, Some(qs), Some(es)) if ext_p.is_none_or(|ep| ep <= es) => {
            let pos = index.sa_at_boundary(qs) - 1;
            let len = es + 1;
            // q_p and q_s are consecutive occurrences of sym, so their LF
            // images are adjacent rows.
            let new_p = ext_p.map_or(0, |ep| ep + 1);
            let new_s = match index.select(sym, c + 2) {
                Some(next) if next == qs + 1 => {
                    let run = index.run_of(qs);
                    debug_assert!(run.is_head && !run.is_tail);
                    len.min(index.lcp_head_of(run.run) + 1)
                }
                Some(next) => {
                    len.min(lce.lce(index.sa_at_boundary(qs), index.sa_at_boundary(next)) + 1)
                }
                None => 0,
            };
            MismatchStep {
                entry: EmsEntry::new(pos, len, len.min(new_p.max(new_s))),
                lcp_p: new_p,
                lcp_s: new_s,
                q: qs,
            }
        }
        (Some(qp), Some(ep), _, _) => {
            let pos = index.sa_at_boundary(qp) - 1;
            let len = ep + 1;
            let new_s = ext_s.map_or(0, |es| es + 1);
            let new_p = match c.checked_sub(1).and_then(|k| index.select(sym, k)) {
                Some(prevocc) if prevocc + 1 == qp => {
                    let run = index.run_of(qp);
                    debug_assert!(run.is_tail && !run.is_head);
                    len.min(index.lcp_tail_of(run.run) + 1)
                }
                Some(prevocc) => {
                    len.min(lce.lce(index.sa_at_boundary(qp), index.sa_at_boundary(prevocc)) + 1)
                }
                None => 0,
            };
            MismatchStep {
                entry: EmsEntry::new(pos, len, len.min(new_p.max(new_s))),
                lcp_p: new_p,
                lcp_s: new_s,
                q: qp,
            }
        }
        _ => return None,
    };
    Some(step)
}

/// Streaming eMS cursor. Feed pattern symbols last to first with
/// [`push`](Self::push); each call returns the entry for that symbol.
#[derive(Clone, Debug)]
pub struct EmsCursor<'a, L> {
    index: &'a RIndex,
    lce: L,
    state: Option<(QueryState, EmsEntry)>,
    last_step: Option<StepKind>,
}

impl<'a> EmsCursor<'a, PlainLce<'a>> {
    /// Cursor backed by the index's stored text for LCE queries.
    pub fn with_plain_lce(index: &'a RIndex) -> Self {
        Self::new(index, PlainLce::new(index.symbols()))
    }
}

impl<'a, L: LceOracle> EmsCursor<'a, L> {
    pub fn new(index: &'a RIndex, lce: L) -> Self {
        Self {
            index,
            lce,
            state: None,
            last_step: None,
        }
    }

    /// Current state, `None` before the first symbol or right after a reset.
    pub fn state(&self) -> Option<QueryState> {
        self.state.map(|(s, _)| s)
    }

    pub fn last_step(&self) -> Option<StepKind> {
        self.last_step
    }

    pub fn push(&mut self, sym: Symbol) -> EmsEntry {
        let index = self.index;
        if !sym.is_matchable() || index.count(sym) == 0 {
            self.state = None;
            self.last_step = Some(StepKind::Reset);
            return EmsEntry::RESET;
        }
        let (entry, mut state, kind) = match self.state {
            None => {
                let q = index.select(sym, 1).expect("symbol occurs");
                // A single occurrence has no second match, despite the
                // textbook initialisation of twice to 1.
                let twice = usize::from(index.count(sym) >= 2);
                let entry = EmsEntry::new(index.sa_at_boundary(q) - 1, 1, twice);
                (
                    entry,
                    QueryState {
                        q,
                        lcp_p: 0,
                        lcp_s: twice,
                    },
                    StepKind::Init,
                )
            }
            Some((st, prev)) if index.bwt_char(st.q) == sym => {
                let m = ms_match(index, &self.lce, sym, st.q, prev, st.lcp_p, st.lcp_s);
                (
                    m.entry,
                    QueryState {
                        q: st.q,
                        lcp_p: m.lcp_p,
                        lcp_s: m.lcp_s,
                    },
                    StepKind::Match,
                )
            }
            Some((st, prev)) => {
                let m = ms_mismatch(index, &self.lce, sym, st.q, prev, st.lcp_p, st.lcp_s)
                    .expect("symbol occurs");
                (
                    m.entry,
                    QueryState {
                        q: m.q,
                        lcp_p: m.lcp_p,
                        lcp_s: m.lcp_s,
                    },
                    StepKind::Mismatch,
                )
            }
        };
        state.q = index.lf(state.q);
        self.state = Some((state, entry));
        self.last_step = Some(kind);
        entry
    }

    /// Wraps a symbol source (yielding the pattern last to first) into an
    /// iterator of entries in the same order. Each source symbol is pulled
    /// exactly once.
    pub fn stream<I: IntoIterator<Item = Symbol>>(
        self,
        source: I,
    ) -> EmsStream<'a, L, I::IntoIter> {
        EmsStream {
            cursor: self,
            source: source.into_iter(),
        }
    }
}

/// Iterator adapter returned by [`EmsCursor::stream`].
pub struct EmsStream<'a, L, I> {
    cursor: EmsCursor<'a, L>,
    source: I,
}

impl<L: LceOracle, I: Iterator<Item = Symbol>> Iterator for EmsStream<'_, L, I> {
    type Item = EmsEntry;

    fn next(&mut self) -> Option<EmsEntry> {
        let sym = self.source.next()?;
        Some(self.cursor.push(sym))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.source.size_hint()
    }
}

/// Computes the eMS array of `pattern` (indexed by pattern position).
pub fn compute_ems<L: LceOracle>(index: &RIndex, lce: L, pattern: &[Symbol]) -> Vec<EmsEntry> {
    let mut out: Vec<EmsEntry> = EmsCursor::new(index, lce)
        .stream(pattern.iter().rev().copied())
        .collect();
    out.reverse();
    out
}

impl RIndex {
    /// eMS of `pattern` using plain LCE over the stored text.
    pub fn ems(&self, pattern: &[Symbol]) -> Vec<EmsEntry> {
        compute_ems(self, PlainLce::new(self.symbols()), pattern)
    }
}
