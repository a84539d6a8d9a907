//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rmum_core::cli::render_report;
use rmum_core::ems::{EmsCursor, EmsEntry};
use rmum_core::mums::{candidates, mums_via_pattern_index, retrieve_mums, Mum};
use rmum_core::oracle::{count_in_text, naive_ems, naive_mums};
use rmum_core::rindex::RIndex;
use rmum_core::suffix::{build_suffix_arrays, SuffixArrays};
use rmum_core::text::{encode_collection, encode_pattern, Alphabet, FastaRecord, Symbol};
use rmum_core::verify::random_instance;
use rmum_core::LoadError;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

const EXAMPLE_T: &str = "ACACTCTTACACCATATCATCAA";
const EXAMPLE_P: &[u8] = b"AACCTAA";
const CORPUS_SEED: u64 = 0x5eed_0001;
const CORPUS_SIZE: usize = 500;

struct Case {
    index: RIndex,
    pattern: Vec<Symbol>,
}

fn example_index() -> RIndex {
    let recs = [FastaRecord::new("t", EXAMPLE_T)];
    RIndex::build(encode_collection(&recs, &Alphabet::dna()).unwrap())
}

fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let inst = random_instance(&mut rng, 1000, 100);
            let index = RIndex::build(encode_collection(&inst.records, &inst.alphabet).unwrap());
            let pattern = encode_pattern(&inst.pattern, index.alphabet()).unwrap();
            Case { index, pattern }
        })
        .collect()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:.2?}, limit {limit:.0?}");
    Ok(t)
}

fn occurs_at(text: &[Symbol], pattern: &[Symbol], i: usize, e: &EmsEntry) -> bool {
    e.pos + e.len <= text.len() && text[e.pos..e.pos + e.len] == pattern[i..i + e.len]
}

fn golden_ems() -> Outcome {
    let start = Instant::now();
    let idx = example_index();
    let p = encode_pattern(EXAMPLE_P, idx.alphabet()).unwrap();
    let ems = idx.ems(&p);
    let lens: Vec<_> = ems.iter().map(|e| e.len).collect();
    let twice: Vec<_> = ems.iter().map(|e| e.twice).collect();
    ensure!(lens == [2, 3, 2, 2, 2, 2, 1], "len = {lens:?}");
    ensure!(twice == [1, 2, 1, 2, 2, 1, 1], "twice = {twice:?}");
    for (i, e) in ems.iter().enumerate() {
        ensure!(
            occurs_at(idx.symbols(), &p, i, e),
            "pos {} at i = {i} is not an occurrence",
            e.pos
        );
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("len {lens:?}, twice {twice:?} in {t:.2?}"))
}

fn golden_mums() -> Outcome {
    let start = Instant::now();
    let idx = example_index();
    let p = encode_pattern(EXAMPLE_P, idx.alphabet()).unwrap();
    let ems = idx.ems(&p);
    let cand: Vec<_> = candidates(&ems).iter().map(|c| c.pattern_pos).collect();
    ensure!(cand == [0, 1, 5], "L = {cand:?}");
    let expected = [Mum {
        pattern_pos: 1,
        text_pos: 10,
        length: 3,
    }];
    let swept = retrieve_mums(&ems);
    ensure!(swept == expected, "sweep gave {swept:?}");
    let via = mums_via_pattern_index(&ems, &p);
    ensure!(via == expected, "pattern index gave {via:?}");
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "L = {{0,1,5}}, MUM (1, 10, 3) by both methods in {t:.2?}"
    ))
}

fn oracle_equivalence(corpus: &[Case]) -> Outcome {
    let start = Instant::now();
    let (mut multi, mut nomatch, mut mums) = (0, 0, 0);
    for (k, c) in corpus.iter().enumerate() {
        let text = c.index.symbols();
        ensure!(
            text.len() <= 1000 && c.pattern.len() <= 100,
            "instance {k} out of bounds"
        );
        let ems = c.index.ems(&c.pattern);
        let oracle = naive_ems(text, &c.pattern);
        for (i, (e, o)) in ems.iter().zip(&oracle).enumerate() {
            ensure!(
                (e.len, e.twice) == (o.len, o.twice),
                "instance {k}, i = {i}: engine ({}, {}), oracle ({}, {})",
                e.len,
                e.twice,
                o.len,
                o.twice
            );
            ensure!(
                occurs_at(text, &c.pattern, i, e),
                "instance {k}, i = {i}: bad pos {}",
                e.pos
            );
        }
        let expected = naive_mums(text, &c.pattern);
        ensure!(
            retrieve_mums(&ems) == expected,
            "instance {k}: sweep MUMs differ"
        );
        ensure!(
            mums_via_pattern_index(&ems, &c.pattern) == expected,
            "instance {k}: pattern-index MUMs differ"
        );
        multi += usize::from(c.index.text().sequence_count() > 1);
        nomatch += usize::from(c.pattern.contains(&Symbol::NOMATCH));
        mums += expected.len();
    }
    ensure!(
        multi > 0 && nomatch > 0,
        "corpus lacks coverage: {multi} multi-sequence, {nomatch} NOMATCH"
    );
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} instances ({multi} multi-sequence, {nomatch} with NOMATCH, {mums} MUMs) in {t:.2?}",
        corpus.len()
    ))
}

fn raw_lce(text: &[Symbol], i: usize, j: usize) -> usize {
    text[i..]
        .iter()
        .zip(&text[j..])
        .take_while(|(a, b)| a == b)
        .count()
}

fn check_structure(idx: &RIndex, sa: &SuffixArrays) -> Result<(), String> {
    let n = idx.len();
    let text = idx.symbols();

    let mut lf_inv = vec![usize::MAX; n];
    for q in 0..n {
        let l = idx.lf(q);
        ensure!(l == sa.lf(q), "lf({q}) = {l}, expected {}", sa.lf(q));
        ensure!(lf_inv[l] == usize::MAX, "lf not injective at {l}");
        lf_inv[l] = q;
    }

    let symbols: HashSet<Symbol> = sa.bwt.iter().copied().collect();
    for &c in &symbols {
        let mut seen = 0;
        for i in 0..=n {
            ensure!(idx.rank(c, i) == seen, "rank({c:?}, {i})");
            if i < n && sa.bwt[i] == c {
                seen += 1;
                ensure!(idx.select(c, seen) == Some(i), "select({c:?}, {seen})");
            }
        }
        ensure!(idx.count(c) == seen, "count({c:?})");
        ensure!(
            idx.select(c, 0).is_none() && idx.select(c, seen + 1).is_none(),
            "select({c:?}) out of range"
        );
    }

    for (k, run) in idx.runs().iter().enumerate() {
        let (s, l) = (run.start, run.last());
        ensure!(
            sa.bwt[s..=l].iter().all(|&b| b == run.symbol),
            "run {k} symbol"
        );
        ensure!(
            idx.sa_head_of(k) == sa.sa[s] && idx.sa_tail_of(k) == sa.sa[l],
            "run {k} SA samples"
        );
        let (head, tail) = if run.len > 1 {
            (sa.lcp[s + 1], sa.lcp[l])
        } else {
            (0, 0)
        };
        ensure!(
            idx.lcp_head_of(k) == head && idx.lcp_tail_of(k) == tail,
            "run {k} LCP samples"
        );
        for q in s..=l {
            let boundary = q == s || q == l;
            ensure!(
                idx.try_sa_at_boundary(q).is_some() == boundary,
                "boundary test at {q}"
            );
        }
    }

    for q in 1..n {
        let (i, j) = (lf_inv[q - 1], lf_inv[q]);
        let expected = if sa.bwt[i] != sa.bwt[j] {
            0
        } else {
            raw_lce(text, sa.sa[i], sa.sa[j]) + 1
        };
        ensure!(sa.lcp[q] == expected, "LCP through LF fails at q = {q}");
    }
    Ok(())
}

fn check_ems_shape(idx: &RIndex, sa: &SuffixArrays, ems: &[EmsEntry]) -> Result<(), String> {
    for (i, e) in ems.iter().enumerate() {
        ensure!(e.twice <= e.len, "twice > len at {i}");
        if i + 1 < ems.len() {
            ensure!(e.len <= ems[i + 1].len + 1, "len jumps at {i}");
        }
        if e.len > 0 {
            let q = sa.isa[e.pos];
            let below = if q + 1 < idx.len() { sa.lcp[q + 1] } else { 0 };
            let expected = e.len.min(sa.lcp[q].max(below));
            ensure!(
                e.twice == expected,
                "twice from neighbouring LCPs fails at {i}"
            );
        }
    }
    Ok(())
}

fn structural(corpus: &[Case]) -> Outcome {
    let start = Instant::now();
    for (k, c) in corpus.iter().enumerate() {
        let sa = build_suffix_arrays(c.index.text());
        check_structure(&c.index, &sa).map_err(|e| format!("instance {k}: {e}"))?;
        // sa_at_boundary asserts its contract; a panic here fails the criterion.
        let ems = c.index.ems(&c.pattern);
        check_ems_shape(&c.index, &sa, &ems).map_err(|e| format!("instance {k}: {e}"))?;
    }
    Ok(format!(
        "{} instances in {:.2?}",
        corpus.len(),
        start.elapsed()
    ))
}

fn predicate_level(corpus: &[Case]) -> Outcome {
    let mut checked = 0;
    for (k, c) in corpus.iter().enumerate() {
        let text = c.index.symbols();
        let p = &c.pattern;
        let ems = c.index.ems(p);
        for (i, e) in ems.iter().enumerate().filter(|(_, e)| e.len > 0) {
            let once = count_in_text(text, &p[i..i + e.len]) == 1;
            ensure!(
                (e.twice < e.len) == once,
                "instance {k}, i = {i}: uniqueness predicate"
            );
            let left_maximal = i == 0 || count_in_text(text, &p[i - 1..i + e.len]) == 0;
            let candidate = i == 0 || ems[i - 1].len <= e.len;
            ensure!(
                candidate == left_maximal,
                "instance {k}, i = {i}: maximality predicate"
            );
            checked += 1;
        }
    }
    ensure!(corpus.len() >= 100, "only {} instances", corpus.len());
    Ok(format!(
        "{checked} positions over {} instances",
        corpus.len()
    ))
}

fn serialization(corpus: &[Case]) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut fixtures: Vec<(RIndex, Vec<Symbol>)> = vec![{
        let idx = example_index();
        let p = encode_pattern(EXAMPLE_P, idx.alphabet()).unwrap();
        (idx, p)
    }];
    fixtures.extend(
        corpus
            .iter()
            .take(100)
            .map(|c| (c.index.clone(), c.pattern.clone())),
    );
    for (k, (idx, p)) in fixtures.iter().enumerate() {
        let path = dir.path().join(format!("f{k}.idx"));
        idx.save(&path).map_err(|e| e.to_string())?;
        let loaded = RIndex::load(&path).map_err(|e| format!("fixture {k}: {e}"))?;
        let before = render_report(idx, "q", &retrieve_mums(&idx.ems(p)), 1);
        let after = render_report(&loaded, "q", &retrieve_mums(&loaded.ems(p)), 1);
        ensure!(before == after, "fixture {k}: reports differ");
        ensure!(
            loaded.serialize() == idx.serialize(),
            "fixture {k}: re-serialization differs"
        );
    }

    let bytes = fixtures[0].0.serialize();
    let mut flipped = bytes.clone();
    flipped[bytes.len() / 2] ^= 0x10;
    ensure!(
        matches!(
            RIndex::deserialize(&flipped),
            Err(LoadError::ChecksumMismatch { .. })
        ),
        "flipped bit not reported as checksum mismatch"
    );
    for cut in [0, 2, 10, 27, 28, bytes.len() / 2, bytes.len() - 1] {
        ensure!(
            matches!(
                RIndex::deserialize(&bytes[..cut]),
                Err(LoadError::Truncated { .. })
            ),
            "cut at {cut} not reported as truncated"
        );
    }
    let mut magic = bytes.clone();
    magic[0] = b'X';
    ensure!(
        matches!(RIndex::deserialize(&magic), Err(LoadError::BadMagic)),
        "bad magic"
    );
    let mut version = bytes.clone();
    version[4] = 2;
    ensure!(
        matches!(
            RIndex::deserialize(&version),
            Err(LoadError::UnsupportedVersion { found: 2, .. })
        ),
        "wrong version"
    );
    let missing = RIndex::load(dir.path().join("absent.idx"));
    ensure!(matches!(missing, Err(LoadError::Io(_))), "missing file");
    Ok(format!(
        "{} fixtures round-trip; corruption, truncation, magic and version errors",
        fixtures.len()
    ))
}

fn mutated_copy<R: Rng>(rng: &mut R, base: &[u8], rate: f64) -> Vec<u8> {
    let mut s = base.to_vec();
    let edits = ((base.len() as f64) * rate).round() as usize;
    for _ in 0..edits {
        let j = rng.gen_range(0..s.len());
        let alt: Vec<u8> = b"ACGT".iter().copied().filter(|&b| b != s[j]).collect();
        s[j] = alt[rng.gen_range(0..alt.len())];
    }
    s
}

fn repetitiveness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    let base: Vec<u8> = (0..10_000).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
    let copies: Vec<Vec<u8>> = (0..16)
        .map(|_| mutated_copy(&mut rng, &base, 0.001))
        .collect();
    let mut ratios = Vec::new();
    for k in [1usize, 2, 4, 8, 16] {
        let recs: Vec<_> = copies[..k]
            .iter()
            .enumerate()
            .map(|(j, s)| FastaRecord::new(format!("c{j}"), s.clone()))
            .collect();
        let idx = RIndex::build(encode_collection(&recs, &Alphabet::dna()).unwrap());
        ratios.push(idx.len() as f64 / idx.run_count() as f64);
    }
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    ensure!(
        ratios.windows(2).all(|w| w[0] < w[1]),
        "n/r not increasing: {shown:?}"
    );
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "n/r for k = 1,2,4,8,16: {} in {t:.2?}",
        shown.join(", ")
    ))
}

fn streaming(corpus: &[Case]) -> Outcome {
    let mut symbols = 0;
    for (k, c) in corpus.iter().take(100).enumerate() {
        let pulls = std::cell::Cell::new(0usize);
        let source = c.pattern.iter().rev().map(|&s| {
            pulls.set(pulls.get() + 1);
            s
        });
        let stream = EmsCursor::with_plain_lce(&c.index).stream(source);
        let mut out = Vec::new();
        for e in stream {
            out.push(e);
            ensure!(
                pulls.get() == out.len(),
                "instance {k}: read ahead of output"
            );
        }
        ensure!(
            pulls.get() == c.pattern.len(),
            "instance {k}: {} pulls for {} symbols",
            pulls.get(),
            c.pattern.len()
        );
        out.reverse();
        ensure!(
            out == c.index.ems(&c.pattern),
            "instance {k}: streamed entries differ"
        );
        symbols += c.pattern.len();
    }
    Ok(format!("{symbols} symbols, each pulled once"))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS  {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL  {name}: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let corpus = corpus();
    let results = [
        run("1 golden eMS", golden_ems),
        run("2 golden MUMs", golden_mums),
        run("3 oracle equivalence", || oracle_equivalence(&corpus)),
        run("4 structural invariants", || structural(&corpus)),
        run("5 uniqueness and maximality predicates", || {
            predicate_level(&corpus)
        }),
        run("6 serialization", || serialization(&corpus)),
        run("7 repetitiveness trend", repetitiveness),
        run("8 streaming", || streaming(&corpus)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
