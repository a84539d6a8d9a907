use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use rmum_core::mums::retrieve_mums;
use rmum_core::oracle::{naive_ems, naive_mums};
use rmum_core::rindex::RIndex;
use rmum_core::text::{
    encode_collection, encode_pattern, parse_fasta, Alphabet, FastaRecord, Symbol,
};
use rmum_core::verify::verify_pattern;
use rmum_core::LoadError;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn load_err(e: LoadError) -> PyErr {
    match e {
        LoadError::Io(io) => PyIOError::new_err(io.to_string()),
        other => value_err(other),
    }
}

/// Run-length BWT index over a collection of sequences.
#[pyclass(name = "Index", module = "rmum", frozen)]
struct PyIndex {
    inner: RIndex,
}

impl PyIndex {
    fn pattern(&self, pattern: &str) -> PyResult<Vec<Symbol>> {
        encode_pattern(pattern.as_bytes(), self.inner.alphabet()).map_err(value_err)
    }
}

#[pymethods]
impl PyIndex {
    /// Builds from a list of (name, sequence) pairs.
    #[new]
    #[pyo3(signature = (records, alphabet = "ACGT"))]
    fn new(records: Vec<(String, String)>, alphabet: &str) -> PyResult<Self> {
        let alphabet = Alphabet::new(alphabet.as_bytes()).map_err(value_err)?;
        let records: Vec<_> = records
            .into_iter()
            .map(|(n, s)| FastaRecord::new(n, s))
            .collect();
        let text = encode_collection(&records, &alphabet).map_err(value_err)?;
        Ok(Self {
            inner: RIndex::build(text),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (path, alphabet = "ACGT"))]
    fn from_fasta(path: &str, alphabet: &str) -> PyResult<Self> {
        let bytes = std::fs::read(path).map_err(|e| PyIOError::new_err(e.to_string()))?;
        let alphabet = Alphabet::new(alphabet.as_bytes()).map_err(value_err)?;
        let records = parse_fasta(&bytes).map_err(value_err)?;
        let text = encode_collection(&records, &alphabet).map_err(value_err)?;
        Ok(Self {
            inner: RIndex::build(text),
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: RIndex::load(path).map_err(load_err)?,
        })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        self.inner
            .save(path)
            .map_err(|e| PyIOError::new_err(e.to_string()))
    }

    /// Text length including separators and the terminator.
    #[getter]
    fn n(&self) -> usize {
        self.inner.len()
    }

    /// Number of BWT runs.
    #[getter]
    fn r(&self) -> usize {
        self.inner.run_count()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.text().names().to_vec()
    }

    /// Extended matching statistics as (pos, len, twice) triples.
    fn ems(&self, pattern: &str) -> PyResult<Vec<(usize, usize, usize)>> {
        let p = self.pattern(pattern)?;
        Ok(self
            .inner
            .ems(&p)
            .iter()
            .map(|e| (e.pos, e.len, e.twice))
            .collect())
    }

    /// MUMs as (pattern_pos, text_pos, length), 0-based over the whole text.
    #[pyo3(signature = (pattern, min_len = 1))]
    fn mums(&self, pattern: &str, min_len: usize) -> PyResult<Vec<(usize, usize, usize)>> {
        let p = self.pattern(pattern)?;
        Ok(retrieve_mums(&self.inner.ems(&p))
            .into_iter()
            .filter(|m| m.length >= min_len)
            .map(|m| (m.pattern_pos, m.text_pos, m.length))
            .collect())
    }

    /// Maps a text position to (sequence name, offset), or None on a separator.
    fn locate(&self, text_pos: usize) -> Option<(String, usize)> {
        let (seq, off) = self.inner.locate(text_pos)?;
        Some((self.inner.text().names()[seq].clone(), off))
    }

    /// Brute-force eMS over the indexed text.
    fn naive_ems(&self, pattern: &str) -> PyResult<Vec<(usize, usize, usize)>> {
        let p = self.pattern(pattern)?;
        Ok(naive_ems(self.inner.symbols(), &p)
            .iter()
            .map(|e| (e.pos, e.len, e.twice))
            .collect())
    }

    /// Brute-force MUMs over the indexed text.
    fn naive_mums(&self, pattern: &str) -> PyResult<Vec<(usize, usize, usize)>> {
        let p = self.pattern(pattern)?;
        Ok(naive_mums(self.inner.symbols(), &p)
            .into_iter()
            .map(|m| (m.pattern_pos, m.text_pos, m.length))
            .collect())
    }

    /// Raises ValueError describing the first disagreement with the oracle.
    fn verify(&self, pattern: &str) -> PyResult<()> {
        let p = self.pattern(pattern)?;
        verify_pattern(&self.inner, &p).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Index(n={}, r={}, sequences={})",
            self.inner.len(),
            self.inner.run_count(),
            self.inner.text().sequence_count()
        )
    }
}

#[pymodule]
fn rmum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIndex>()?;
    Ok(())
}
