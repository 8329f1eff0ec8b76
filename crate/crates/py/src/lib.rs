//! Python bindings: word calculus, dense tensors and limit-model runs.
//!
//! Build the cdylib (`cargo build -p trilin-py --release`) and import the
//! produced shared library as `trilin_py`; `python/smoke_test.py` in the
//! repository root shows the expected usage.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use trilin::catalog;
use trilin::limits::{six_extensions, theorem21_consistency};
use trilin::signatures::{
    extension_order, flip_compose, word_signature, word_to_axis_permutation, Flip, Signature, Word,
    CANONICAL_WORDS,
};
use trilin::tensor::{io, TrilinearTensor, Vector};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_word(text: &str) -> PyResult<Word> {
    Word::parse(text).map_err(value_err)
}

fn parse_flip(letter: &str) -> PyResult<Flip> {
    let mut chars = letter.chars();
    match (chars.next().and_then(Flip::from_letter), chars.next()) {
        (Some(f), None) => Ok(f),
        _ => Err(PyValueError::new_err(format!(
            "not a flip letter: `{letter}`"
        ))),
    }
}

/// Signature after each letter of the word, starting from `X x Y x Z -> W`.
#[pyfunction]
fn signature_chain(word: &str) -> PyResult<Vec<String>> {
    let word = parse_word(word)?;
    let mut sig = Signature::canonical_trilinear();
    let mut chain = vec![sig.to_string()];
    for letter in word.letters() {
        sig = word_signature(&sig, &Word::new(vec![*letter])).map_err(value_err)?;
        chain.push(sig.to_string());
    }
    Ok(chain)
}

/// `(signatures_match, rearrangements_match)` for two words; both true means
/// the words act identically on every tensor.
#[pyfunction]
fn word_check(word_a: &str, word_b: &str) -> PyResult<(bool, bool)> {
    let wa = parse_word(word_a)?;
    let wb = parse_word(word_b)?;
    let base = Signature::canonical_trilinear();
    let sa = word_signature(&base, &wa).map_err(value_err)?;
    let sb = word_signature(&base, &wb).map_err(value_err)?;
    let pa = word_to_axis_permutation(&wa);
    let pb = word_to_axis_permutation(&wb);
    Ok((sa == sb, pa.same_rearrangement(&pb)))
}

/// Iterated-limit order of a canonical extension word, e.g. `"γαβ"`.
#[pyfunction]
fn extension_order_of(word: &str) -> PyResult<String> {
    let w = parse_word(word)?;
    extension_order(&w)
        .map(|o| o.to_string())
        .map_err(value_err)
}

/// Composition of two flips, `"identity"` when they cancel.
#[pyfunction]
fn compose_flips(flip_a: &str, flip_b: &str) -> PyResult<String> {
    let a = parse_flip(flip_a)?;
    let b = parse_flip(flip_b)?;
    Ok(match flip_compose(a, b) {
        Some(f) => f.to_string(),
        None => "identity".to_string(),
    })
}

#[pyfunction]
fn canonical_words() -> Vec<String> {
    CANONICAL_WORDS.iter().map(|w| w.to_string()).collect()
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::BUILTIN_NAMES
        .iter()
        .map(|n| n.to_string())
        .collect()
}

fn run_example(
    example: &str,
    trunc: usize,
    horizon: usize,
    tol: f64,
) -> PyResult<(trilin::limits::ExtensionReport, Option<bool>)> {
    let spec = catalog::builtin(example)
        .ok_or_else(|| PyValueError::new_err(format!("unknown example `{example}`")))?;
    let report = six_extensions(
        &spec.sequence_instance(),
        &spec.canonical_nets(trunc),
        trunc,
        horizon,
        tol,
    )
    .map_err(value_err)?;
    let theorem21 = theorem21_consistency(&report).ok();
    Ok((report, theorem21))
}

/// Structured extension report of a catalog example.
#[pyfunction]
#[pyo3(signature = (example, trunc=50, horizon=10, tol=1e-9))]
fn limits_report(example: &str, trunc: usize, horizon: usize, tol: f64) -> PyResult<String> {
    let (report, theorem21) = run_example(example, trunc, horizon, tol)?;
    Ok(trilin::limits::render_structured(&report, theorem21))
}

/// Classification name of a catalog example on its canonical nets.
#[pyfunction]
#[pyo3(signature = (example, trunc=50, horizon=10, tol=1e-9))]
fn classify_example(example: &str, trunc: usize, horizon: usize, tol: f64) -> PyResult<String> {
    let (report, _) = run_example(example, trunc, horizon, tol)?;
    Ok(report.classification.name().to_string())
}

/// Dense coordinate tensor of a tri-linear map.
#[pyclass(name = "Tensor", from_py_object)]
#[derive(Clone)]
struct PyTensor {
    inner: TrilinearTensor,
}

#[pymethods]
impl PyTensor {
    /// Entries are flat row-major, last index fastest. `sig` defaults to
    /// `X x Y x Z -> W`.
    #[new]
    #[pyo3(signature = (dims, entries, sig=None))]
    fn new(dims: Vec<usize>, entries: Vec<f64>, sig: Option<&str>) -> PyResult<Self> {
        if dims.len() != 4 {
            return Err(PyValueError::new_err(format!(
                "need 4 dims, got {}",
                dims.len()
            )));
        }
        let sig = match sig {
            Some(text) => Signature::parse(text).map_err(value_err)?,
            None => Signature::canonical_trilinear(),
        };
        let inner = TrilinearTensor::new([dims[0], dims[1], dims[2], dims[3]], entries, sig)
            .map_err(value_err)?;
        Ok(PyTensor { inner })
    }

    /// Finite-dimensional instance of a catalog example at size `n`.
    #[staticmethod]
    fn catalog_example(name: &str, n: usize) -> PyResult<Self> {
        let spec = catalog::builtin(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown example `{name}`")))?;
        Ok(PyTensor {
            inner: spec.finite_dim_instance(n).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_text(doc: &str) -> PyResult<Self> {
        Ok(PyTensor {
            inner: io::parse_trilinear(doc).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        io::write_trilinear(&self.inner)
    }

    fn dims(&self) -> (usize, usize, usize, usize) {
        let [a, b, c, d] = self.inner.dims();
        (a, b, c, d)
    }

    fn entries(&self) -> Vec<f64> {
        self.inner.entries().to_vec()
    }

    fn sig(&self) -> String {
        self.inner.sig().to_string()
    }

    fn apply_word(&self, word: &str) -> PyResult<Self> {
        let w = parse_word(word)?;
        Ok(PyTensor {
            inner: self.inner.apply_word(&w),
        })
    }

    fn adjoint(&self) -> Self {
        PyTensor {
            inner: self.inner.adjoint(),
        }
    }

    fn flip(&self, letter: &str) -> PyResult<Self> {
        Ok(PyTensor {
            inner: self.inner.flip(parse_flip(letter)?),
        })
    }

    /// Contracts the argument axes against three coordinate vectors.
    fn evaluate(&self, x: Vec<f64>, y: Vec<f64>, z: Vec<f64>) -> PyResult<Vec<f64>> {
        let args = self.inner.sig().args();
        let out = self
            .inner
            .evaluate(
                &Vector::new(x, args[0]),
                &Vector::new(y, args[1]),
                &Vector::new(z, args[2]),
            )
            .map_err(value_err)?;
        Ok(out.coords)
    }

    /// Bitwise entry equality, with signatures compared up to the bidual
    /// identification of the finite model (dual levels mod 2).
    fn equals(&self, other: &PyTensor) -> bool {
        self.inner.entries_equal(&other.inner)
            && self.inner.sig().collapsed() == other.inner.sig().collapsed()
    }

    fn __repr__(&self) -> String {
        format!(
            "Tensor(dims={:?}, sig=\"{}\")",
            self.inner.dims(),
            self.inner.sig()
        )
    }
}

#[pymodule]
fn trilin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(signature_chain, m)?)?;
    m.add_function(wrap_pyfunction!(word_check, m)?)?;
    m.add_function(wrap_pyfunction!(extension_order_of, m)?)?;
    m.add_function(wrap_pyfunction!(compose_flips, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_words, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(limits_report, m)?)?;
    m.add_function(wrap_pyfunction!(classify_example, m)?)?;
    m.add_class::<PyTensor>()?;
    Ok(())
}
