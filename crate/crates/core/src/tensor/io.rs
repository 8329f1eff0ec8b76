//! Text fixtures for tensors.
//!
//! A tensor document is four lines, in this order:
//!
//! ```text
//! arity: 3
//! dims: 2 3 2 2
//! entries: 1 0.5 -0.25 ...
//! sig: X x Y x Z -> W
//! ```
//!
//! Entries are the flat row-major array, last index fastest, 0-based. Floats
//! are written in Rust's shortest round-trip form, so writing and re-parsing
//! reproduces the tensor bit for bit.

use super::{format_floats, BilinearTensor, TensorError, TrilinearTensor};
use crate::signatures::Signature;

/// A parsed tensor document of either arity.
#[derive(Debug, Clone, PartialEq)]
pub enum TensorDoc {
    Bilinear(BilinearTensor),
    Trilinear(TrilinearTensor),
}

pub fn write_trilinear(t: &TrilinearTensor) -> String {
    format!(
        "arity: 3\ndims: {}\nentries: {}\nsig: {}\n",
        t.dims().map(|d| d.to_string()).join(" "),
        format_floats(t.entries()),
        t.sig(),
    )
}

pub fn write_bilinear(m: &BilinearTensor) -> String {
    format!(
        "arity: 2\ndims: {}\nentries: {}\nsig: {}\n",
        m.dims().map(|d| d.to_string()).join(" "),
        format_floats(m.entries()),
        m.sig(),
    )
}

fn field<'a>(
    lines: &mut std::str::Lines<'a>,
    line_no: &mut usize,
    key: &str,
) -> Result<&'a str, TensorError> {
    let line = lines.next().ok_or(TensorError::Parse {
        line: *line_no,
        msg: format!("missing `{key}:` line"),
    })?;
    *line_no += 1;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(':'))
        .map(str::trim)
        .ok_or(TensorError::Parse {
            line: *line_no,
            msg: format!("expected `{key}: ...`, got `{line}`"),
        })
}

fn parse_usizes(text: &str, line: usize) -> Result<Vec<usize>, TensorError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| TensorError::Parse {
                line,
                msg: format!("bad dimension `{tok}`"),
            })
        })
        .collect()
}

fn parse_floats(text: &str, line: usize) -> Result<Vec<f64>, TensorError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>().map_err(|_| TensorError::Parse {
                line,
                msg: format!("bad entry `{tok}`"),
            })
        })
        .collect()
}

pub fn parse(doc: &str) -> Result<TensorDoc, TensorError> {
    let mut lines = doc.lines();
    let mut line_no = 0;
    let arity_text = field(&mut lines, &mut line_no, "arity")?;
    let arity: usize = arity_text.parse().map_err(|_| TensorError::Parse {
        line: line_no,
        msg: format!("bad arity `{arity_text}`"),
    })?;
    if arity != 2 && arity != 3 {
        return Err(TensorError::Parse {
            line: line_no,
            msg: format!("arity must be 2 or 3, got {arity}"),
        });
    }
    let dims = parse_usizes(field(&mut lines, &mut line_no, "dims")?, line_no)?;
    let entries = parse_floats(field(&mut lines, &mut line_no, "entries")?, line_no)?;
    let sig_text = field(&mut lines, &mut line_no, "sig")?;
    let sig = Signature::parse(sig_text).map_err(|e| TensorError::Parse {
        line: line_no,
        msg: e.to_string(),
    })?;
    if dims.len() != arity + 1 {
        return Err(TensorError::Parse {
            line: line_no,
            msg: format!("arity {arity} needs {} dims, got {}", arity + 1, dims.len()),
        });
    }
    match arity {
        2 => Ok(TensorDoc::Bilinear(BilinearTensor::new(
            [dims[0], dims[1], dims[2]],
            entries,
            sig,
        )?)),
        _ => Ok(TensorDoc::Trilinear(TrilinearTensor::new(
            [dims[0], dims[1], dims[2], dims[3]],
            entries,
            sig,
        )?)),
    }
}

pub fn parse_trilinear(doc: &str) -> Result<TrilinearTensor, TensorError> {
    match parse(doc)? {
        TensorDoc::Trilinear(t) => Ok(t),
        TensorDoc::Bilinear(_) => Err(TensorError::Parse {
            line: 1,
            msg: "expected a tri-linear document (arity 3)".into(),
        }),
    }
}

pub fn parse_bilinear(doc: &str) -> Result<BilinearTensor, TensorError> {
    match parse(doc)? {
        TensorDoc::Bilinear(m) => Ok(m),
        TensorDoc::Trilinear(_) => Err(TensorError::Parse {
            line: 1,
            msg: "expected a bilinear document (arity 2)".into(),
        }),
    }
}
