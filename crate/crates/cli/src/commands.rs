//! Command implementations. Each returns the full output text plus a flag
//! for the identity/limit-failure exit path; usage-level problems (bad words,
//! unknown examples, bad parameters) come back as `UsageError`.

use crate::battery::{run_battery, BatteryConfig};
use std::fmt::Write as _;
use trilin::catalog;
use trilin::limits::{
    render_structured, six_extensions, theorem21_consistency, Classification, ExtensionReport,
    LimitError, LimitStatus, LimitValue,
};
use trilin::signatures::{
    extension_order, word_signature, word_to_axis_permutation, Signature, Word,
};

#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Structured,
}

/// Command output plus whether an identity/limit failure occurred (exit 1).
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

fn parse_word(role: &str, text: &str) -> Result<Word, UsageError> {
    Word::parse(text).map_err(|e| UsageError(format!("{role}: {e}")))
}

// ---------------------------------------------------------------------------
// signature
// ---------------------------------------------------------------------------

/// Prints the signature after each letter of the word, then the limit order
/// when the word is one of the six canonical extension words.
pub fn signature_chain(word_text: &str) -> Result<Outcome, UsageError> {
    let word = parse_word("word", word_text)?;
    let base = Signature::canonical_trilinear();
    let mut out = String::new();
    let _ = writeln!(out, "trilin-signature v1");
    let _ = writeln!(out, "word: {word}");
    let _ = writeln!(out, "base: {base}");
    let mut sig = base;
    for (step, letter) in word.letters().iter().enumerate() {
        let partial = Word::new(word.letters()[..=step].to_vec());
        sig = word_signature(&sig, &Word::new(vec![*letter]))
            .map_err(|e| UsageError(format!("letter {} ({letter}): {e}", step + 1)))?;
        let _ = writeln!(out, "step {} {letter}: {sig}", step + 1);
        debug_assert_eq!(
            sig,
            word_signature(&Signature::canonical_trilinear(), &partial).unwrap()
        );
    }
    let _ = writeln!(out, "final: {sig}");
    if let Ok(order) = extension_order(&word) {
        let _ = writeln!(out, "order: {order}");
    }
    Ok(Outcome {
        text: out,
        failed: false,
    })
}

// ---------------------------------------------------------------------------
// word-check
// ---------------------------------------------------------------------------

/// Compares two words: equal signatures and equal axis rearrangements mean
/// the words act identically on every tensor.
pub fn word_check(word_a: &str, word_b: &str) -> Result<Outcome, UsageError> {
    let wa = parse_word("word-a", word_a)?;
    let wb = parse_word("word-b", word_b)?;
    let base = Signature::canonical_trilinear();
    let sig_a = word_signature(&base, &wa).expect("tri-linear base accepts every word");
    let sig_b = word_signature(&base, &wb).expect("tri-linear base accepts every word");
    let perm_a = word_to_axis_permutation(&wa);
    let perm_b = word_to_axis_permutation(&wb);
    let sigs_match = sig_a == sig_b;
    let perms_match = perm_a.same_rearrangement(&perm_b);
    let equal = sigs_match && perms_match;

    let mut out = String::new();
    let _ = writeln!(out, "trilin-word-check v1");
    let _ = writeln!(out, "word-a: {wa}");
    let _ = writeln!(out, "word-b: {wb}");
    let _ = writeln!(out, "signature-a: {sig_a}");
    let _ = writeln!(out, "signature-b: {sig_b}");
    let _ = writeln!(out, "signatures-match: {sigs_match}");
    let _ = writeln!(out, "rearrangement-a: {:?}", perm_a.source);
    let _ = writeln!(out, "rearrangement-b: {:?}", perm_b.source);
    let _ = writeln!(out, "rearrangements-match: {perms_match}");
    let _ = writeln!(
        out,
        "verdict: {}",
        if equal { "equal" } else { "different" }
    );
    Ok(Outcome {
        text: out,
        failed: !equal,
    })
}

// ---------------------------------------------------------------------------
// limits
// ---------------------------------------------------------------------------

pub struct LimitsRun {
    pub report: ExtensionReport,
    pub theorem21: Option<bool>,
}

/// Shared by the CLI command and the acceptance criteria.
pub fn limits_run(example: &str, n: usize, h: usize, tol: f64) -> Result<LimitsRun, UsageError> {
    let spec = catalog::builtin(example).ok_or_else(|| {
        UsageError(format!(
            "unknown example `{example}` (available: {})",
            catalog::BUILTIN_NAMES.join(", ")
        ))
    })?;
    let map = spec.sequence_instance();
    let nets = spec.canonical_nets(n);
    let report = match six_extensions(&map, &nets, n, h, tol) {
        Ok(report) => report,
        Err(e @ (LimitError::Precondition(_) | LimitError::NetTooShort { .. })) => {
            return Err(UsageError(e.to_string()))
        }
        Err(e) => return Err(UsageError(e.to_string())),
    };
    let theorem21 = theorem21_consistency(&report).ok();
    Ok(LimitsRun { report, theorem21 })
}

fn human_value(value: &Option<LimitValue>) -> String {
    match value {
        None => "-".to_string(),
        Some(LimitValue::Scalar(v)) => format!("{v}"),
        Some(LimitValue::PerFunctional(vs)) => {
            let sum = vs.iter().find(|(l, _)| l == "sum").map(|(_, v)| *v);
            let coord_max = vs
                .iter()
                .filter(|(l, _)| l != "sum")
                .map(|(_, v)| v.abs())
                .fold(0.0f64, f64::max);
            match sum {
                Some(s) => format!("sum={s} max|coord|={coord_max}"),
                None => format!("max|coord|={coord_max}"),
            }
        }
    }
}

fn render_human(example: &str, n: usize, h: usize, tol: f64, run: &LimitsRun) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "example {example}  (N={n}, H={h}, tol={tol:e})");
    for o in &run.report.orders {
        let status = match &o.result.status {
            LimitStatus::Stabilized => "stabilized".to_string(),
            LimitStatus::ConvergedWithinTol => "converged-within-tol".to_string(),
            LimitStatus::Failed {
                layer,
                functional,
                fixed,
            } => {
                let fixed_text = fixed
                    .iter()
                    .map(|(net, idx)| format!("{net}={idx}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("FAILED layer {layer} [{functional}] {fixed_text}")
            }
        };
        let _ = writeln!(
            out,
            "  {}  {:<8} {:<22} {}",
            o.order,
            o.word.to_string(),
            status,
            human_value(&o.result.value)
        );
    }
    let _ = write!(out, "classification: {}", run.report.classification.name());
    if let Classification::Irregular {
        witness,
        functional,
        separation,
    } = &run.report.classification
    {
        let func = functional
            .as_deref()
            .map(|f| format!(" on {f}"))
            .unwrap_or_default();
        let _ = write!(
            out,
            "  ({} vs {}{func}, separation {separation})",
            witness.0, witness.1
        );
    }
    out.push('\n');
    match run.theorem21 {
        Some(ok) => {
            let _ = writeln!(
                out,
                "regularity-criterion consistency: {}",
                if ok { "ok" } else { "VIOLATED" }
            );
        }
        None => {
            let _ = writeln!(
                out,
                "regularity-criterion consistency: skipped (failed orders)"
            );
        }
    }
    out
}

/// Runs the six extensions of a catalog example and renders the report.
pub fn run_limits(
    example: &str,
    n: usize,
    h: usize,
    tol: f64,
    format: Format,
) -> Result<Outcome, UsageError> {
    let run = limits_run(example, n, h, tol)?;
    let failed = run
        .report
        .orders
        .iter()
        .any(|o| o.result.status.is_failed());
    let text = match format {
        Format::Human => render_human(example, n, h, tol, &run),
        Format::Structured => {
            let mut out = String::new();
            let _ = writeln!(out, "trilin-limits v1");
            let _ = writeln!(out, "example: {example}");
            let _ = writeln!(out, "trunc: {n}");
            let _ = writeln!(out, "horizon: {h}");
            out.push_str(&render_structured(&run.report, run.theorem21));
            out
        }
    };
    Ok(Outcome { text, failed })
}

// ---------------------------------------------------------------------------
// tensor-test
// ---------------------------------------------------------------------------

pub fn parse_dims(text: &str) -> Result<[usize; 4], UsageError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(UsageError(format!(
            "--dims wants four comma-separated values, got `{text}`"
        )));
    }
    let mut dims = [0usize; 4];
    for (slot, part) in parts.iter().enumerate() {
        dims[slot] = part
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("bad dimension `{part}` in --dims")))?;
        if dims[slot] == 0 || dims[slot] > 16 {
            return Err(UsageError(format!(
                "dimension {} out of range 1..=16 in --dims",
                dims[slot]
            )));
        }
    }
    Ok(dims)
}

/// Runs the identity battery and prints one pass-count line per identity.
pub fn tensor_test(dims: [usize; 4], seed: u64, trials: usize) -> Result<Outcome, UsageError> {
    if trials == 0 {
        return Err(UsageError("--trials must be positive".to_string()));
    }
    let outcomes = run_battery(&BatteryConfig { dims, seed, trials });
    let mut out = String::new();
    let _ = writeln!(out, "trilin-tensor-test v1");
    let _ = writeln!(out, "dims: {} {} {} {}", dims[0], dims[1], dims[2], dims[3]);
    let _ = writeln!(out, "seed: {seed}");
    let _ = writeln!(out, "trials: {trials}");
    let mut all_passed = true;
    for o in &outcomes {
        let _ = writeln!(out, "identity {}: {}/{}", o.name, o.passes, o.trials);
        all_passed &= o.passed();
    }
    let _ = writeln!(out, "result: {}", if all_passed { "pass" } else { "fail" });
    Ok(Outcome {
        text: out,
        failed: !all_passed,
    })
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

/// Runs the full acceptance battery, one pass/fail line per criterion.
pub fn report_all() -> Outcome {
    let results = crate::criteria::run_all();
    let mut out = String::new();
    let _ = writeln!(out, "trilin-report v1");
    let mut passed = 0;
    for r in &results {
        let _ = writeln!(
            out,
            "criterion {:02} {} {}",
            r.id,
            if r.passed { "pass" } else { "FAIL" },
            r.name
        );
        if !r.passed {
            let _ = writeln!(out, "  detail: {}", r.detail);
        }
        if r.passed {
            passed += 1;
        }
    }
    let _ = writeln!(
        out,
        "result: {} ({passed}/{})",
        if passed == results.len() {
            "pass"
        } else {
            "fail"
        },
        results.len()
    );
    Outcome {
        text: out,
        failed: passed != results.len(),
    }
}
