//! Sequence-space net model: evaluates the six iterated weak*-limit extension
//! formulas on explicit net families and classifies maps as regular,
//! close-to-regular or irregular on the tested nets.
//!
//! Bidual elements never appear as abstract functionals; the engine evaluates
//! exactly the displayed iterated-limit formulas on index-parameterized net
//! families in a truncated sequence space.
//!
//! # Layer horizons
//!
//! An iterated limit is resolved innermost first. The innermost index scans
//! `1..=N`, the middle index `1..=N-H` and the outermost index `1..=N-2H`,
//! so every inner scan out-runs the indices fixed by the outer layers by at
//! least the stabilization horizon `H`. This staggering is what the
//! precondition `N >= 3H` budgets for; without it, outer indices near the
//! truncation edge would poison inner scans that have not yet settled.
//!
//! # Limit detection
//!
//! A scan settles in one of three ways, checked in this order on the last `H`
//! samples:
//!
//! 1. `stabilized` — the window is bitwise constant; the value is that
//!    constant.
//! 2. `cauchy` — the window range is at most `tol`.
//! 3. `trend` — the window moves monotonically with strictly decelerating
//!    steps, the signature of a settling `c/n`-type scan that cannot reach
//!    `tol` at desk-scale truncations.
//!
//! For the last two the reported value is the two-point `1/n` extrapolation
//! through the window endpoints, which is exact for `L - c/n` scans and
//! agnostic for already-tight windows; the window range is recorded as the
//! residual. Anything else fails the layer.

use crate::signatures::{ExtensionOrder, Flip, NetIndex, Word};
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("net for slot {slot} provides {have} vectors, run needs {need}")]
    NetTooShort {
        slot: usize,
        have: usize,
        need: usize,
    },
    #[error("evaluator produced a non-finite value at indices ({a},{b},{c})")]
    NonFiniteValue { a: usize, b: usize, c: usize },
    #[error("report has failed orders; {0}")]
    IncompleteReport(String),
}

// ---------------------------------------------------------------------------
// Net families
// ---------------------------------------------------------------------------

/// How a net family generates its vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum NetKind {
    /// `generator(n) = e_n`.
    UnitVector,
    /// `generator(n) = (1/n) * (e_1 + ... + e_n)`.
    Cesaro,
    /// `generator(n) = v` for every `n`.
    Constant(Vec<f64>),
    /// Explicit rows, `generator(n) = rows[n-1]`.
    CustomTable(Vec<Vec<f64>>),
}

/// An index-parameterized family of vectors standing in for a w*-convergent
/// net. Indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct NetFamily {
    pub kind: NetKind,
    /// Truncation of the ambient sequence space (vector length for the
    /// unit-vector and Cesàro kinds).
    pub truncation: usize,
}

impl NetFamily {
    pub fn unit_vectors(truncation: usize) -> Self {
        NetFamily {
            kind: NetKind::UnitVector,
            truncation,
        }
    }

    pub fn cesaro(truncation: usize) -> Self {
        NetFamily {
            kind: NetKind::Cesaro,
            truncation,
        }
    }

    pub fn constant(v: Vec<f64>) -> Self {
        let truncation = v.len();
        NetFamily {
            kind: NetKind::Constant(v),
            truncation,
        }
    }

    pub fn custom(rows: Vec<Vec<f64>>) -> Self {
        let truncation = rows.first().map(Vec::len).unwrap_or(0);
        NetFamily {
            kind: NetKind::CustomTable(rows),
            truncation,
        }
    }

    /// Number of indices the family is defined for.
    pub fn index_count(&self) -> usize {
        match &self.kind {
            NetKind::UnitVector | NetKind::Cesaro => self.truncation,
            NetKind::Constant(_) => usize::MAX,
            NetKind::CustomTable(rows) => rows.len(),
        }
    }

    /// The vector at 1-based index `n`.
    pub fn vector(&self, n: usize) -> Vec<f64> {
        match &self.kind {
            NetKind::UnitVector => {
                let mut v = vec![0.0; self.truncation];
                v[n - 1] = 1.0;
                v
            }
            NetKind::Cesaro => {
                let mut v = vec![0.0; self.truncation];
                let w = 1.0 / n as f64;
                for slot in v.iter_mut().take(n) {
                    *slot = w;
                }
                v
            }
            NetKind::Constant(v) => v.clone(),
            NetKind::CustomTable(rows) => rows[n - 1].clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Maps on the sequence model
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodomainKind {
    Scalar,
    Sequence,
}

/// A structured tri-linear formula evaluated on truncated sequence vectors.
pub trait SequenceFormula {
    fn codomain(&self) -> CodomainKind;
    /// Length of value vectors at truncation `n` (1 for scalar codomain).
    fn value_dim(&self, n: usize) -> usize;
    fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64>;
}

/// A test functional against which sequence-valued limits are read.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunctional {
    /// The 1-based coordinate functional `v -> v[k]`.
    Coordinate(usize),
    /// The summing functional `v -> Σ v[k]`.
    Sum,
}

impl TestFunctional {
    pub fn label(&self) -> String {
        match self {
            TestFunctional::Coordinate(k) => format!("coord-{k}"),
            TestFunctional::Sum => "sum".to_string(),
        }
    }

    pub fn apply(&self, v: &[f64]) -> f64 {
        match self {
            TestFunctional::Coordinate(k) => v.get(*k - 1).copied().unwrap_or(0.0),
            TestFunctional::Sum => v.iter().sum(),
        }
    }
}

/// The functional family sequence-valued limits are compared on. w*-equality
/// is equality against every functional; a finite family is the falsifiable
/// proxy used here.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionalFamily {
    /// Coordinate functionals `1..=min(N-3H, 2H)` plus the summing
    /// functional. The cap keeps every coordinate spike resolvable at the
    /// outermost layer horizon `N-2H` with `H` samples to spare.
    Default,
    Custom(Vec<TestFunctional>),
}

impl FunctionalFamily {
    pub fn resolve(&self, n: usize, h: usize) -> Vec<TestFunctional> {
        match self {
            FunctionalFamily::Default => {
                let top = n.saturating_sub(3 * h).min(2 * h);
                let mut fam: Vec<TestFunctional> =
                    (1..=top).map(TestFunctional::Coordinate).collect();
                fam.push(TestFunctional::Sum);
                fam
            }
            FunctionalFamily::Custom(f) => f.clone(),
        }
    }
}

/// A tri-linear map on the sequence model: a structured formula, its codomain
/// kind, and (for sequence codomains) the functional family limits are read
/// against.
#[derive(Clone)]
pub struct SequenceModelMap {
    formula: Arc<dyn SequenceFormula + Send + Sync>,
    functionals: FunctionalFamily,
}

impl SequenceModelMap {
    pub fn new(formula: Arc<dyn SequenceFormula + Send + Sync>) -> Self {
        SequenceModelMap {
            formula,
            functionals: FunctionalFamily::Default,
        }
    }

    pub fn with_functionals(mut self, family: FunctionalFamily) -> Self {
        self.functionals = family;
        self
    }

    pub fn codomain(&self) -> CodomainKind {
        self.formula.codomain()
    }

    pub fn formula(&self) -> &Arc<dyn SequenceFormula + Send + Sync> {
        &self.formula
    }

    pub fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        self.formula.eval(x, y, z)
    }

    /// The map with its argument slots rearranged by `flip`, sharing the
    /// underlying formula.
    pub fn flipped(&self, flip: Flip) -> SequenceModelMap {
        SequenceModelMap {
            formula: Arc::new(FlippedFormula {
                inner: Arc::clone(&self.formula),
                flip,
            }),
            functionals: self.functionals.clone(),
        }
    }
}

struct FlippedFormula {
    inner: Arc<dyn SequenceFormula + Send + Sync>,
    flip: Flip,
}

impl SequenceFormula for FlippedFormula {
    fn codomain(&self) -> CodomainKind {
        self.inner.codomain()
    }

    fn value_dim(&self, n: usize) -> usize {
        self.inner.value_dim(n)
    }

    fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let src = self.flip.arg_source();
        let mut inv = [0usize; 3];
        for (k, s) in src.into_iter().enumerate() {
            inv[s] = k;
        }
        let args = [x, y, z];
        self.inner.eval(args[inv[0]], args[inv[1]], args[inv[2]])
    }
}

// ---------------------------------------------------------------------------
// Limit detection
// ---------------------------------------------------------------------------

/// Which settling criterion fired for a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DetectionKind {
    Stabilized,
    Cauchy,
    Trend,
}

impl DetectionKind {
    pub fn name(self) -> &'static str {
        match self {
            DetectionKind::Stabilized => "stabilized",
            DetectionKind::Cauchy => "cauchy",
            DetectionKind::Trend => "trend",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOutcome {
    pub value: f64,
    pub kind: DetectionKind,
    /// 1-based index from which the scan is settled.
    pub index: usize,
    /// Range of the final window (0 for stabilized scans).
    pub residual: f64,
}

/// Detects the limit of a single scan. `values[p]` is the sample at index
/// `p+1`; `values` must hold at least `h >= 2` samples.
pub fn scan_limit(values: &[f64], h: usize, tol: f64) -> Option<ScanOutcome> {
    let m = values.len();
    if h < 2 || m < h {
        return None;
    }
    let window = &values[m - h..];
    let last = window[h - 1];

    if window.iter().all(|v| *v == last) {
        let mut first = m - h;
        while first > 0 && values[first - 1] == last {
            first -= 1;
        }
        return Some(ScanOutcome {
            value: last,
            kind: DetectionKind::Stabilized,
            index: first + 1,
            residual: 0.0,
        });
    }

    let lo = window.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = window.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    // Two-point 1/n extrapolation through the window endpoints.
    let n1 = (m - h + 1) as f64;
    let n2 = m as f64;
    let extrapolated = (n2 * last - n1 * window[0]) / (n2 - n1);

    if range <= tol {
        let mut first = m - h;
        loop {
            if first == 0 {
                break;
            }
            let tail = &values[first - 1..];
            let tlo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
            let thi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if thi - tlo > tol {
                break;
            }
            first -= 1;
        }
        return Some(ScanOutcome {
            value: extrapolated,
            kind: DetectionKind::Cauchy,
            index: first + 1,
            residual: range,
        });
    }

    let diffs: Vec<f64> = window.windows(2).map(|w| w[1] - w[0]).collect();
    let positive = diffs.iter().all(|d| *d > 0.0);
    let negative = diffs.iter().all(|d| *d < 0.0);
    let decelerating = diffs.windows(2).all(|d| d[1].abs() <= d[0].abs());
    let strictly_smaller = diffs[diffs.len() - 1].abs() < diffs[0].abs();
    if (positive || negative) && decelerating && strictly_smaller {
        return Some(ScanOutcome {
            value: extrapolated,
            kind: DetectionKind::Trend,
            index: m - h + 1,
            residual: range,
        });
    }

    None
}

// ---------------------------------------------------------------------------
// Iterated limits
// ---------------------------------------------------------------------------

/// Per-layer aggregate over every scan of that layer (and every functional):
/// the worst detection criterion, the largest stabilization index, the
/// largest residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerOutcome {
    pub kind: DetectionKind,
    pub stabilization_index: usize,
    pub residual: f64,
}

impl LayerOutcome {
    fn absorb(slot: &mut Option<LayerOutcome>, out: &ScanOutcome) {
        match slot {
            None => {
                *slot = Some(LayerOutcome {
                    kind: out.kind,
                    stabilization_index: out.index,
                    residual: out.residual,
                })
            }
            Some(agg) => {
                agg.kind = agg.kind.max(out.kind);
                agg.stabilization_index = agg.stabilization_index.max(out.index);
                agg.residual = agg.residual.max(out.residual);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LimitStatus {
    Stabilized,
    ConvergedWithinTol,
    Failed {
        /// 1 = innermost, 2 = middle, 3 = outermost.
        layer: usize,
        functional: String,
        fixed: Vec<(NetIndex, usize)>,
    },
}

impl LimitStatus {
    pub fn is_failed(&self) -> bool {
        matches!(self, LimitStatus::Failed { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LimitValue {
    Scalar(f64),
    PerFunctional(Vec<(String, f64)>),
}

impl LimitValue {
    /// Labeled view: scalar values carry the single label `value`.
    pub fn labeled(&self) -> Vec<(String, f64)> {
        match self {
            LimitValue::Scalar(v) => vec![("value".to_string(), *v)],
            LimitValue::PerFunctional(vs) => vs.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitResult {
    pub value: Option<LimitValue>,
    pub status: LimitStatus,
    /// Aggregates per layer, innermost first; `None` for layers never reached.
    pub layers: [Option<LayerOutcome>; 3],
}

fn check_params(n: usize, h: usize, tol: f64) -> Result<(), LimitError> {
    if h < 2 {
        return Err(LimitError::Precondition(format!(
            "horizon must be at least 2, got {h}"
        )));
    }
    if n < 3 * h {
        return Err(LimitError::Precondition(format!(
            "truncation must be at least three horizons (N >= 3H), got N={n}, H={h}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(LimitError::Precondition(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn check_order(order: ExtensionOrder) -> Result<(), LimitError> {
    if ExtensionOrder::ALL.contains(&order) {
        Ok(())
    } else {
        Err(LimitError::Precondition(format!(
            "{order} is not a permutation of αβγ"
        )))
    }
}

/// Per-functional scalar tables over the full index cube `1..=n` per axis.
struct CompiledMap {
    labels: Vec<String>,
    tables: Vec<Vec<f64>>,
    n: usize,
}

impl CompiledMap {
    #[inline]
    fn get(&self, table: usize, a: usize, b: usize, c: usize) -> f64 {
        self.tables[table][((a - 1) * self.n + (b - 1)) * self.n + (c - 1)]
    }
}

#[allow(clippy::needless_range_loop)]
fn compile(
    map: &SequenceModelMap,
    nets: &[NetFamily; 3],
    n: usize,
    h: usize,
) -> Result<CompiledMap, LimitError> {
    for (slot, net) in nets.iter().enumerate() {
        if net.index_count() < n {
            return Err(LimitError::NetTooShort {
                slot: slot + 1,
                have: net.index_count(),
                need: n,
            });
        }
    }
    let xs: Vec<Vec<f64>> = (1..=n).map(|k| nets[0].vector(k)).collect();
    let ys: Vec<Vec<f64>> = (1..=n).map(|k| nets[1].vector(k)).collect();
    let zs: Vec<Vec<f64>> = (1..=n).map(|k| nets[2].vector(k)).collect();

    let functionals = match map.codomain() {
        CodomainKind::Scalar => None,
        CodomainKind::Sequence => Some(map.functionals.resolve(n, h)),
    };
    let labels: Vec<String> = match &functionals {
        None => vec!["value".to_string()],
        Some(fs) => fs.iter().map(TestFunctional::label).collect(),
    };

    let mut tables = vec![vec![0.0; n * n * n]; labels.len()];
    let mut pos = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = map.eval(&xs[a], &ys[b], &zs[c]);
                match &functionals {
                    None => {
                        let val = v[0];
                        if !val.is_finite() {
                            return Err(LimitError::NonFiniteValue {
                                a: a + 1,
                                b: b + 1,
                                c: c + 1,
                            });
                        }
                        tables[0][pos] = val;
                    }
                    Some(fs) => {
                        for (t, f) in fs.iter().enumerate() {
                            let val = f.apply(&v);
                            if !val.is_finite() {
                                return Err(LimitError::NonFiniteValue {
                                    a: a + 1,
                                    b: b + 1,
                                    c: c + 1,
                                });
                            }
                            tables[t][pos] = val;
                        }
                    }
                }
                pos += 1;
            }
        }
    }
    Ok(CompiledMap { labels, tables, n })
}

enum ScanTableOutcome {
    Settled {
        value: f64,
    },
    Failed {
        layer: usize,
        fixed: Vec<(NetIndex, usize)>,
    },
}

/// Resolves one order for one functional table, absorbing layer aggregates.
fn scan_table(
    compiled: &CompiledMap,
    table: usize,
    order: ExtensionOrder,
    n: usize,
    h: usize,
    tol: f64,
    layers: &mut [Option<LayerOutcome>; 3],
) -> ScanTableOutcome {
    let outer_net = order.outermost();
    let mid_net = order.middle();
    let inner_net = order.innermost();
    let outer_top = n - 2 * h;
    let mid_top = n - h;

    let abc = |o: usize, m: usize, i: usize| -> (usize, usize, usize) {
        let mut idx = [0usize; 3];
        idx[outer_net.slot()] = o;
        idx[mid_net.slot()] = m;
        idx[inner_net.slot()] = i;
        (idx[0], idx[1], idx[2])
    };

    let mut outer_vals = Vec::with_capacity(outer_top);
    for o in 1..=outer_top {
        let mut mid_vals = Vec::with_capacity(mid_top);
        for m in 1..=mid_top {
            let mut inner_vals = Vec::with_capacity(n);
            for i in 1..=n {
                let (a, b, c) = abc(o, m, i);
                inner_vals.push(compiled.get(table, a, b, c));
            }
            match scan_limit(&inner_vals, h, tol) {
                Some(out) => {
                    LayerOutcome::absorb(&mut layers[0], &out);
                    mid_vals.push(out.value);
                }
                None => {
                    return ScanTableOutcome::Failed {
                        layer: 1,
                        fixed: vec![(outer_net, o), (mid_net, m)],
                    }
                }
            }
        }
        match scan_limit(&mid_vals, h, tol) {
            Some(out) => {
                LayerOutcome::absorb(&mut layers[1], &out);
                outer_vals.push(out.value);
            }
            None => {
                return ScanTableOutcome::Failed {
                    layer: 2,
                    fixed: vec![(outer_net, o)],
                }
            }
        }
    }
    match scan_limit(&outer_vals, h, tol) {
        Some(out) => {
            LayerOutcome::absorb(&mut layers[2], &out);
            ScanTableOutcome::Settled { value: out.value }
        }
        None => ScanTableOutcome::Failed {
            layer: 3,
            fixed: vec![],
        },
    }
}

fn limit_result_for_order(
    compiled: &CompiledMap,
    scalar: bool,
    order: ExtensionOrder,
    n: usize,
    h: usize,
    tol: f64,
) -> LimitResult {
    let mut layers: [Option<LayerOutcome>; 3] = [None, None, None];
    let mut values = Vec::with_capacity(compiled.labels.len());
    for (t, label) in compiled.labels.iter().enumerate() {
        match scan_table(compiled, t, order, n, h, tol, &mut layers) {
            ScanTableOutcome::Settled { value } => values.push((label.clone(), value)),
            ScanTableOutcome::Failed { layer, fixed } => {
                return LimitResult {
                    value: None,
                    status: LimitStatus::Failed {
                        layer,
                        functional: label.clone(),
                        fixed,
                    },
                    layers,
                };
            }
        }
    }
    let all_stable = layers.iter().all(|l| {
        matches!(
            l,
            Some(LayerOutcome {
                kind: DetectionKind::Stabilized,
                ..
            })
        )
    });
    let status = if all_stable {
        LimitStatus::Stabilized
    } else {
        LimitStatus::ConvergedWithinTol
    };
    let value = if scalar {
        LimitValue::Scalar(values[0].1)
    } else {
        LimitValue::PerFunctional(values)
    };
    LimitResult {
        value: Some(value),
        status,
        layers,
    }
}

/// Evaluates one iterated-limit order: innermost limit first, each layer
/// settled by the detection rules described at module level.
pub fn iterated_limit(
    map: &SequenceModelMap,
    nets: &[NetFamily; 3],
    order: ExtensionOrder,
    n: usize,
    h: usize,
    tol: f64,
) -> Result<LimitResult, LimitError> {
    check_params(n, h, tol)?;
    check_order(order)?;
    let compiled = compile(map, nets, n, h)?;
    let scalar = map.codomain() == CodomainKind::Scalar;
    Ok(limit_result_for_order(&compiled, scalar, order, n, h, tol))
}

// ---------------------------------------------------------------------------
// The six extensions and classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct OrderReport {
    pub order: ExtensionOrder,
    pub word: Word,
    pub result: LimitResult,
}

/// Evidence-grade classification of the six extension values. Net families
/// witness rather than prove, hence the `-evidence` suffixes.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    AronBernerRegularEvidence,
    CloseToRegularEvidence,
    Irregular {
        witness: (ExtensionOrder, ExtensionOrder),
        functional: Option<String>,
        separation: f64,
    },
    /// Limit failures left too little data to apply any rule.
    Indeterminate,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::AronBernerRegularEvidence => "aron-berner-regular-evidence",
            Classification::CloseToRegularEvidence => "close-to-regular-evidence",
            Classification::Irregular { .. } => "irregular",
            Classification::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionReport {
    /// All six orders in canonical word order.
    pub orders: Vec<OrderReport>,
    pub classification: Classification,
    pub tol: f64,
    pub codomain: CodomainKind,
}

/// Largest per-functional separation between two order values, with the
/// functional that realizes it.
fn separation(a: &LimitValue, b: &LimitValue) -> (f64, Option<String>) {
    match (a, b) {
        (LimitValue::Scalar(x), LimitValue::Scalar(y)) => ((x - y).abs(), None),
        _ => {
            let va = a.labeled();
            let vb = b.labeled();
            let mut best = (0.0, None);
            for ((label, x), (_, y)) in va.iter().zip(&vb) {
                let d = (x - y).abs();
                if d > best.0 {
                    best = (d, Some(label.clone()));
                }
            }
            best
        }
    }
}

fn triple_equal(values: &[Option<&LimitValue>], idx: [usize; 3], tol: f64) -> Option<bool> {
    let [a, b, c] = idx;
    match (values[a], values[b], values[c]) {
        (Some(x), Some(y), Some(z)) => Some(
            separation(x, y).0 <= tol && separation(y, z).0 <= tol && separation(x, z).0 <= tol,
        ),
        _ => None,
    }
}

/// Pure function of the six limit results.
///
/// All six equal gives regular evidence. Otherwise the `t****s`/`s****t`
/// pair counts as close-to-regular evidence only while neither three-order
/// group of the regularity criteria is spuriously equal on data that
/// globally disagrees; a spuriously equal group marks the nets as too weak
/// to certify the pair, and the report falls back to the irregular witness.
pub fn classify(orders: &[OrderReport], tol: f64) -> Classification {
    let values: Vec<Option<&LimitValue>> = orders.iter().map(|o| o.result.value.as_ref()).collect();
    // Canonical positions: 0 = αβγ, 1 = βαγ, 2 = αγβ, 3 = γβα, 4 = γαβ, 5 = βγα.
    let all_present = values.iter().all(Option::is_some);
    let six_equal = all_present && {
        let mut ok = true;
        for p in 0..6 {
            for q in (p + 1)..6 {
                ok &= separation(values[p].unwrap(), values[q].unwrap()).0 <= tol;
            }
        }
        ok
    };
    if six_equal {
        return Classification::AronBernerRegularEvidence;
    }

    let first_triple = triple_equal(&values, [4, 0, 5], tol);
    let second_triple = triple_equal(&values, [1, 2, 3], tol);
    let ts_pair = match (values[4], values[5]) {
        (Some(a), Some(b)) => Some(separation(a, b).0 <= tol),
        _ => None,
    };

    if ts_pair == Some(true) && first_triple != Some(true) && second_triple != Some(true) {
        return Classification::CloseToRegularEvidence;
    }

    let mut witness: Option<(usize, usize, f64, Option<String>)> = None;
    for p in 0..6 {
        for q in (p + 1)..6 {
            if let (Some(a), Some(b)) = (values[p], values[q]) {
                let (sep, func) = separation(a, b);
                if sep > tol && witness.as_ref().map(|w| sep > w.2).unwrap_or(true) {
                    witness = Some((p, q, sep, func));
                }
            }
        }
    }
    match witness {
        Some((p, q, sep, func)) => Classification::Irregular {
            witness: (orders[p].order, orders[q].order),
            functional: func,
            separation: sep,
        },
        None => Classification::Indeterminate,
    }
}

/// Runs all six iterated-limit orders and classifies the outcome.
pub fn six_extensions(
    map: &SequenceModelMap,
    nets: &[NetFamily; 3],
    n: usize,
    h: usize,
    tol: f64,
) -> Result<ExtensionReport, LimitError> {
    check_params(n, h, tol)?;
    let compiled = compile(map, nets, n, h)?;
    let scalar = map.codomain() == CodomainKind::Scalar;
    let orders: Vec<OrderReport> = ExtensionOrder::ALL
        .into_iter()
        .map(|order| OrderReport {
            order,
            word: order.canonical_word(),
            result: limit_result_for_order(&compiled, scalar, order, n, h, tol),
        })
        .collect();
    let classification = classify(&orders, tol);
    Ok(ExtensionReport {
        orders,
        classification,
        tol,
        codomain: map.codomain(),
    })
}

/// Checks the combined two-part regularity criterion on the report data:
/// all six values agree exactly when both three-order groups
/// `{γαβ, αβγ, βγα}` and `{βαγ, αγβ, γβα}` agree. A `false` return flags the
/// numerics, not the criterion.
pub fn theorem21_consistency(report: &ExtensionReport) -> Result<bool, LimitError> {
    let values: Vec<Option<&LimitValue>> = report
        .orders
        .iter()
        .map(|o| o.result.value.as_ref())
        .collect();
    if values.iter().any(Option::is_none) {
        let failed: Vec<String> = report
            .orders
            .iter()
            .filter(|o| o.result.value.is_none())
            .map(|o| o.order.to_string())
            .collect();
        return Err(LimitError::IncompleteReport(format!(
            "orders without values: {}",
            failed.join(", ")
        )));
    }
    let tol = report.tol;
    let mut six_equal = true;
    for p in 0..6 {
        for q in (p + 1)..6 {
            six_equal &= separation(values[p].unwrap(), values[q].unwrap()).0 <= tol;
        }
    }
    let t1 = triple_equal(&values, [4, 0, 5], tol).unwrap();
    let t2 = triple_equal(&values, [1, 2, 3], tol).unwrap();
    Ok(six_equal == (t1 && t2))
}

/// Convenience form of [`theorem21_consistency`] that runs the six
/// extensions first.
pub fn theorem21_consistency_of(
    map: &SequenceModelMap,
    nets: &[NetFamily; 3],
    n: usize,
    h: usize,
    tol: f64,
) -> Result<bool, LimitError> {
    theorem21_consistency(&six_extensions(map, nets, n, h, tol)?)
}

/// Close-to-regularity of a flip of the map: forms the flipped evaluator
/// (permuting the net roles along with the slots) and tests its
/// `t****s`/`s****t` order pair.
#[derive(Debug, Clone)]
pub struct FlipCloseToRegular {
    pub flip: Flip,
    pub holds: bool,
    /// `(γ,α,β)` of the flipped map.
    pub left: LimitResult,
    /// `(β,γ,α)` of the flipped map.
    pub right: LimitResult,
    /// The equivalent order pair of the original map.
    pub original_pair: (ExtensionOrder, ExtensionOrder),
    pub separation: f64,
}

pub fn close_to_regular_of_flip(
    map: &SequenceModelMap,
    flip: Flip,
    nets: &[NetFamily; 3],
    n: usize,
    h: usize,
    tol: f64,
) -> Result<FlipCloseToRegular, LimitError> {
    check_params(n, h, tol)?;
    let src = flip.arg_source();
    let flipped_nets = [
        nets[src[0]].clone(),
        nets[src[1]].clone(),
        nets[src[2]].clone(),
    ];
    let flipped = map.flipped(flip);
    let compiled = compile(&flipped, &flipped_nets, n, h)?;
    let scalar = flipped.codomain() == CodomainKind::Scalar;

    let ts = ExtensionOrder::ALL[4];
    let st = ExtensionOrder::ALL[5];
    let left = limit_result_for_order(&compiled, scalar, ts, n, h, tol);
    let right = limit_result_for_order(&compiled, scalar, st, n, h, tol);

    let slot_net = |slot: usize| match slot {
        0 => NetIndex::Alpha,
        1 => NetIndex::Beta,
        _ => NetIndex::Gamma,
    };
    let translate = |o: ExtensionOrder| {
        ExtensionOrder([
            slot_net(src[o.0[0].slot()]),
            slot_net(src[o.0[1].slot()]),
            slot_net(src[o.0[2].slot()]),
        ])
    };

    let (holds, sep) = match (&left.value, &right.value) {
        (Some(a), Some(b)) => {
            let (sep, _) = separation(a, b);
            (sep <= tol, sep)
        }
        _ => (false, f64::INFINITY),
    };
    Ok(FlipCloseToRegular {
        flip,
        holds,
        left,
        right,
        original_pair: (translate(ts), translate(st)),
        separation: sep,
    })
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

fn render_layers(out: &mut String, layers: &[Option<LayerOutcome>; 3]) {
    let names = ["inner", "middle", "outer"];
    let _ = write!(out, "  layers:");
    for (name, layer) in names.iter().zip(layers) {
        match layer {
            Some(l) => {
                let _ = write!(
                    out,
                    " {name}={}@{} residual={}",
                    l.kind.name(),
                    l.stabilization_index,
                    l.residual
                );
            }
            None => {
                let _ = write!(out, " {name}=unreached");
            }
        }
    }
    out.push('\n');
}

/// Renders the structured report document: one deterministic line layout,
/// orders in canonical word order, functionals in family order.
pub fn render_structured(report: &ExtensionReport, theorem21: Option<bool>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "extension-report v1");
    let _ = writeln!(out, "tol: {:e}", report.tol);
    let _ = writeln!(
        out,
        "codomain: {}",
        match report.codomain {
            CodomainKind::Scalar => "scalar",
            CodomainKind::Sequence => "sequence",
        }
    );
    for o in &report.orders {
        let _ = writeln!(out, "order {} ({})", o.order, o.word);
        match &o.result.status {
            LimitStatus::Stabilized => {
                let _ = writeln!(out, "  status: stabilized");
            }
            LimitStatus::ConvergedWithinTol => {
                let _ = writeln!(out, "  status: converged-within-tol");
            }
            LimitStatus::Failed {
                layer,
                functional,
                fixed,
            } => {
                let fixed_text = if fixed.is_empty() {
                    "none".to_string()
                } else {
                    fixed
                        .iter()
                        .map(|(net, idx)| format!("{net}={idx}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let _ = writeln!(
                    out,
                    "  status: failed layer={layer} functional={functional} fixed={fixed_text}"
                );
            }
        }
        render_layers(&mut out, &o.result.layers);
        match &o.result.value {
            None => {
                let _ = writeln!(out, "  value: none");
            }
            Some(LimitValue::Scalar(v)) => {
                let _ = writeln!(out, "  value: {v}");
            }
            Some(LimitValue::PerFunctional(vs)) => {
                for (label, v) in vs {
                    let _ = writeln!(out, "  value {label}: {v}");
                }
            }
        }
    }
    let _ = writeln!(out, "classification: {}", report.classification.name());
    if let Classification::Irregular {
        witness,
        functional,
        separation,
    } = &report.classification
    {
        let _ = writeln!(out, "witness: {} vs {}", witness.0, witness.1);
        if let Some(f) = functional {
            let _ = writeln!(out, "witness-functional: {f}");
        }
        let _ = writeln!(out, "separation: {separation}");
    }
    if let Some(ok) = theorem21 {
        let _ = writeln!(out, "theorem21-consistent: {ok}");
    }
    out
}
