//! Built-in example maps, each instantiable as a finite-dimensional tensor
//! and as a sequence-model map, with canonical net families for limit runs.
//!
//! The triangular family is the irregularity witness: on unit-vector nets the
//! pattern `i<=j<=k` is the indicator `[a<=b<=c]`, whose six iterated limits
//! are exactly computable and separate all six extension orders. The
//! rank-one maps are regular for any choice of convergent functionals; the
//! reflexive-middle map (one-dimensional middle space) is close-to-regular
//! but not regular; the composed examples probe the bilinear-factorization
//! criterion from both sides.

use crate::limits::{CodomainKind, NetFamily, SequenceFormula, SequenceModelMap};
use crate::signatures::{Base, Signature, Space};
use crate::tensor::{compose_bilinear, BilinearTensor, TensorError, TrilinearTensor};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("sequence entry {position} is not finite")]
    NonFiniteSequence { position: usize },
    #[error("incompatible composition: {0}")]
    IncompatibleComposition(String),
}

// ---------------------------------------------------------------------------
// Scalar sequences
// ---------------------------------------------------------------------------

/// A named scalar sequence used as a functional (`phi`, `psi`, `chi`).
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarSeq {
    /// `1, 1, 1, ...`
    Ones,
    /// `1 - 1/n`, converging to 1 without ever stabilizing.
    OneMinusInverse,
    /// Explicit entries, zero beyond the table.
    Table(Vec<f64>),
}

impl ScalarSeq {
    pub fn value(&self, n: usize) -> f64 {
        match self {
            ScalarSeq::Ones => 1.0,
            ScalarSeq::OneMinusInverse => 1.0 - 1.0 / n as f64,
            ScalarSeq::Table(v) => v.get(n - 1).copied().unwrap_or(0.0),
        }
    }

    fn validate(&self) -> Result<(), CatalogError> {
        if let ScalarSeq::Table(v) = self {
            if let Some(position) = v.iter().position(|x| !x.is_finite()) {
                return Err(CatalogError::NonFiniteSequence { position });
            }
        }
        Ok(())
    }

    fn dot(&self, v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (t, x) in v.iter().enumerate() {
            acc += self.value(t + 1) * x;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Patterns and constructions
// ---------------------------------------------------------------------------

/// The six orderings of the index letters `i` (first slot), `j` (second),
/// `k` (third); pattern `ijk` sums over `i <= j <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriPattern {
    Ijk,
    Ikj,
    Jik,
    Jki,
    Kij,
    Kji,
}

impl TriPattern {
    pub const ALL: [TriPattern; 6] = [
        TriPattern::Ijk,
        TriPattern::Ikj,
        TriPattern::Jik,
        TriPattern::Jki,
        TriPattern::Kij,
        TriPattern::Kji,
    ];

    /// Slots in chain order: `chain()[0]`'s index is the smallest.
    pub fn chain(self) -> [usize; 3] {
        match self {
            TriPattern::Ijk => [0, 1, 2],
            TriPattern::Ikj => [0, 2, 1],
            TriPattern::Jik => [1, 0, 2],
            TriPattern::Jki => [1, 2, 0],
            TriPattern::Kij => [2, 0, 1],
            TriPattern::Kji => [2, 1, 0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TriPattern::Ijk => "ijk",
            TriPattern::Ikj => "ikj",
            TriPattern::Jik => "jik",
            TriPattern::Jki => "jki",
            TriPattern::Kij => "kij",
            TriPattern::Kji => "kji",
        }
    }

    pub fn parse(name: &str) -> Option<TriPattern> {
        TriPattern::ALL.into_iter().find(|p| p.name() == name)
    }

    fn holds(self, idx: [usize; 3]) -> bool {
        let c = self.chain();
        idx[c[0]] <= idx[c[1]] && idx[c[1]] <= idx[c[2]]
    }
}

/// Bilinear building blocks for composed examples.
#[derive(Debug, Clone, PartialEq)]
pub enum BilinearKind {
    /// `m(x,y) = <phi,x><psi,y>`, scalar codomain.
    RankOnePair { phi: ScalarSeq, psi: ScalarSeq },
    /// `m(x,y) = sum over i<=j of x_i y_j`, scalar codomain.
    TriangularPairs,
    /// Scalar multiplication `g(s,z) = s z`, sequence codomain.
    ScalarMult,
    /// `g(s,z) = s <chi,z>`, scalar codomain.
    ScalarTimesFunctional { chi: ScalarSeq },
}

impl BilinearKind {
    fn scalar_codomain(&self) -> bool {
        !matches!(self, BilinearKind::ScalarMult)
    }

    fn scalar_first_arg(&self) -> bool {
        matches!(
            self,
            BilinearKind::ScalarMult | BilinearKind::ScalarTimesFunctional { .. }
        )
    }

    fn validate(&self) -> Result<(), CatalogError> {
        match self {
            BilinearKind::RankOnePair { phi, psi } => {
                phi.validate()?;
                psi.validate()
            }
            BilinearKind::ScalarTimesFunctional { chi } => chi.validate(),
            _ => Ok(()),
        }
    }

    /// Scalar value of an inner factor (`RankOnePair` or `TriangularPairs`).
    fn eval_inner(&self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            BilinearKind::RankOnePair { phi, psi } => phi.dot(x) * psi.dot(y),
            BilinearKind::TriangularPairs => {
                let mut acc = 0.0;
                let mut pre = 0.0;
                for (j, yv) in y.iter().enumerate() {
                    if j < x.len() {
                        pre += x[j];
                    }
                    acc += yv * pre;
                }
                acc
            }
            _ => unreachable!("outer kinds are never inner factors"),
        }
    }

    /// Tensor instance at size `n`. Inner factors get signature
    /// `X x Y -> S`, outer factors `S x Z -> W`.
    pub fn finite_instance(&self, n: usize) -> Result<BilinearTensor, TensorError> {
        let inner_sig = Signature::bilinear(
            Space::base(Base::X),
            Space::base(Base::Y),
            Space::base(Base::S),
        );
        let outer_sig = Signature::bilinear(
            Space::base(Base::S),
            Space::base(Base::Z),
            Space::base(Base::W),
        );
        match self {
            BilinearKind::RankOnePair { phi, psi } => {
                BilinearTensor::from_fn([n, n, 1], inner_sig, |i, j, _| {
                    phi.value(i + 1) * psi.value(j + 1)
                })
            }
            BilinearKind::TriangularPairs => BilinearTensor::from_fn(
                [n, n, 1],
                inner_sig,
                |i, j, _| if i <= j { 1.0 } else { 0.0 },
            ),
            BilinearKind::ScalarMult => {
                BilinearTensor::from_fn(
                    [1, n, n],
                    outer_sig,
                    |_, k, l| if k == l { 1.0 } else { 0.0 },
                )
            }
            BilinearKind::ScalarTimesFunctional { chi } => {
                BilinearTensor::from_fn([1, n, 1], outer_sig, |_, k, _| chi.value(k + 1))
            }
        }
    }
}

/// How an example map is built.
#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    Triangular(TriPattern),
    RankOne { phi: ScalarSeq, psi: ScalarSeq },
    Composed { g: BilinearKind, m: BilinearKind },
    ReflexiveMiddle,
}

/// A named example map, instantiable in both backends.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleSpec {
    name: String,
    construction: Construction,
}

/// `f(x,y,z)` summed over the pattern's index chain.
pub fn triangular(pattern: TriPattern) -> ExampleSpec {
    ExampleSpec {
        name: format!("triangular-{}", pattern.name()),
        construction: Construction::Triangular(pattern),
    }
}

/// `f(x1,x2,x3) = <phi,x1><psi,x2> x3`.
pub fn rank_one(phi: ScalarSeq, psi: ScalarSeq) -> Result<ExampleSpec, CatalogError> {
    phi.validate()?;
    psi.validate()?;
    Ok(ExampleSpec {
        name: "rank-one".to_string(),
        construction: Construction::RankOne { phi, psi },
    })
}

/// `f(x,y,z) = g(m(x,y), z)` from two bilinear building blocks.
pub fn composed(g: BilinearKind, m: BilinearKind) -> Result<ExampleSpec, CatalogError> {
    g.validate()?;
    m.validate()?;
    if !m.scalar_codomain() {
        return Err(CatalogError::IncompatibleComposition(
            "inner factor must have scalar codomain".to_string(),
        ));
    }
    if !g.scalar_first_arg() {
        return Err(CatalogError::IncompatibleComposition(
            "outer factor must take a scalar first argument".to_string(),
        ));
    }
    Ok(ExampleSpec {
        name: "composed".to_string(),
        construction: Construction::Composed { g, m },
    })
}

/// `f(x,λ,z) = λ sum over i<=k of x_i z_k`, with a one-dimensional middle
/// space (nets on it are constant, the reflexive case).
pub fn reflexive_middle() -> ExampleSpec {
    ExampleSpec {
        name: "reflexive-middle".to_string(),
        construction: Construction::ReflexiveMiddle,
    }
}

impl ExampleSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn codomain(&self) -> CodomainKind {
        match &self.construction {
            Construction::RankOne { .. } => CodomainKind::Sequence,
            Construction::Composed { g, .. } if !g.scalar_codomain() => CodomainKind::Sequence,
            _ => CodomainKind::Scalar,
        }
    }

    /// Dense tensor instance with argument dimensions `n` (middle dimension 1
    /// for the reflexive-middle example, codomain dimension 1 for scalar
    /// codomains).
    pub fn finite_dim_instance(&self, n: usize) -> Result<TrilinearTensor, TensorError> {
        let sig = Signature::canonical_trilinear();
        match &self.construction {
            Construction::Triangular(p) => {
                TrilinearTensor::from_fn([n, n, n, 1], sig, |i, j, k, _| {
                    if p.holds([i, j, k]) {
                        1.0
                    } else {
                        0.0
                    }
                })
            }
            Construction::RankOne { phi, psi } => {
                TrilinearTensor::from_fn([n, n, n, n], sig, |i, j, k, l| {
                    if k == l {
                        phi.value(i + 1) * psi.value(j + 1)
                    } else {
                        0.0
                    }
                })
            }
            Construction::Composed { g, m } => {
                compose_bilinear(&g.finite_instance(n)?, &m.finite_instance(n)?)
            }
            Construction::ReflexiveMiddle => TrilinearTensor::from_fn(
                [n, 1, n, 1],
                sig,
                |i, _, k, _| {
                    if i <= k {
                        1.0
                    } else {
                        0.0
                    }
                },
            ),
        }
    }

    /// The sequence-model map.
    pub fn sequence_instance(&self) -> SequenceModelMap {
        let formula: Arc<dyn SequenceFormula + Send + Sync> = match &self.construction {
            Construction::Triangular(p) => Arc::new(TriangularFormula { chain: p.chain() }),
            Construction::RankOne { phi, psi } => Arc::new(RankOneFormula {
                phi: phi.clone(),
                psi: psi.clone(),
            }),
            Construction::Composed { g, m } => Arc::new(ComposedFormula {
                g: g.clone(),
                m: m.clone(),
            }),
            Construction::ReflexiveMiddle => Arc::new(ReflexiveMiddleFormula),
        };
        SequenceModelMap::new(formula)
    }

    /// Canonical net families for limit runs at truncation `n`: unit vectors
    /// everywhere, except the constant net on the middle slot of the
    /// reflexive-middle example.
    pub fn canonical_nets(&self, n: usize) -> [NetFamily; 3] {
        match &self.construction {
            Construction::ReflexiveMiddle => [
                NetFamily::unit_vectors(n),
                NetFamily::constant(vec![1.0]),
                NetFamily::unit_vectors(n),
            ],
            _ => [
                NetFamily::unit_vectors(n),
                NetFamily::unit_vectors(n),
                NetFamily::unit_vectors(n),
            ],
        }
    }
}

// ---------------------------------------------------------------------------
// Sequence-model formulas
// ---------------------------------------------------------------------------

struct TriangularFormula {
    chain: [usize; 3],
}

impl SequenceFormula for TriangularFormula {
    fn codomain(&self) -> CodomainKind {
        CodomainKind::Scalar
    }

    fn value_dim(&self, _n: usize) -> usize {
        1
    }

    fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let vecs = [x, y, z];
        let first = vecs[self.chain[0]];
        let mid = vecs[self.chain[1]];
        let third = vecs[self.chain[2]];
        let n = first.len().min(mid.len()).min(third.len());
        // Sum over u <= v <= w of first_u mid_v third_w via prefix/suffix sums.
        let mut suffix = vec![0.0; n + 1];
        for w in (0..n).rev() {
            suffix[w] = suffix[w + 1] + third[w];
        }
        let mut acc = 0.0;
        let mut prefix = 0.0;
        for v in 0..n {
            prefix += first[v];
            acc += mid[v] * prefix * suffix[v];
        }
        vec![acc]
    }
}

struct RankOneFormula {
    phi: ScalarSeq,
    psi: ScalarSeq,
}

impl SequenceFormula for RankOneFormula {
    fn codomain(&self) -> CodomainKind {
        CodomainKind::Sequence
    }

    fn value_dim(&self, n: usize) -> usize {
        n
    }

    fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let coef = self.phi.dot(x) * self.psi.dot(y);
        z.iter().map(|zv| coef * zv).collect()
    }
}

struct ComposedFormula {
    g: BilinearKind,
    m: BilinearKind,
}

impl SequenceFormula for ComposedFormula {
    fn codomain(&self) -> CodomainKind {
        if self.g.scalar_codomain() {
            CodomainKind::Scalar
        } else {
            CodomainKind::Sequence
        }
    }

    fn value_dim(&self, n: usize) -> usize {
        if self.g.scalar_codomain() {
            1
        } else {
            n
        }
    }

    fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let s = self.m.eval_inner(x, y);
        match &self.g {
            BilinearKind::ScalarMult => z.iter().map(|zv| s * zv).collect(),
            BilinearKind::ScalarTimesFunctional { chi } => vec![s * chi.dot(z)],
            _ => unreachable!("outer factor takes a scalar first argument"),
        }
    }
}

struct ReflexiveMiddleFormula;

impl SequenceFormula for ReflexiveMiddleFormula {
    fn codomain(&self) -> CodomainKind {
        CodomainKind::Scalar
    }

    fn value_dim(&self, _n: usize) -> usize {
        1
    }

    fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let lambda = y.first().copied().unwrap_or(0.0);
        let n = x.len().min(z.len());
        let mut acc = 0.0;
        let mut prefix = 0.0;
        for k in 0..n {
            prefix += x[k];
            acc += z[k] * prefix;
        }
        vec![lambda * acc]
    }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

pub const BUILTIN_NAMES: [&str; 10] = [
    "triangular-ijk",
    "triangular-ikj",
    "triangular-jik",
    "triangular-jki",
    "triangular-kij",
    "triangular-kji",
    "rank-one",
    "composed-regular",
    "composed-irregular",
    "reflexive-middle",
];

/// Looks up a built-in example by CLI name.
pub fn builtin(name: &str) -> Option<ExampleSpec> {
    if let Some(pattern) = name.strip_prefix("triangular-").and_then(TriPattern::parse) {
        return Some(triangular(pattern));
    }
    match name {
        "rank-one" => rank_one(ScalarSeq::OneMinusInverse, ScalarSeq::Ones).ok(),
        "composed-regular" => composed(
            BilinearKind::ScalarTimesFunctional {
                chi: ScalarSeq::Ones,
            },
            BilinearKind::RankOnePair {
                phi: ScalarSeq::OneMinusInverse,
                psi: ScalarSeq::Ones,
            },
        )
        .ok()
        .map(|e| e.named("composed-regular")),
        "composed-irregular" => composed(BilinearKind::ScalarMult, BilinearKind::TriangularPairs)
            .ok()
            .map(|e| e.named("composed-irregular")),
        "reflexive-middle" => Some(reflexive_middle()),
        _ => None,
    }
}
