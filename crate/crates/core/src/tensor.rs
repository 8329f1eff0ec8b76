//! Finite-dimensional backend: dense coordinate tensors for bilinear and
//! tri-linear maps in fixed bases.
//!
//! On finite-dimensional (hence reflexive) spaces every adjoint and flip is an
//! exact axis permutation of the coordinate tensor, so the word identities of
//! the calculus can be verified bit for bit. Entries are stored row-major with
//! the last index fastest; `entry[i][j][k][l]` is the `l`-th coordinate of
//! `f(e_i, e_j, e_k)`. Contractions always scan argument axes lexicographically
//! (last axis fastest) so that "exact" comparisons are reproducible.

use crate::signatures::{
    flip_signature, star_signature, AxisPermutation, Flip, Letter, Signature, Space, Word,
};
use std::fmt::Write as _;
use thiserror::Error;

pub mod io;

/// Relative Frobenius tolerance for identities whose two sides reorder a
/// contraction (the bilinear-composition identities). Pure axis-permutation
/// identities are compared bitwise instead.
pub const CONTRACTION_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("dimension must be positive (axis {axis})")]
    ZeroDim { axis: usize },
    #[error("expected {expected} entries for dims {dims:?}, got {got}")]
    EntryCount {
        dims: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("non-finite entry at flat index {index}")]
    NonFinite { index: usize },
    #[error("argument slot {slot} has dimension {got}, tensor expects {expected}")]
    SlotDimMismatch {
        slot: usize,
        expected: usize,
        got: usize,
    },
    #[error("argument slot {slot} lives in {got}, tensor expects {expected} (up to biduals)")]
    SlotSpaceMismatch {
        slot: usize,
        expected: String,
        got: String,
    },
    #[error("inner dimensions differ: m has codomain dimension {m_codomain}, g expects {g_first}")]
    InnerDimMismatch { m_codomain: usize, g_first: usize },
    #[error("signature arity {arity} does not match tensor arity {expected}")]
    ArityMismatch { arity: usize, expected: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A coordinate vector tagged with the space it lives in.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    pub coords: Vec<f64>,
    pub space: Space,
}

impl Vector {
    pub fn new(coords: Vec<f64>, space: Space) -> Self {
        Vector { coords, space }
    }

    /// The `n`-th standard basis vector (0-based) of the given dimension.
    pub fn basis(n: usize, dim: usize, space: Space) -> Self {
        let mut coords = vec![0.0; dim];
        coords[n] = 1.0;
        Vector { coords, space }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

fn check_entries(dims: &[usize], entries: &[f64]) -> Result<(), TensorError> {
    if let Some(axis) = dims.iter().position(|&d| d == 0) {
        return Err(TensorError::ZeroDim { axis });
    }
    let expected: usize = dims.iter().product();
    if entries.len() != expected {
        return Err(TensorError::EntryCount {
            dims: dims.to_vec(),
            expected,
            got: entries.len(),
        });
    }
    if let Some(index) = entries.iter().position(|e| !e.is_finite()) {
        return Err(TensorError::NonFinite { index });
    }
    Ok(())
}

fn check_slot(
    slot: usize,
    expected_space: Space,
    expected_dim: usize,
    v: &Vector,
) -> Result<(), TensorError> {
    if v.space.base != expected_space.base
        || v.space.dual_level % 2 != expected_space.dual_level % 2
    {
        return Err(TensorError::SlotSpaceMismatch {
            slot,
            expected: expected_space.to_string(),
            got: v.space.to_string(),
        });
    }
    if v.dim() != expected_dim {
        return Err(TensorError::SlotDimMismatch {
            slot,
            expected: expected_dim,
            got: v.dim(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tri-linear tensors
// ---------------------------------------------------------------------------

/// Dense coordinate tensor of a tri-linear map, axes `(X, Y, Z, W-coords)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrilinearTensor {
    dims: [usize; 4],
    entries: Vec<f64>,
    sig: Signature,
}

impl TrilinearTensor {
    pub fn new(dims: [usize; 4], entries: Vec<f64>, sig: Signature) -> Result<Self, TensorError> {
        if sig.arity() != 3 {
            return Err(TensorError::ArityMismatch {
                arity: sig.arity(),
                expected: 3,
            });
        }
        check_entries(&dims, &entries)?;
        Ok(TrilinearTensor { dims, entries, sig })
    }

    /// Builds entry-by-entry from a rule on `(i, j, k, l)`.
    pub fn from_fn(
        dims: [usize; 4],
        sig: Signature,
        mut rule: impl FnMut(usize, usize, usize, usize) -> f64,
    ) -> Result<Self, TensorError> {
        let mut entries = Vec::with_capacity(dims.iter().product());
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    for l in 0..dims[3] {
                        entries.push(rule(i, j, k, l));
                    }
                }
            }
        }
        TrilinearTensor::new(dims, entries, sig)
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.dims[1] + j) * self.dims[2] + k) * self.dims[3] + l
    }

    pub fn get(&self, idx: [usize; 4]) -> f64 {
        self.entries[self.index(idx[0], idx[1], idx[2], idx[3])]
    }

    /// Contracts the three argument axes against `a`, `b`, `c`.
    ///
    /// Argument spaces must match the signature's argument spaces up to an
    /// even dual-level difference (a space and its bidual share coordinates).
    /// For each output coordinate the sum runs over `(i, j, k)` in
    /// lexicographic order, each term multiplied as `entry * a * b * c`.
    pub fn evaluate(&self, a: &Vector, b: &Vector, c: &Vector) -> Result<Vector, TensorError> {
        let args = self.sig.args();
        check_slot(1, args[0], self.dims[0], a)?;
        check_slot(2, args[1], self.dims[1], b)?;
        check_slot(3, args[2], self.dims[2], c)?;
        let mut out = vec![0.0; self.dims[3]];
        for (l, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..self.dims[0] {
                for j in 0..self.dims[1] {
                    for k in 0..self.dims[2] {
                        acc += self.entries[self.index(i, j, k, l)]
                            * a.coords[i]
                            * b.coords[j]
                            * c.coords[k];
                    }
                }
            }
            *slot = acc;
        }
        Ok(Vector::new(out, self.sig.codomain()))
    }

    fn permuted(&self, source: [usize; 4], sig: Signature) -> TrilinearTensor {
        let dims = [
            self.dims[source[0]],
            self.dims[source[1]],
            self.dims[source[2]],
            self.dims[source[3]],
        ];
        let mut entries = vec![0.0; self.entries.len()];
        let mut pos = 0;
        for a0 in 0..dims[0] {
            for a1 in 0..dims[1] {
                for a2 in 0..dims[2] {
                    for a3 in 0..dims[3] {
                        let mut old = [0usize; 4];
                        old[source[0]] = a0;
                        old[source[1]] = a1;
                        old[source[2]] = a2;
                        old[source[3]] = a3;
                        entries[pos] = self.entries[self.index(old[0], old[1], old[2], old[3])];
                        pos += 1;
                    }
                }
            }
        }
        TrilinearTensor { dims, entries, sig }
    }

    /// The adjoint tensor: `S[p][i][j][k] = T[i][j][k][p]`, signature starred.
    pub fn adjoint(&self) -> TrilinearTensor {
        self.permuted([3, 0, 1, 2], star_signature(&self.sig))
    }

    /// Argument axes permuted by the flip; the codomain axis is untouched.
    pub fn flip(&self, flip: Flip) -> TrilinearTensor {
        let s = flip.arg_source();
        let sig = flip_signature(&self.sig, flip).expect("tri-linear tensor signature has arity 3");
        self.permuted([s[0], s[1], s[2], 3], sig)
    }

    /// Applies a word letter by letter, left to right.
    pub fn apply_word(&self, word: &Word) -> TrilinearTensor {
        let mut t = self.clone();
        for letter in word.letters() {
            t = match letter {
                Letter::Star => t.adjoint(),
                Letter::Flip(fl) => t.flip(*fl),
            };
        }
        t
    }

    /// Dims and entries rearranged by a composed axis permutation in one
    /// step, for checking that letter-by-letter application lands where the
    /// symbolic composition predicts.
    pub fn rearranged_by(&self, perm: &AxisPermutation) -> ([usize; 4], Vec<f64>) {
        let out = self.permuted(perm.source, self.sig.clone());
        (out.dims, out.entries)
    }

    pub fn entries_equal(&self, other: &TrilinearTensor) -> bool {
        self.dims == other.dims && self.entries == other.entries
    }

    /// `||A - B||_F / max(||A||_F, ||B||_F)`, `0` when both are zero.
    pub fn rel_frobenius_distance(&self, other: &TrilinearTensor) -> f64 {
        assert_eq!(
            self.dims, other.dims,
            "rel_frobenius_distance needs equal dims"
        );
        let mut diff = 0.0;
        let mut na = 0.0;
        let mut nb = 0.0;
        for (x, y) in self.entries.iter().zip(&other.entries) {
            diff += (x - y) * (x - y);
            na += x * x;
            nb += y * y;
        }
        let denom = na.max(nb).sqrt();
        if denom == 0.0 {
            0.0
        } else {
            diff.sqrt() / denom
        }
    }
}

// ---------------------------------------------------------------------------
// Bilinear tensors
// ---------------------------------------------------------------------------

/// Dense coordinate tensor of a bilinear map, axes `(X, Y, S-coords)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearTensor {
    dims: [usize; 3],
    entries: Vec<f64>,
    sig: Signature,
}

impl BilinearTensor {
    pub fn new(dims: [usize; 3], entries: Vec<f64>, sig: Signature) -> Result<Self, TensorError> {
        if sig.arity() != 2 {
            return Err(TensorError::ArityMismatch {
                arity: sig.arity(),
                expected: 2,
            });
        }
        check_entries(&dims, &entries)?;
        Ok(BilinearTensor { dims, entries, sig })
    }

    pub fn from_fn(
        dims: [usize; 3],
        sig: Signature,
        mut rule: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self, TensorError> {
        let mut entries = Vec::with_capacity(dims.iter().product());
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for p in 0..dims[2] {
                    entries.push(rule(i, j, p));
                }
            }
        }
        BilinearTensor::new(dims, entries, sig)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    #[inline]
    fn index(&self, i: usize, j: usize, p: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + p
    }

    pub fn get(&self, idx: [usize; 3]) -> f64 {
        self.entries[self.index(idx[0], idx[1], idx[2])]
    }

    pub fn evaluate(&self, a: &Vector, b: &Vector) -> Result<Vector, TensorError> {
        let args = self.sig.args();
        check_slot(1, args[0], self.dims[0], a)?;
        check_slot(2, args[1], self.dims[1], b)?;
        let mut out = vec![0.0; self.dims[2]];
        for (p, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..self.dims[0] {
                for j in 0..self.dims[1] {
                    acc += self.entries[self.index(i, j, p)] * a.coords[i] * b.coords[j];
                }
            }
            *slot = acc;
        }
        Ok(Vector::new(out, self.sig.codomain()))
    }

    fn permuted(&self, source: [usize; 3], sig: Signature) -> BilinearTensor {
        let dims = [
            self.dims[source[0]],
            self.dims[source[1]],
            self.dims[source[2]],
        ];
        let mut entries = vec![0.0; self.entries.len()];
        let mut pos = 0;
        for a0 in 0..dims[0] {
            for a1 in 0..dims[1] {
                for a2 in 0..dims[2] {
                    let mut old = [0usize; 3];
                    old[source[0]] = a0;
                    old[source[1]] = a1;
                    old[source[2]] = a2;
                    entries[pos] = self.entries[self.index(old[0], old[1], old[2])];
                    pos += 1;
                }
            }
        }
        BilinearTensor { dims, entries, sig }
    }

    /// The bilinear adjoint: `S[p][i][j] = M[i][j][p]`, signature starred.
    pub fn adjoint(&self) -> BilinearTensor {
        self.permuted([2, 0, 1], star_signature(&self.sig))
    }

    /// The argument swap `m^r`, `m^r(y, x) = m(x, y)`.
    pub fn swap(&self) -> BilinearTensor {
        let args = self.sig.args();
        let sig = Signature::bilinear(args[1], args[0], self.sig.codomain());
        self.permuted([1, 0, 2], sig)
    }

    /// The Arens extension word `***`.
    pub fn extension(&self) -> BilinearTensor {
        self.adjoint().adjoint().adjoint()
    }

    /// The transposed Arens extension word `r***r`.
    pub fn swapped_extension(&self) -> BilinearTensor {
        self.swap().extension().swap()
    }

    pub fn entries_equal(&self, other: &BilinearTensor) -> bool {
        self.dims == other.dims && self.entries == other.entries
    }
}

// ---------------------------------------------------------------------------
// Composition and identity checkers
// ---------------------------------------------------------------------------

/// The tri-linear map `f(x,y,z) = g(m(x,y), z)` as a tensor:
/// `F[i][j][k][l] = Σ_p M[i][j][p] · G[p][k][l]`, summed over `p` ascending.
pub fn compose_bilinear(
    g: &BilinearTensor,
    m: &BilinearTensor,
) -> Result<TrilinearTensor, TensorError> {
    let inner = m.dims[2];
    if inner != g.dims[0] {
        return Err(TensorError::InnerDimMismatch {
            m_codomain: inner,
            g_first: g.dims[0],
        });
    }
    let dims = [m.dims[0], m.dims[1], g.dims[1], g.dims[2]];
    let m_args = m.sig.args();
    let g_args = g.sig.args();
    let sig = Signature::trilinear(m_args[0], m_args[1], g_args[1], g.sig.codomain());
    TrilinearTensor::from_fn(dims, sig, |i, j, k, l| {
        let mut acc = 0.0;
        for p in 0..inner {
            acc += m.get([i, j, p]) * g.get([p, k, l]);
        }
        acc
    })
}

fn composition_identity(
    g: &BilinearTensor,
    m: &BilinearTensor,
    word: &str,
    g_ext: BilinearTensor,
    m_ext: BilinearTensor,
) -> Result<bool, TensorError> {
    let f = compose_bilinear(g, m)?;
    let lhs = f.apply_word(&Word::parse(word).expect("fixed word"));
    let rhs = compose_bilinear(&g_ext, &m_ext)?;
    Ok(lhs.rel_frobenius_distance(&rhs) <= CONTRACTION_REL_TOL)
}

/// `f^{i****i} = g^{***}(m^{r***r}(·,·), ·)` on the finite model.
pub fn check_identity_2_4(g: &BilinearTensor, m: &BilinearTensor) -> Result<bool, TensorError> {
    composition_identity(g, m, "i****i", g.extension(), m.swapped_extension())
}

/// `f^{r****r} = g^{r***r}(m^{r***r}(·,·), ·)` on the finite model.
pub fn check_identity_2_5(g: &BilinearTensor, m: &BilinearTensor) -> Result<bool, TensorError> {
    composition_identity(g, m, "r****r", g.swapped_extension(), m.swapped_extension())
}

/// `f^{j****j} = g^{***}(m^{***}(·,·), ·)` on the finite model.
pub fn check_identity_2_6(g: &BilinearTensor, m: &BilinearTensor) -> Result<bool, TensorError> {
    composition_identity(g, m, "j****j", g.extension(), m.extension())
}

/// The two mixed-word equalities `****s**t = s**t****` and
/// `t**s**** = ****t**s`, compared entrywise (they are pure permutations).
pub fn check_mixed_word_identities(t: &TrilinearTensor) -> bool {
    let pairs = [("****s**t", "s**t****"), ("t**s****", "****t**s")];
    pairs.into_iter().all(|(wa, wb)| {
        let a = t.apply_word(&Word::parse(wa).expect("fixed word"));
        let b = t.apply_word(&Word::parse(wb).expect("fixed word"));
        a.entries_equal(&b)
    })
}

// ---------------------------------------------------------------------------
// Duality pairings under one shared contraction order
// ---------------------------------------------------------------------------

/// Computes `⟨adjoint(T)(d,a,b), c⟩` and `⟨d, T(a,b,c)⟩` with the same term
/// enumeration and multiplication order on both sides, so that the duality
/// identity holds bitwise exactly when the adjoint places entries correctly.
#[allow(clippy::needless_range_loop)]
pub fn duality_sides(
    t: &TrilinearTensor,
    d: &[f64],
    a: &[f64],
    b: &[f64],
    c: &[f64],
) -> Result<(f64, f64), TensorError> {
    let dims = t.dims;
    for (slot, (v, want)) in [(a, dims[0]), (b, dims[1]), (c, dims[2]), (d, dims[3])]
        .iter()
        .enumerate()
    {
        if v.len() != *want {
            return Err(TensorError::SlotDimMismatch {
                slot: slot + 1,
                expected: *want,
                got: v.len(),
            });
        }
    }
    let s = t.adjoint();
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for i in 0..dims[0] {
        for j in 0..dims[1] {
            for k in 0..dims[2] {
                for p in 0..dims[3] {
                    let weight = d[p] * a[i] * b[j] * c[k];
                    lhs += s.get([p, i, j, k]) * weight;
                    rhs += t.get([i, j, k, p]) * weight;
                }
            }
        }
    }
    Ok((lhs, rhs))
}

/// Bilinear version: `⟨adjoint(M)(d,a), b⟩` against `⟨d, M(a,b)⟩`.
#[allow(clippy::needless_range_loop)]
pub fn duality_sides_bilinear(
    m: &BilinearTensor,
    d: &[f64],
    a: &[f64],
    b: &[f64],
) -> Result<(f64, f64), TensorError> {
    let dims = m.dims;
    for (slot, (v, want)) in [(a, dims[0]), (b, dims[1]), (d, dims[2])]
        .iter()
        .enumerate()
    {
        if v.len() != *want {
            return Err(TensorError::SlotDimMismatch {
                slot: slot + 1,
                expected: *want,
                got: v.len(),
            });
        }
    }
    let s = m.adjoint();
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for i in 0..dims[0] {
        for j in 0..dims[1] {
            for p in 0..dims[2] {
                let weight = d[p] * a[i] * b[j];
                lhs += s.get([p, i, j]) * weight;
                rhs += m.get([i, j, p]) * weight;
            }
        }
    }
    Ok((lhs, rhs))
}

pub(crate) fn format_floats(values: &[f64]) -> String {
    let mut out = String::new();
    for (n, v) in values.iter().enumerate() {
        if n > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signatures::{word_signature, word_to_axis_permutation, Base};

    /// splitmix64-based deterministic generator for test data.
    pub(crate) struct TestRng(u64);

    impl TestRng {
        pub fn new(seed: u64) -> Self {
            TestRng(seed)
        }

        fn next_u64(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }

        /// Uniform in [-1, 1].
        pub fn unit(&mut self) -> f64 {
            (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 - 1.0
        }

        pub fn vec(&mut self, n: usize) -> Vec<f64> {
            (0..n).map(|_| self.unit()).collect()
        }
    }

    fn random_trilinear(rng: &mut TestRng, dims: [usize; 4]) -> TrilinearTensor {
        let count = dims.iter().product();
        TrilinearTensor::new(dims, rng.vec(count), Signature::canonical_trilinear()).unwrap()
    }

    fn random_bilinear(rng: &mut TestRng, dims: [usize; 3], sig: Signature) -> BilinearTensor {
        let count = dims.iter().product();
        BilinearTensor::new(dims, rng.vec(count), sig).unwrap()
    }

    fn m_sig() -> Signature {
        Signature::bilinear(
            Space::base(Base::X),
            Space::base(Base::Y),
            Space::base(Base::S),
        )
    }

    fn g_sig() -> Signature {
        Signature::bilinear(
            Space::base(Base::S),
            Space::base(Base::Z),
            Space::base(Base::W),
        )
    }

    fn word(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn evaluate_scalar_case() {
        let t = TrilinearTensor::new([1, 1, 1, 1], vec![2.0], Signature::canonical_trilinear())
            .unwrap();
        let one = |b| Vector::new(vec![1.0], Space::base(b));
        let out = t
            .evaluate(&one(Base::X), &one(Base::Y), &one(Base::Z))
            .unwrap();
        assert_eq!(out.coords, vec![2.0]);
        assert_eq!(out.space, Space::base(Base::W));
    }

    #[test]
    fn evaluate_rank_one_tensor_at_basis() {
        // f(x,y,z) = <phi,x><psi,y> z with phi = psi = (1,0).
        let t = TrilinearTensor::from_fn(
            [2, 2, 2, 2],
            Signature::canonical_trilinear(),
            |i, j, k, l| {
                let phi = [1.0, 0.0];
                phi[i] * phi[j] * if k == l { 1.0 } else { 0.0 }
            },
        )
        .unwrap();
        let e1 = |b| Vector::basis(0, 2, Space::base(b));
        let out = t
            .evaluate(&e1(Base::X), &e1(Base::Y), &e1(Base::Z))
            .unwrap();
        assert_eq!(out.coords, vec![1.0, 0.0]);
    }

    #[test]
    fn evaluate_is_exactly_homogeneous_under_doubling() {
        let mut rng = TestRng::new(7);
        let t = random_trilinear(&mut rng, [2, 2, 2, 2]);
        let a = Vector::new(rng.vec(2), Space::base(Base::X));
        let b = Vector::new(rng.vec(2), Space::base(Base::Y));
        let c = Vector::new(rng.vec(2), Space::base(Base::Z));
        let doubled = Vector::new(a.coords.iter().map(|x| 2.0 * x).collect(), a.space);
        let lhs = t.evaluate(&doubled, &b, &c).unwrap();
        let rhs = t.evaluate(&a, &b, &c).unwrap();
        for (x, y) in lhs.coords.iter().zip(&rhs.coords) {
            assert_eq!(*x, 2.0 * y);
        }
    }

    #[test]
    fn evaluate_accepts_bidual_tagged_vectors() {
        let t = TrilinearTensor::new([1, 1, 1, 1], vec![3.0], Signature::canonical_trilinear())
            .unwrap();
        let a = Vector::new(vec![1.0], Space::new(Base::X, 2));
        let b = Vector::new(vec![1.0], Space::new(Base::Y, 4));
        let c = Vector::new(vec![1.0], Space::base(Base::Z));
        assert_eq!(t.evaluate(&a, &b, &c).unwrap().coords, vec![3.0]);
    }

    #[test]
    fn evaluate_rejects_bad_slots() {
        let t = TrilinearTensor::new(
            [2, 1, 1, 1],
            vec![1.0, 2.0],
            Signature::canonical_trilinear(),
        )
        .unwrap();
        let good = Vector::new(vec![1.0], Space::base(Base::Y));
        let short = Vector::new(vec![1.0], Space::base(Base::X));
        let z = Vector::new(vec![1.0], Space::base(Base::Z));
        match t.evaluate(&short, &good, &z) {
            Err(TensorError::SlotDimMismatch {
                slot: 1,
                expected: 2,
                got: 1,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        let wrong_space = Vector::new(vec![1.0, 0.0], Space::base(Base::W));
        assert!(matches!(
            t.evaluate(&wrong_space, &good, &z),
            Err(TensorError::SlotSpaceMismatch { slot: 1, .. })
        ));
        let odd_dual = Vector::new(vec![1.0, 0.0], Space::new(Base::X, 1));
        assert!(matches!(
            t.evaluate(&odd_dual, &good, &z),
            Err(TensorError::SlotSpaceMismatch { slot: 1, .. })
        ));
    }

    #[test]
    fn adjoint_scalar_and_signature() {
        let t = TrilinearTensor::new([1, 1, 1, 1], vec![7.0], Signature::canonical_trilinear())
            .unwrap();
        let s = t.adjoint();
        assert_eq!(s.entries(), &[7.0]);
        assert_eq!(s.sig().to_string(), "W* x X x Y -> Z*");
    }

    #[test]
    fn adjoint_duality_pairing_is_exact() {
        let mut rng = TestRng::new(11);
        let t = random_trilinear(&mut rng, [2, 3, 2, 2]);
        for _ in 0..100 {
            let a = rng.vec(2);
            let b = rng.vec(3);
            let c = rng.vec(2);
            let d = rng.vec(2);
            let (lhs, rhs) = duality_sides(&t, &d, &a, &b, &c).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn duality_holds_at_every_level_of_the_adjoint_chain() {
        let mut rng = TestRng::new(13);
        let mut u = random_trilinear(&mut rng, [2, 3, 2, 2]);
        for _ in 0..4 {
            let dims = u.dims();
            for _ in 0..20 {
                let a = rng.vec(dims[0]);
                let b = rng.vec(dims[1]);
                let c = rng.vec(dims[2]);
                let d = rng.vec(dims[3]);
                let (lhs, rhs) = duality_sides(&u, &d, &a, &b, &c).unwrap();
                assert_eq!(lhs, rhs);
            }
            u = u.adjoint();
        }
    }

    #[test]
    fn pairing_sides_match_evaluate_then_dot_within_tolerance() {
        let mut rng = TestRng::new(17);
        let t = random_trilinear(&mut rng, [3, 2, 3, 2]);
        let a = rng.vec(3);
        let b = rng.vec(2);
        let c = rng.vec(3);
        let d = rng.vec(2);
        let (_, rhs) = duality_sides(&t, &d, &a, &b, &c).unwrap();
        let w = t
            .evaluate(
                &Vector::new(a.clone(), Space::base(Base::X)),
                &Vector::new(b.clone(), Space::base(Base::Y)),
                &Vector::new(c.clone(), Space::base(Base::Z)),
            )
            .unwrap();
        let dot: f64 = d.iter().zip(&w.coords).map(|(x, y)| x * y).sum();
        assert!((rhs - dot).abs() <= 1e-12 * dot.abs().max(1.0));
    }

    /// Oracle: an explicit index loop rotating axes four times.
    #[test]
    fn adjoint_four_times_is_identity() {
        let mut rng = TestRng::new(19);
        let t = random_trilinear(&mut rng, [2, 3, 2, 2]);
        let four = t.adjoint().adjoint().adjoint().adjoint();
        assert!(four.entries_equal(&t));

        // Independent loop: one rotation places T[i][j][k][p] at S[p][i][j][k].
        let s = t.adjoint();
        for i in 0..2 {
            for j in 0..3 {
                for k in 0..2 {
                    for p in 0..2 {
                        assert_eq!(s.get([p, i, j, k]), t.get([i, j, k, p]));
                    }
                }
            }
        }
    }

    #[test]
    fn flip_involution_and_composition() {
        let mut rng = TestRng::new(23);
        let t = random_trilinear(&mut rng, [2, 3, 4, 2]);
        assert!(t.flip(Flip::I).flip(Flip::I).entries_equal(&t));
        assert!(t
            .flip(Flip::R)
            .flip(Flip::T)
            .entries_equal(&t.flip(Flip::J)));
        assert!(t.flip(Flip::T).flip(Flip::S).entries_equal(&t));
    }

    #[test]
    fn apply_word_identities() {
        let mut rng = TestRng::new(29);
        let t = random_trilinear(&mut rng, [2, 3, 2, 2]);
        assert!(t.apply_word(&word("****")).entries_equal(&t));
        assert!(t.apply_word(&word("s****t")).entries_equal(&t));
        assert!(t.apply_word(&Word::empty()).entries_equal(&t));
    }

    #[test]
    fn apply_word_matches_axis_permutation_prediction() {
        let mut rng = TestRng::new(31);
        let t = random_trilinear(&mut rng, [2, 3, 4, 5]);
        for text in [
            "*", "**", "i", "t*s", "r**j", "****s**t", "t**s****", "ijrts*",
        ] {
            let w = word(text);
            let folded = t.apply_word(&w);
            let (dims, entries) = t.rearranged_by(&word_to_axis_permutation(&w));
            assert_eq!(folded.dims(), dims, "{text}");
            assert_eq!(folded.entries(), entries.as_slice(), "{text}");
            assert_eq!(
                *folded.sig(),
                word_signature(t.sig(), &w).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn compose_bilinear_scalars() {
        let m = BilinearTensor::new([1, 1, 1], vec![2.0], m_sig()).unwrap();
        let g = BilinearTensor::new([1, 1, 1], vec![3.0], g_sig()).unwrap();
        let f = compose_bilinear(&g, &m).unwrap();
        assert_eq!(f.entries(), &[6.0]);
        assert_eq!(f.sig().to_string(), "X x Y x Z -> W");
    }

    #[test]
    fn compose_bilinear_matches_two_step_evaluation() {
        let mut rng = TestRng::new(37);
        let m = random_bilinear(&mut rng, [2, 2, 2], m_sig());
        let g = random_bilinear(&mut rng, [2, 2, 2], g_sig());
        let f = compose_bilinear(&g, &m).unwrap();
        for _ in 0..100 {
            let x = Vector::new(rng.vec(2), Space::base(Base::X));
            let y = Vector::new(rng.vec(2), Space::base(Base::Y));
            let z = Vector::new(rng.vec(2), Space::base(Base::Z));
            let direct = f.evaluate(&x, &y, &z).unwrap();
            let inner = m.evaluate(&x, &y).unwrap();
            let chained = g.evaluate(&inner, &z).unwrap();
            for (u, v) in direct.coords.iter().zip(&chained.coords) {
                assert!((u - v).abs() <= 1e-12 * v.abs().max(1.0));
            }
        }
    }

    #[test]
    fn compose_bilinear_with_identity_pairing() {
        let m =
            BilinearTensor::from_fn([2, 2, 1], m_sig(), |i, j, _| if i == j { 1.0 } else { 0.0 })
                .unwrap();
        let mut rng = TestRng::new(41);
        let g = random_bilinear(&mut rng, [1, 2, 2], g_sig());
        let f = compose_bilinear(&g, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let want = if i == j { g.get([0, k, l]) } else { 0.0 };
                        assert_eq!(f.get([i, j, k, l]), want);
                    }
                }
            }
        }
    }

    #[test]
    fn compose_bilinear_rejects_inner_mismatch() {
        let m = BilinearTensor::new([1, 1, 2], vec![1.0, 2.0], m_sig()).unwrap();
        let g = BilinearTensor::new([1, 1, 1], vec![3.0], g_sig()).unwrap();
        assert!(matches!(
            compose_bilinear(&g, &m),
            Err(TensorError::InnerDimMismatch {
                m_codomain: 2,
                g_first: 1
            })
        ));
    }

    #[test]
    fn composition_identities_hold_on_random_pairs() {
        let mut rng = TestRng::new(43);
        for round in 0..25 {
            let di = 1 + round % 3;
            let dj = 1 + (round / 3) % 3;
            let dp = 1 + (round / 9) % 3;
            let m = random_bilinear(&mut rng, [di, dj, dp], m_sig());
            let g = random_bilinear(&mut rng, [dp, dj, di], g_sig());
            assert!(check_identity_2_4(&g, &m).unwrap());
            assert!(check_identity_2_5(&g, &m).unwrap());
            assert!(check_identity_2_6(&g, &m).unwrap());
        }
    }

    #[test]
    fn composition_identities_scalar_case() {
        let m = BilinearTensor::new([1, 1, 1], vec![1.0], m_sig()).unwrap();
        let g = BilinearTensor::new([1, 1, 1], vec![1.0], g_sig()).unwrap();
        assert!(check_identity_2_4(&g, &m).unwrap());
        assert!(check_identity_2_5(&g, &m).unwrap());
        assert!(check_identity_2_6(&g, &m).unwrap());
    }

    #[test]
    fn mixed_word_identities_hold() {
        let mut rng = TestRng::new(47);
        let t = random_trilinear(&mut rng, [2, 2, 2, 2]);
        assert!(check_mixed_word_identities(&t));
        let scalar =
            TrilinearTensor::new([1, 1, 1, 1], vec![5.0], Signature::canonical_trilinear())
                .unwrap();
        assert!(check_mixed_word_identities(&scalar));
    }

    #[test]
    fn mixed_word_signatures_collapse_to_the_restricted_argument_lists() {
        let base = Signature::canonical_trilinear();
        let first = word_signature(&base, &word("****s**t"))
            .unwrap()
            .collapsed();
        assert_eq!(first.to_string(), "Y x X x W* -> Z*");
        let second = word_signature(&base, &word("t**s****"))
            .unwrap()
            .collapsed();
        assert_eq!(second.to_string(), "W* x Z x Y -> X*");
        // Equal-word partners collapse identically.
        assert_eq!(
            word_signature(&base, &word("s**t****"))
                .unwrap()
                .collapsed(),
            first
        );
        assert_eq!(
            word_signature(&base, &word("****t**s"))
                .unwrap()
                .collapsed(),
            second
        );
    }

    #[test]
    fn constructor_validates_entries() {
        let sig = Signature::canonical_trilinear();
        assert!(matches!(
            TrilinearTensor::new([1, 0, 1, 1], vec![], sig.clone()),
            Err(TensorError::ZeroDim { axis: 1 })
        ));
        assert!(matches!(
            TrilinearTensor::new([1, 1, 1, 1], vec![1.0, 2.0], sig.clone()),
            Err(TensorError::EntryCount { .. })
        ));
        assert!(matches!(
            TrilinearTensor::new([1, 1, 1, 1], vec![f64::NAN], sig.clone()),
            Err(TensorError::NonFinite { index: 0 })
        ));
        assert!(matches!(
            TrilinearTensor::new(
                [1, 1, 1, 1],
                vec![1.0],
                Signature::parse("X x Y -> W").unwrap()
            ),
            Err(TensorError::ArityMismatch {
                arity: 2,
                expected: 3
            })
        ));
    }

    #[test]
    fn bilinear_duality_pairing_is_exact() {
        let mut rng = TestRng::new(53);
        let m = random_bilinear(&mut rng, [3, 2, 3], m_sig());
        for _ in 0..50 {
            let a = rng.vec(3);
            let b = rng.vec(2);
            let d = rng.vec(3);
            let (lhs, rhs) = duality_sides_bilinear(&m, &d, &a, &b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bilinear_extensions_are_identity_rearrangements() {
        let mut rng = TestRng::new(59);
        let m = random_bilinear(&mut rng, [2, 3, 2], m_sig());
        assert!(m.extension().entries_equal(&m));
        assert!(m.swapped_extension().entries_equal(&m));
        assert_eq!(m.extension().sig().to_string(), "X** x Y** -> S**");
        assert_eq!(m.swapped_extension().sig().to_string(), "X** x Y** -> S**");
    }
}
