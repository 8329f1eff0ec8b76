//! Adjoint-flip calculus for bounded bilinear and tri-linear maps.
//!
//! A bounded tri-linear map `f : X x Y x Z -> W` has an adjoint
//! `f* : W* x X x Y -> Z*` and five argument flips; words over the alphabet
//! `{*, i, j, r, t, s}` generate all of its natural extensions to biduals.
//! This crate provides three cooperating layers:
//!
//! * [`signatures`] — the symbolic layer: spaces, signatures, flips, words,
//!   axis-permutation semantics and the dictionary from canonical extension
//!   words to iterated-limit orders.
//! * [`tensor`] — a finite-dimensional backend where every word acts as an
//!   exact axis permutation on dense coordinate tensors, together with the
//!   bilinear-composition identity checkers.
//! * [`limits`] — a truncated sequence-space model that evaluates the six
//!   iterated weak*-limit formulas on explicit net families and classifies
//!   maps as regular, close-to-regular or irregular on the tested nets.
//!
//! [`catalog`] wires named example maps into both backends.

pub mod catalog;
pub mod limits;
pub mod signatures;
pub mod tensor;

pub use signatures::{
    extension_order, flip_compose, flip_signature, star_signature, word_signature,
    word_to_axis_permutation, AxisPermutation, Base, ExtensionOrder, Flip, Letter, NetIndex,
    Signature, Space, Word,
};
pub use tensor::{compose_bilinear, BilinearTensor, TrilinearTensor, Vector};
