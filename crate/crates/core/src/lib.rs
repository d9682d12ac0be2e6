//! Compositional semantics with typed Hilbert operators.
//!
//! Words are mapped to terms of a second-order λ-calculus over many sorts of
//! entities. Determiners are the choice operators `eps` (indefinite), `ieps`
//! (definite) and `tau` (universal), each of type `Πα. (α → t) → α`. A
//! syntactic tree is composed into a single term, normalized, and read back
//! as a multisorted formula, which a finite-model evaluator can check.

#![allow(clippy::result_large_err)]

pub mod analysis;
pub mod composer;
pub mod discourse;
pub mod kernel;
pub mod lexicon;
pub mod logic;
pub mod model;
pub mod sexp;

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
