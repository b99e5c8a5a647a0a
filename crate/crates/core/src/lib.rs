//! Exact-arithmetic engine for the dual tangent maps of hyperelliptic curves.
//!
//! The crate builds hyperelliptic curves over ℚ and finite fields, writes the
//! standard differential bases and the maps
//! `Sym² H⁰(ω) → H⁰(ω⊗²)`, `μ0` and `μ1` as exact matrices, and reports
//! their ranks. It also carries the characteristic-2 Artin–Schreier
//! normal-form reduction and integer intersection theory on Hirzebruch
//! surfaces.

pub mod curves;
pub mod error;
pub mod field;
pub mod hirzebruch;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod tangent;

pub use error::{Error, Result};
pub use field::{ArithOp, FieldCtx, FieldElem, FieldKind};
pub use poly::Poly;
pub use ratfunc::{PartialFraction, PfTerm, RatFunc};
