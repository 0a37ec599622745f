//! Exact-arithmetic toolkit for interval-bisection number encodings, a
//! constructive non-Archimedean ordered field with infinitesimals, symbolic
//! classification of bisection-limit sets, and a desk-scale Martin-Löf
//! randomness apparatus over n-ary sequence spaces.
//!
//! Everything is computed with arbitrary-precision rationals; there is no
//! floating point anywhere in this crate.

pub mod bisection;
pub mod dedekind_set;
pub mod error;
pub mod hyperreal;
pub mod randomness;
pub mod sequences;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
