//! Exact combinatorial toolkit for fixed sets of finite group actions on
//! finite CW-complexes.
//!
//! The crate decides Euler-characteristic obstructions for a finite complex
//! `F` to be the fixed set of a G-complex pseudo-equivalent to a given
//! G-complex `Y`: Oliver-number classification, cell-wise Euler calculus,
//! splitting classes of lifted actions on covers, Hattori–Stallings rank
//! vectors, and chain-level pseudo-equivalence checks.
//!
//! Linear algebra and rank vectors are generic over the scalar type (any
//! [`ExactInt`] for integer work, any [`RankScalar`] for rank vectors); the
//! aliases below fix the exact defaults used by the rest of the crate.

pub mod catalog;
pub mod complex;
pub mod cover;
pub mod error;
pub mod euler;
pub mod group;
pub mod io;
pub mod linalg;
pub mod oliver;
pub mod pseudo;
pub mod scalar;
pub mod trace;

pub use error::{Error, NotAGroup, Result};
pub use scalar::{ExactInt, RankScalar};

/// Arbitrary precision integer used for homology and chain maps.
pub type Int = num_bigint::BigInt;
/// Exact rational used for rank vectors.
pub type Rational = num_rational::BigRational;

pub type IntMatrix = linalg::Matrix<Int>;
pub type IntChainComplex = complex::ChainComplex<Int>;
pub type IntChainMap = pseudo::ChainMap<Int>;
pub type IntHomology = complex::HomologyGroup<Int>;
pub type RankVector = trace::ConjClassVector<Rational>;
/// Rank vector with floating-point coefficients, for quick inspection only.
pub type RankVectorF64 = trace::ConjClassVector<f64>;
