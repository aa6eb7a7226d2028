//! Exact structural analysis of Collatz (Syracuse) sequences.
//!
//! The map under study is the shortcut Syracuse step: N/2 for even N,
//! (3N+1)/2 for odd N. Every quantity in this crate is exact, built from
//! arbitrary-precision integers, dyadic rationals (m over a power of two)
//! and big rationals. There is no floating point anywhere, so identities
//! are checked by equality rather than tolerance.
//!
//! Module map:
//!
//! * [`kernel`]: the step itself, parity indicators, imparity counts, and
//!   the exact affine form of the n-fold iterate.
//! * [`structure`]: parity words (with an explicit convention tag),
//!   generated sequences, isoformy, and the generator shift theorem.
//! * [`tables`]: generating sequences, chromoform matrices and their
//!   structural (bit) tables, completeness verification, chromologues,
//!   prolongation, decomposition and polychromoform prefixes.
//! * [`classify`]: reversal coefficients, A/B and S+/S- classification,
//!   exact binomial type counting and proportion trends.
//! * [`inverse`]: from parity words back to generators by 2-adic lifting,
//!   minimal-generator growth of periodic words, cycle fixed points and
//!   the non-convertibility density bound.
//! * [`export`]: byte-stable CSV/JSON/text renderings of the above.

pub mod affine;
pub mod classify;
pub mod dyadic;
pub mod export;
pub mod inverse;
pub mod kernel;
pub mod structure;
pub mod tables;

mod error;

pub use affine::AffineMap;
pub use dyadic::DyadicRational;
pub use error::{Error, Result};
pub use structure::{Convention, GeneratedSequence, ParityWord};
pub use tables::DEFAULT_ORDER_CAP;

/// Arbitrary-precision nonnegative integer. Sequence terms and generators
/// are naturals and must be at least 1 wherever a trajectory is taken.
pub type Natural = num_bigint::BigUint;

/// Exact ratio of two arbitrary-precision integers.
pub type Rational = num_rational::BigRational;
