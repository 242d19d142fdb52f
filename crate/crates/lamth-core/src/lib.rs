//! Scoped lambda terms with explicit substitutions, algebraic and lambda
//! theories, Scott's category of retracts, presheaf models and the
//! set-Karoubi envelope, together with a traced substitution-propagation
//! rewriting engine and sampled law checking for all of it.
//!
//! The crate is `no_std` (with `alloc`); IO, parsing and serialization live
//! in the companion CLI crate.

#![no_std]

extern crate alloc;

pub mod combinators;
pub mod gen;
pub mod karoubi;
pub mod presheaf;
pub mod report;
pub mod retracts;
pub mod rewrite;
pub mod term;
pub mod theory;

/// The RNG used for all seeded sampling. ChaCha8 keeps streams reproducible
/// across platforms and releases.
pub type SeedRng = rand_chacha::ChaCha8Rng;

pub use term::{beta_eq, normalize, EqResult, NormalForm, Normalized, Term, TermError};
