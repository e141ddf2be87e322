//! Exact weight distributions of code ensembles built by the Plotkin
//! construction `(u + vP, v)` with a uniformly random interleaver `P`.
//!
//! The library is organized bottom-up:
//!
//! * [`combinatorics`]: big-integer binomials and the ensemble coefficient.
//! * [`enumerator`]: the [`WeightEnumerator`] value type and its text/JSON forms.
//! * [`plotkin`]: combining two component enumerators.
//! * [`codetree`]: multilevel constructions (Reed-Muller and polar-style trees).
//! * [`oracle`]: brute-force and permutation-averaging ground truth.
//! * [`bounds`]: a truncated union bound that consumes (partial) spectra.
//! * [`cli`]: the command-line front end.

pub mod bounds;
pub mod cli;
pub mod codetree;
pub mod combinatorics;
pub mod enumerator;
pub mod error;
pub mod oracle;
pub mod plotkin;

pub use codetree::CodeTree;
pub use enumerator::WeightEnumerator;
pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use oracle::{BinaryMatrix, Permutation};
