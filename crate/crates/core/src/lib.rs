//! Exact intersection pairings on moduli of SU(n) bundles via iterated residues,
//! with Verlinde dimensions and lattice-sum oracles for cross-checking.

pub mod error;
pub mod exact;
pub mod oracles;
pub mod pairing;
pub mod residue;
pub mod selftest;
pub mod su;
pub mod verlinde;

pub use error::{Error, Result};
pub use exact::{DeltaJet, MultiPoly, RatFunc, Rational};
