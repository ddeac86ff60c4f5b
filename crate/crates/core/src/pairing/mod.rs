//! Intersection pairings assembled from the iterated-residue formulas.

pub mod qpoly;
pub mod routes;
pub mod spec;

pub use qpoly::QPolynomial;
pub use routes::{
    binverse_identity_check, epsilon_coefficient, epsilon_scaled_pairing, integrand_mainab, pair, pairing_a, pairing_b,
    pairing_f, BinverseReport, MainAbVariant, B_PAIR_SIGN,
};
pub use spec::{PairingResult, PairingSpec, Route};
