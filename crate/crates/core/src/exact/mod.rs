//! Exact scalars, Bernoulli numbers, δ-jets, polynomials and rational functions.

pub mod bernoulli;
pub mod coeff;
pub mod jet;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use bernoulli::{bernoulli, bernoulli_series};
pub use coeff::Coeff;
pub use jet::{jet_extract, DeltaJet, JetShape};
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::{ratfunc_arith, RatFunc, RatOp};
pub use rational::{int, parse_rational, rat, Rational};
