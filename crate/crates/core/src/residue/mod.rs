//! Expressions closed under one-variable residues and the iterated-residue evaluator.

pub mod engine;
pub mod expr;
pub mod series;

pub use engine::{iterated_residue, res_plus, residue_single, scalar_value};
pub use expr::{EulerFactor, ExpTerm, Expression};
pub use series::{expand_in, pole_order, LaurentSeries};

#[cfg(test)]
mod tests;
