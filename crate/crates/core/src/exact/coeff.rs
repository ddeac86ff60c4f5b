use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Coefficient ring for polynomials and rational functions: the rationals or the δ-jet ring.
///
/// Constructors return "scalar" elements that combine with any jet shape.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + Zero + One + 'static {
    fn from_rational(r: &Rational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// The value as a plain rational, if it carries no nilpotent part.
    fn as_rational(&self) -> Option<Rational>;
    /// Deterministic text rendering used in debug dumps.
    fn render(&self) -> String;

    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.neg_ref());
    }
}

impl Coeff for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}
