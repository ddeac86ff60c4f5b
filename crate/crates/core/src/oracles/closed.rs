//! Rank-two closed forms in Bernoulli numbers, with π powers tracked symbolically.

use num_traits::{Signed, Zero};

use crate::error::{invalid, Result};
use crate::exact::rational::{factorial_q, int, powi, rat};
use crate::exact::{bernoulli, Rational};

/// `coeff · π^{pi_exponent}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRational {
    pub coeff: Rational,
    pub pi_exponent: i64,
}

impl PiRational {
    pub fn rational(coeff: Rational) -> Self {
        PiRational { coeff, pi_exponent: 0 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let coeff = &self.coeff * &other.coeff;
        let pi_exponent = if coeff.is_zero() { 0 } else { self.pi_exponent + other.pi_exponent };
        PiRational { coeff, pi_exponent }
    }

    /// The value as a plain rational, when no power of π remains.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.pi_exponent == 0).then_some(&self.coeff)
    }
}

/// ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!), for k ≥ 1.
fn zeta_even(k: u64) -> PiRational {
    let b = bernoulli(2 * k as usize);
    let coeff = b.abs() * powi(&int(2), 2 * k as i64) / (int(2) * factorial_q(2 * k));
    PiRational { coeff, pi_exponent: 2 * k as i64 }
}

/// η(s) = (1 − 2^{1−s}) ζ(s) at even s ≥ 2, and the Abel value η(0) = 1/2 when `regularize`.
fn eta_even(s: u64, regularize: bool) -> Result<PiRational> {
    if s == 0 {
        return if regularize {
            Ok(PiRational::rational(rat(1, 2)))
        } else {
            invalid("η(0) needs the regularized route")
        };
    }
    if s % 2 == 1 {
        return invalid(format!("η({s}) has no closed form here"));
    }
    let factor = int(1) - powi(&int(2), 1 - s as i64);
    Ok(PiRational::rational(factor).mul(&zeta_even(s / 2)))
}

/// Thaddeus's series `(2^{2g} / (2 (8π²)^{g−1})) π^{2j} η(2g − 2 − 2j)` for the pairing a₂^j exp(f₂).
///
/// `j = g − 1` is only accepted with `regularize`, using η(0) = 1/2.
pub fn thaddeus_value(g: usize, j: usize, regularize: bool) -> Result<PiRational> {
    if g < 2 {
        return invalid(format!("genus must be at least 2, got {g}"));
    }
    if j > g - 1 || (j == g - 1 && !regularize) {
        return invalid(format!("j={j} outside 0..={} (j = g−1 needs regularization)", g - 2));
    }
    let pre = PiRational {
        coeff: powi(&int(2), 2 * g as i64) / (int(2) * powi(&int(8), g as i64 - 1)),
        pi_exponent: -2 * (g as i64 - 1) + 2 * j as i64,
    };
    Ok(pre.mul(&eta_even((2 * g - 2 - 2 * j) as u64, regularize)?))
}

/// `(2^{g−1} − 2^{2−g}) |B_{2g−2}| / (2g − 2)!`.
pub fn svol_value(g: usize) -> Result<Rational> {
    if g < 2 {
        return invalid(format!("genus must be at least 2, got {g}"));
    }
    let g = g as i64;
    Ok((powi(&int(2), g - 1) - powi(&int(2), 2 - g)) * bernoulli(2 * g as usize - 2).abs()
        / factorial_q(2 * g as u64 - 2))
}
