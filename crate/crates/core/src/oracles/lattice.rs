//! Floating-point lattice sums with a reduction order independent of the thread count.

use rayon::prelude::*;

use crate::exact::rational::to_f64;
use crate::exact::{MultiPoly, Rational};

/// Lattice-sum truncation: coordinates up to `cutoff`, compared against `2 · cutoff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSumConfig {
    pub cutoff: i64,
    /// Number of successive doublings used for the convergence diagnostic.
    pub doublings: u32,
}

impl LatticeSumConfig {
    pub fn new(cutoff: i64) -> Self {
        LatticeSumConfig { cutoff, doublings: 1 }
    }
}

/// A polynomial with f64 coefficients for fast evaluation at integer points.
#[derive(Clone, Debug)]
pub struct F64Poly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl F64Poly {
    pub fn new(p: &MultiPoly<Rational>) -> Self {
        F64Poly { terms: p.terms().map(|(m, c)| (m.0.to_vec(), to_f64(c))).collect() }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (&k, &v)| acc * v.powi(k as i32))).sum()
    }
}

const BLOCK: i64 = 256;

/// Σ f(l) over l ∈ [lo, hi]^rank, summed in fixed blocks of the first coordinate.
pub fn box_sum(rank: usize, lo: i64, hi: i64, f: impl Fn(&[i64]) -> (f64, f64) + Sync) -> (f64, f64) {
    let starts: Vec<i64> = (lo..=hi).step_by(BLOCK as usize).collect();
    let parts: Vec<(f64, f64)> = starts
        .par_iter()
        .map(|&s| {
            let mut acc = (0.0, 0.0);
            let mut l = vec![0i64; rank];
            for first in s..=(s + BLOCK - 1).min(hi) {
                l[0] = first;
                inner(&mut l, 1, lo, hi, &f, &mut acc);
            }
            acc
        })
        .collect();
    parts.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1))
}

fn inner(l: &mut Vec<i64>, i: usize, lo: i64, hi: i64, f: &impl Fn(&[i64]) -> (f64, f64), acc: &mut (f64, f64)) {
    if i == l.len() {
        let (re, im) = f(l);
        acc.0 += re;
        acc.1 += im;
        return;
    }
    for v in lo..=hi {
        l[i] = v;
        inner(l, i + 1, lo, hi, f, acc);
    }
}

/// e^{2πiθ} for a rational angle, reduced mod 1 before the trig call.
pub fn phase(theta: &Rational) -> (f64, f64) {
    let t = to_f64(&crate::exact::rational::frac(theta)) * std::f64::consts::TAU;
    (t.cos(), t.sin())
}

pub fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// i^k as a complex pair.
pub fn i_pow(k: i64) -> (f64, f64) {
    match k.rem_euclid(4) {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}
