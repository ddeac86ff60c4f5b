//! Truncated Witten lattice sums over dominant regular weights.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::lattice::{box_sum, cmul, i_pow, F64Poly, LatticeSumConfig};
use crate::error::{invalid, Result};
use crate::exact::rational::int;
use crate::exact::{MultiPoly, Rational};
use crate::su::RootSystem;

#[derive(Clone, Debug, PartialEq)]
pub struct WittenReport {
    /// Approximation of the pairing at the largest cutoff.
    pub value: f64,
    /// Imaginary residue of the same sum; vanishes in exact arithmetic.
    pub imag: f64,
    /// Power of π pulled out of the summand, `Σ r·m_r − n₊(2g−2)`.
    pub pi_exponent: i64,
    /// Values at cutoff, 2·cutoff, … (one per doubling plus the first).
    pub sequence: Vec<f64>,
    /// Relative change between the last two cutoffs.
    pub window: f64,
}

/// `c^ρ n^g (−1)^{n₊(g−1)} Σ_λ c^{−λ} ∏τ_r(2πiλ)^{m_r} / ϖ(2πiλ)^{2g−2}` over λ = Σ l_j ŵ_j, 1 ≤ l_j ≤ N.
pub fn witten_sum(
    n: usize,
    d: i64,
    g: usize,
    m: &BTreeMap<usize, u32>,
    config: &LatticeSumConfig,
) -> Result<WittenReport> {
    if g < 2 {
        return invalid(format!("genus must be at least 2, got {g}"));
    }
    if config.cutoff < 1 {
        return invalid("cutoff must be positive");
    }
    let rs = RootSystem::new(n)?;
    let c = rs.tilde_c(d)?;
    let rank = rs.rank();
    let mut num = MultiPoly::<Rational>::one(rank);
    let mut degree = 0i64;
    for (&r, &e) in m {
        num = num.mul_ref(&rs.tau_poly::<Rational>(r)?.pow(e));
        degree += (r as i64) * e as i64;
    }
    let pi_exponent = degree - (rs.num_positive_roots() * (2 * g - 2)) as i64;
    let num = F64Poly::new(&num);
    let den = F64Poly::new(&rs.varpi_poly::<Rational>().pow(2 * g as u32 - 2));
    // c^{−λ} = e^{−2πi Σ γ_j l_j}; γ_j ∈ (1/n)ℤ so the phase depends on Σ nγ_j l_j mod n.
    let steps: Vec<i64> = c.0.iter().map(|gj| (gj * int(n as i64)).to_integer().to_i64().expect("small")).collect();
    let phases: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = -std::f64::consts::TAU * k as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let term = |l: &[i64]| {
        let x: Vec<f64> = l.iter().map(|&v| v as f64).collect();
        let k = l.iter().zip(&steps).map(|(a, b)| a * b).sum::<i64>().rem_euclid(n as i64) as usize;
        let w = num.eval(&x) / den.eval(&x);
        (phases[k].0 * w, phases[k].1 * w)
    };
    let c_rho = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let sign = if (rs.num_positive_roots() * (g - 1)).is_multiple_of(2) { 1.0 } else { -1.0 };
    let pre = c_rho * sign * (n as f64).powi(g as i32) * (std::f64::consts::TAU).powi(pi_exponent as i32);
    let mut sequence = Vec::new();
    let mut last = (0.0, 0.0);
    for k in 0..=config.doublings {
        let cutoff = config.cutoff << k;
        let s = box_sum(rank, 1, cutoff, term);
        last = cmul(s, i_pow(pi_exponent));
        sequence.push(pre * last.0);
    }
    let window = match sequence.len() {
        0 | 1 => f64::NAN,
        k => ((sequence[k - 1] - sequence[k - 2]) / sequence[k - 1]).abs(),
    };
    Ok(WittenReport { value: *sequence.last().expect("nonempty"), imag: pre * last.1, pi_exponent, sequence, window })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_genus_two() {
        let r = witten_sum(2, 1, 2, &BTreeMap::new(), &LatticeSumConfig::new(20_000)).unwrap();
        assert!((r.value - 1.0 / 12.0).abs() < 1e-8, "{r:?}");
        assert_eq!(r.pi_exponent, -2);
        assert!(r.imag.abs() < 1e-12);
    }
}
