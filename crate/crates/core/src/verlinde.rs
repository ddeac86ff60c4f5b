//! Verlinde dimensions: the exact residue value D and the finite sine sum V.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::rational::{big, factorial_q, frac, int, is_integer, minus_one_pow, powi, rat, to_f64};
use crate::exact::{bernoulli_series, MultiPoly, RatFunc, Rational};
use crate::residue::{iterated_residue, EulerFactor, ExpTerm, Expression};
use crate::su::{bracket, RootSystem};

pub const DEFAULT_DIGITS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerlindeSpec {
    pub n: usize,
    pub d: i64,
    pub g: usize,
    pub k: u64,
}

impl VerlindeSpec {
    pub fn new(n: usize, d: i64, g: usize, k: u64) -> Self {
        VerlindeSpec { n, d, g, k }
    }

    /// r = k + n.
    pub fn r(&self) -> u64 {
        self.k + self.n as u64
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return invalid(format!("n must be at least 2, got {}", self.n));
        }
        if self.g < 2 {
            return invalid(format!("genus must be at least 2, got {}", self.g));
        }
        if self.d.gcd(&(self.n as i64)) != 1 {
            return invalid(format!("gcd(n,d) must be 1, got n={}, d={}", self.n, self.d));
        }
        if !self.k.is_multiple_of(self.n as u64) {
            return invalid(format!("level k={} is not divisible by n={}", self.k, self.n));
        }
        Ok(())
    }
}

/// Coefficients of `(x / (e^{x/2} − e^{−x/2}))^{power}` up to `x^order`.
fn sinh_ratio_series(power: u32, order: usize) -> Vec<Rational> {
    // x/(e^x − 1) · e^{x/2}
    let b = bernoulli_series(order);
    let mut base = vec![Rational::zero(); order + 1];
    for (i, bi) in b.iter().enumerate().take(order + 1) {
        for j in 0..=order - i {
            base[i + j] += bi * powi(&rat(1, 2), j as i64) / factorial_q(j as u64);
        }
    }
    let mut out = vec![Rational::zero(); order + 1];
    out[0] = Rational::one();
    for _ in 0..power {
        let mut next = vec![Rational::zero(); order + 1];
        for (i, a) in out.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..=order - i {
                next[i + j] += a * &base[j];
            }
        }
        out = next;
    }
    out
}

/// The exact Verlinde dimension from the iterated residue.
pub fn verlinde_residue_d(spec: &VerlindeSpec) -> Result<Rational> {
    spec.validate()?;
    let rs = RootSystem::new(spec.n)?;
    let m = rs.rank();
    let g = spec.g;
    let r = int(spec.r() as i64);
    // Only total degree ≤ n₊(2g−2) in the sinh factors can reach the residue.
    let top = rs.num_positive_roots() * (2 * g - 2);
    let series = sinh_ratio_series(2 * g as u32 - 2, top);
    let mut s = MultiPoly::<Rational>::one(m);
    for (j, k) in rs.positive_roots() {
        let lin = MultiPoly::<Rational>::linear(&rs.root_form(j, k));
        let mut p = MultiPoly::zero(m);
        let mut pow = MultiPoly::one(m);
        for c in &series {
            if !c.is_zero() {
                p = p.add_ref(&pow.scale(c));
            }
            pow = pow.mul_truncated(&lin, top as u32);
        }
        s = s.mul_truncated(&p, top as u32);
    }
    let pre = minus_one_pow((rs.num_positive_roots() * (g - 1)) as u64) / factorial_q(spec.n as u64)
        * powi(&r, (m * g) as i64)
        * powi(&int(spec.n as i64), g as i64);
    let den = rs.varpi_poly::<Rational>().pow(2 * g as u32 - 2);
    let rat_part = RatFunc::new(s.scale(&pre), &den)?;
    let c = rs.tilde_c(spec.d)?;
    let euler: Vec<EulerFactor> = (0..m).map(|j| EulerFactor::new(j, r.clone(), 1)).collect();
    let mut expr = Expression::new(m);
    for w in rs.weyl_w_n_minus_1() {
        let gamma = bracket(&rs.act_point(&w, &c)).0;
        let exp = gamma.iter().map(|x| x * &r).collect();
        expr.push(ExpTerm::new(exp, rat_part.clone(), euler.clone()));
    }
    iterated_residue(&expr)
}

/// The sine sum, converted exactly from its binary floating-point value.
#[derive(Clone, Debug, PartialEq)]
pub struct VerlindeSum {
    pub real: Rational,
    pub imag: Rational,
    pub digits: usize,
    pub terms: usize,
}

impl VerlindeSum {
    pub fn decimal(&self) -> String {
        crate::exact::rational::to_decimal(&self.real, self.digits)
    }
}

const RM: RoundingMode = RoundingMode::ToEven;

fn precision_bits(digits: usize) -> usize {
    ((digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64).div_ceil(64) * 64
}

fn bf_rational(q: &Rational, p: usize, cc: &mut Consts) -> BigFloat {
    let num = BigFloat::parse(&q.numer().to_string(), Radix::Dec, p, RM, cc);
    let den = BigFloat::parse(&q.denom().to_string(), Radix::Dec, p, RM, cc);
    num.div(&den, p, RM)
}

/// Exact value of a finite binary float.
pub(crate) fn bf_to_rational(x: &BigFloat) -> Result<Rational> {
    if x.is_zero() {
        return Ok(Rational::zero());
    }
    let (words, _, sign, exponent, _) =
        x.as_raw_parts().ok_or_else(|| Error::Computation("non-finite floating-point value".into()))?;
    let mut digits: Vec<u32> = Vec::with_capacity(words.len() * 2);
    for w in words {
        let w = *w;
        digits.push(w as u32);
        digits.push((w >> 32) as u32);
    }
    let mant = BigInt::from(BigUint::new(digits));
    let shift = exponent as i64 - 64 * words.len() as i64;
    let mut v = big(&mant) * powi(&int(2), shift);
    if sign == Sign::Neg {
        v = -v;
    }
    Ok(v)
}

/// Regular dominant weights λ = Σ l_j ŵ_j with all l_j ≥ 1 and Σ l_j < r, in lexicographic order.
pub fn alcove_weights(rank: usize, r: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![1u64; rank];
    fn rec(i: usize, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let left = (cur.len() - i - 1) as u64;
        let mut l = 1;
        while l + left <= budget {
            cur[i] = l;
            rec(i + 1, budget - l, cur, out);
            l += 1;
        }
    }
    if r > rank as u64 {
        rec(0, r - 1, &mut cur, &mut out);
    }
    out
}

/// The Verlinde sine sum at `digits` decimal digits of working precision.
pub fn verlinde_sum_v(spec: &VerlindeSpec, digits: usize) -> Result<VerlindeSum> {
    spec.validate()?;
    let rs = RootSystem::new(spec.n)?;
    let p = precision_bits(digits);
    let mut cc = Consts::new().map_err(|e| Error::Computation(format!("float constants: {e:?}")))?;
    let r = spec.r();
    let pi = cc.pi(p, RM);
    let two = BigFloat::from_u64(2, p);
    // 2 sin(π m / r) for m = 1..r−1
    let sines: Vec<BigFloat> = (0..r)
        .map(|mm| {
            let arg = pi.mul(&BigFloat::from_u64(mm, p), p, RM).div(&BigFloat::from_u64(r, p), p, RM);
            two.mul(&arg.sin(p, RM, &mut cc), p, RM)
        })
        .collect();
    let c = rs.tilde_c(spec.d)?;
    let roots = rs.positive_roots();
    let mut re = BigFloat::from_u64(0, p);
    let mut im = BigFloat::from_u64(0, p);
    let weights = alcove_weights(rs.rank(), r);
    for l in &weights {
        let mut den = BigFloat::from_u64(1, p);
        for &(j, k) in &roots {
            let pairing: u64 = l[j..k].iter().sum();
            den = den.mul(&sines[pairing as usize], p, RM);
        }
        den = den.powi(2 * spec.g - 2, p, RM);
        // e^{−2πi⟨λ−ρ, c̃⟩}
        let theta = frac(&-l.iter().zip(&c.0).fold(Rational::zero(), |acc, (&lj, gj)| acc + gj * int(lj as i64 - 1)));
        let angle = two.mul(&pi, p, RM).mul(&bf_rational(&theta, p, &mut cc), p, RM);
        re = re.add(&angle.cos(p, RM, &mut cc).div(&den, p, RM), p, RM);
        im = im.add(&angle.sin(p, RM, &mut cc).neg().div(&den, p, RM), p, RM);
    }
    let scale = powi(&int(spec.n as i64), spec.g as i64 - 1) * powi(&int(r as i64), (rs.rank() * (spec.g - 1)) as i64);
    Ok(VerlindeSum {
        real: bf_to_rational(&re)? * &scale,
        imag: bf_to_rational(&im)? * &scale,
        digits,
        terms: weights.len(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerlindeReport {
    pub spec: VerlindeSpec,
    pub d: Rational,
    pub v: VerlindeSum,
    /// Failed assertions; empty when the check passes.
    pub failures: Vec<String>,
}

impl VerlindeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// D must be a non-negative integer and agree with V to relative 1e−9.
pub fn verlinde_check(spec: &VerlindeSpec, digits: usize) -> Result<VerlindeReport> {
    let d = verlinde_residue_d(spec)?;
    let v = verlinde_sum_v(spec, digits)?;
    let mut failures = Vec::new();
    if !is_integer(&d) {
        failures.push(format!("D = {d} is not an integer"));
    }
    if d.is_negative() {
        failures.push(format!("D = {d} is negative"));
    }
    let tol = rat(1, 1_000_000_000) * d.abs().max(Rational::one());
    if (&v.real - &d).abs() >= tol {
        failures.push(format!("|V - D| = {:e} exceeds tolerance", to_f64(&(&v.real - &d).abs())));
    }
    if v.imag.abs() >= tol {
        failures.push(format!("imaginary part {:e} of V does not vanish", to_f64(&v.imag)));
    }
    Ok(VerlindeReport { spec: *spec, d, v, failures })
}
