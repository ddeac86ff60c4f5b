//! Laurent expansion of a single term in one variable.

use num_traits::{One, Zero};

use super::expr::{EulerFactor, ExpTerm};
use crate::error::{Error, Result};
use crate::exact::bernoulli::bernoulli_series;
use crate::exact::rational::{factorial_q, powi, Rational};
use crate::exact::{Coeff, MultiPoly, RatFunc};

type QPoly = MultiPoly<Rational>;

/// Laurent series in `var` whose coefficients are rational functions of the other variables,
/// all sharing the outer exponential and euler factors.
#[derive(Clone, Debug)]
pub struct LaurentSeries<C> {
    pub var: usize,
    pub lowest: i64,
    pub coeffs: Vec<RatFunc<C>>,
    pub outer_exp: Vec<Rational>,
    pub outer_euler: Vec<EulerFactor>,
}

impl<C: Coeff> LaurentSeries<C> {
    /// Coefficient of `var^k` (zero outside the stored window).
    pub fn coeff(&self, k: i64) -> RatFunc<C> {
        let n = self.outer_exp.len();
        if k < self.lowest {
            return RatFunc::zero(n);
        }
        self.coeffs.get((k - self.lowest) as usize).cloned().unwrap_or_else(|| RatFunc::zero(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Highest exponent represented.
    pub fn order(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }
}

/// Precomputed pieces of the expansion of one term around `var = 0`.
struct Expansion<'a, C> {
    term: &'a ExpTerm<C>,
    var: usize,
    /// Exponent of `var` in front of the regular part.
    lowest: i64,
    /// Numerator coefficients `N_k` of `var^{k}` after removing `var^s`.
    num: Vec<MultiPoly<C>>,
    /// Regular denominator-and-scalar series `B_k`, each over `F^k · D0`.
    regular: Vec<QPoly>,
    /// Powers `F^k`.
    base_pows: Vec<QPoly>,
    /// Factors involving `var`: value at `var = 0` and exponent.
    involved: Vec<(QPoly, u32)>,
    scalar: Rational,
}

/// Pole order of the term in `var`, counting numerator vanishing.
pub fn pole_order<C: Coeff>(term: &ExpTerm<C>, var: usize) -> i64 {
    let a = term.rat.denominator_monomial().0[var] as i64;
    let s = term.rat.numerator().min_degree_in(var) as i64;
    let m: i64 = term.euler_in(var).map(|f| f.power as i64).sum();
    a + m - s
}

impl<'a, C: Coeff> Expansion<'a, C> {
    fn new(term: &'a ExpTerm<C>, var: usize, kmax: i64) -> Result<Option<Self>> {
        let rat = &term.rat;
        if rat.is_zero() {
            return Ok(None);
        }
        let lowest = -pole_order(term, var);
        let kmax = kmax - lowest;
        if kmax < 0 {
            return Ok(None);
        }
        let kmax = kmax as usize;
        let n = rat.nvars();

        // numerator split by powers of var, shifted by its valuation
        let s = rat.numerator().min_degree_in(var) as usize;
        let parts = rat.numerator().split_in(var);
        let num: Vec<MultiPoly<C>> =
            (0..=kmax).map(|k| parts.get(k + s).cloned().unwrap_or_else(|| MultiPoly::zero(n))).collect();

        // scalar series: exp(λ t) · ∏ (c t/(e^{c t}−1))^m
        let lam = &term.exp[var];
        let mut scalar_series: Vec<Rational> =
            (0..=kmax).map(|k| powi(lam, k as i64) / factorial_q(k as u64)).collect();
        let mut scalar = Rational::one();
        let bern = bernoulli_series(kmax);
        for f in term.euler_in(var) {
            let scaled: Vec<Rational> = bern.iter().enumerate().map(|(k, b)| b * powi(&f.scale, k as i64)).collect();
            for _ in 0..f.power {
                scalar_series = convolve_q(&scalar_series, &scaled, kmax);
            }
            scalar *= powi(&f.scale, -(f.power as i64));
        }

        // factor series: f^{-e} = Q_k var^k / f0^{e+k}
        let mut involved = Vec::new();
        let mut factor_series: Vec<Vec<QPoly>> = Vec::new();
        for (f, e) in rat.factors() {
            if !f.depends_on(var) {
                continue;
            }
            let fp = f.split_in(var);
            let f0 = fp[0].clone();
            if f0.is_zero() {
                return Err(Error::Computation(format!("factor {f} vanishes identically at Y{}=0", var + 1)));
            }
            let mut f0_pows = vec![QPoly::one(n)];
            let mut sk: Vec<QPoly> = vec![QPoly::one(n)];
            for k in 1..=kmax {
                let mut acc = QPoly::zero(n);
                for i in 1..=k.min(fp.len() - 1) {
                    if fp[i].is_zero() {
                        continue;
                    }
                    while f0_pows.len() < i {
                        let next = f0_pows.last().expect("nonempty").mul_ref(&f0);
                        f0_pows.push(next);
                    }
                    acc = acc.sub_ref(&fp[i].mul_ref(&sk[k - i]).mul_ref(&f0_pows[i - 1]));
                }
                sk.push(acc);
            }
            let mut q = sk.clone();
            for _ in 1..e {
                q = convolve_p(&q, &sk, kmax);
            }
            involved.push((f0, e));
            factor_series.push(q);
        }

        // common base F = ∏ f0; rescale each factor series by (F/f0)^k
        let base = involved.iter().fold(QPoly::one(n), |acc, (f0, _)| acc.mul_ref(f0));
        let mut base_pows = vec![QPoly::one(n)];
        for _ in 0..kmax {
            let next = base_pows.last().expect("nonempty").mul_ref(&base);
            base_pows.push(next);
        }
        let mut regular: Vec<QPoly> = scalar_series.iter().enumerate().map(|(k, c)| base_pows[k].scale(c)).collect();
        for (idx, q) in factor_series.iter().enumerate() {
            let q = if involved.len() == 1 {
                q.clone()
            } else {
                let cof = base.div_exact(&involved[idx].0).expect("F is a product of the f0");
                let mut p = QPoly::one(n);
                let mut out = Vec::with_capacity(q.len());
                for qk in q {
                    out.push(qk.mul_ref(&p));
                    p = p.mul_ref(&cof);
                }
                out
            };
            regular = convolve_p(&regular, &q, kmax);
        }

        Ok(Some(Expansion { term, var, lowest, num, regular, base_pows, involved, scalar }))
    }

    /// Coefficient of `var^k` as a rational function of the remaining variables.
    fn coefficient(&self, k: i64) -> Result<RatFunc<C>> {
        let n = self.term.nvars();
        let idx = k - self.lowest;
        if idx < 0 {
            return Ok(RatFunc::zero(n));
        }
        let idx = idx as usize;
        let mut acc = MultiPoly::<C>::zero(n);
        for i in 0..=idx {
            if self.num[i].is_zero() || self.regular[idx - i].is_zero() {
                continue;
            }
            let r = self.regular[idx - i].mul_ref(&self.base_pows[i]);
            acc = acc.add_ref(&self.num[i].mul_rat(&r));
        }
        if acc.is_zero() {
            return Ok(RatFunc::zero(n));
        }
        let acc = acc.scale(&self.scalar);
        let mut mono = self.term.rat.denominator_monomial().clone();
        mono.0[self.var] = 0;
        let mut factors: Vec<(QPoly, u32)> =
            self.term.rat.factors().filter(|(f, _)| !f.depends_on(self.var)).map(|(f, e)| (f.clone(), e)).collect();
        for (f0, e) in &self.involved {
            factors.push((f0.clone(), e + idx as u32));
        }
        Ok(RatFunc::from_parts(acc, mono, factors)?.reduce())
    }

    fn outer(&self) -> (Vec<Rational>, Vec<EulerFactor>) {
        let mut exp = self.term.exp.clone();
        exp[self.var] = Rational::zero();
        let euler = self.term.euler.iter().filter(|f| f.var != self.var).cloned().collect();
        (exp, euler)
    }
}

fn convolve_q(a: &[Rational], b: &[Rational], kmax: usize) -> Vec<Rational> {
    (0..=kmax)
        .map(|k| {
            let mut s = Rational::zero();
            for i in 0..=k {
                if i < a.len() && k - i < b.len() {
                    s += &a[i] * &b[k - i];
                }
            }
            s
        })
        .collect()
}

fn convolve_p(a: &[QPoly], b: &[QPoly], kmax: usize) -> Vec<QPoly> {
    let n = a.first().or(b.first()).map(|p| p.nvars()).unwrap_or(0);
    (0..=kmax)
        .map(|k| {
            let mut s = QPoly::zero(n);
            for i in 0..=k {
                if i < a.len() && k - i < b.len() && !a[i].is_zero() && !b[k - i].is_zero() {
                    s = s.add_ref(&a[i].mul_ref(&b[k - i]));
                }
            }
            s
        })
        .collect()
}

/// Expands a term in `var` up to and including `var^order`.
pub fn expand_in<C: Coeff>(term: &ExpTerm<C>, var: usize, order: i64) -> Result<LaurentSeries<C>> {
    let mut exp = term.exp.clone();
    exp[var] = Rational::zero();
    let euler: Vec<EulerFactor> = term.euler.iter().filter(|f| f.var != var).cloned().collect();
    let empty =
        |lowest| LaurentSeries { var, lowest, coeffs: Vec::new(), outer_exp: exp.clone(), outer_euler: euler.clone() };
    let Some(ex) = Expansion::new(term, var, order)? else {
        return Ok(empty(order + 1));
    };
    let mut coeffs = Vec::new();
    for k in ex.lowest..=order {
        coeffs.push(ex.coefficient(k)?);
    }
    // drop leading zeros
    let mut lowest = ex.lowest;
    let first = coeffs.iter().position(|c| !c.is_zero());
    match first {
        None => return Ok(empty(order + 1)),
        Some(i) => {
            coeffs.drain(..i);
            lowest += i as i64;
        }
    }
    Ok(LaurentSeries { var, lowest, coeffs, outer_exp: exp, outer_euler: euler })
}

/// Coefficient of `var^{-1}` of one term, as a term in the remaining variables.
pub fn residue_term<C: Coeff>(term: &ExpTerm<C>, var: usize) -> Result<Option<ExpTerm<C>>> {
    let Some(ex) = Expansion::new(term, var, -1)? else {
        return Ok(None);
    };
    let c = ex.coefficient(-1)?;
    if c.is_zero() {
        return Ok(None);
    }
    let (exp, euler) = ex.outer();
    Ok(Some(ExpTerm::new(exp, c, euler)))
}
