//! Brute-force residue oracle: joint Laurent expansion on |Y₁| ≫ … ≫ |Y_m|.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::exact::rational::{binom_q, int, powi};
use crate::exact::{MultiPoly, RatFunc, Rational};
use crate::residue::{ExpTerm, Expression};
use crate::su::RootSystem;

/// `numerator / ∏ ℓ_i^{p_i}` with each ℓ_i a nonzero linear form.
#[derive(Clone, Debug, PartialEq)]
pub struct RootFraction {
    pub numerator: MultiPoly<Rational>,
    pub factors: Vec<(Vec<Rational>, u32)>,
}

impl RootFraction {
    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn pole_order(&self) -> u32 {
        self.factors.iter().map(|(_, p)| p).sum()
    }

    pub fn denominator(&self) -> MultiPoly<Rational> {
        self.factors.iter().fold(MultiPoly::one(self.nvars()), |acc, (l, p)| acc.mul_ref(&MultiPoly::linear(l).pow(*p)))
    }

    pub fn to_expression(&self) -> Result<Expression<Rational>> {
        let rat = RatFunc::new(self.numerator.clone(), &self.denominator())?;
        Ok(Expression::from_terms(self.nvars(), [ExpTerm::rational(rat)]))
    }
}

type Laurent = BTreeMap<Vec<i64>, Rational>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(Rational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn from_poly(p: &MultiPoly<Rational>) -> Laurent {
    p.terms().map(|(m, c)| (m.0.iter().map(|&e| e as i64).collect(), c.clone())).collect()
}

/// Expansion of ℓ^{−p} around its first variable, keeping `order + 1` terms.
fn expand_factor(l: &[Rational], p: u32, order: u32) -> Result<Laurent> {
    let Some(a) = l.iter().position(|c| !c.is_zero()) else {
        return invalid("zero linear form");
    };
    let c = &l[a];
    let mut rest = l.to_vec();
    rest[a] = Rational::zero();
    let rest = MultiPoly::<Rational>::linear(&rest);
    let mut out = Laurent::new();
    let mut pow = MultiPoly::one(l.len());
    let neg_p = -int(p as i64);
    for i in 0..=order {
        if i > 0 {
            pow = pow.mul_ref(&rest);
        }
        if pow.is_zero() {
            break;
        }
        // binom(−p, i) (c Y_a)^{−p−i} rest^i
        let k = binom_q(&neg_p, i as u64) * powi(c, -(p as i64) - i as i64);
        for (m, coeff) in pow.terms() {
            let mut e: Vec<i64> = m.0.iter().map(|&x| x as i64).collect();
            e[a] -= (p + i) as i64;
            let slot = out.entry(e).or_insert_with(Rational::zero);
            *slot += coeff * &k;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Coefficient of `∏ Y_j^{−1}` in the joint expansion.
pub fn joint_expansion_residue(f: &RootFraction) -> Result<Rational> {
    let order = 2 * f.pole_order() + f.numerator.total_degree() + 2;
    let mut acc = from_poly(&f.numerator);
    for (l, p) in &f.factors {
        acc = laurent_mul(&acc, &expand_factor(l, *p, order)?);
    }
    let target = vec![-1i64; f.nvars()];
    Ok(acc.get(&target).cloned().unwrap_or_else(Rational::zero))
}

/// A random fraction in `n − 1` variables with pole order at most `max_pole`.
pub fn random_expression(rng: &mut ChaCha8Rng, n: usize, max_pole: u32) -> Result<RootFraction> {
    let rs = RootSystem::new(n)?;
    let m = rs.rank();
    let roots = rs.positive_roots();
    let mut numerator = MultiPoly::<Rational>::zero(m);
    for _ in 0..rng.gen_range(1..=3) {
        let exps: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        numerator.add_term(crate::exact::Monomial::from_slice(&exps), int(c));
    }
    if numerator.is_zero() {
        numerator = MultiPoly::one(m);
    }
    let mut factors = Vec::new();
    let mut budget = rng.gen_range(1..=max_pole);
    while budget > 0 {
        let p = rng.gen_range(1..=budget.min(3));
        budget -= p;
        let form: Vec<Rational> = if rng.gen_bool(0.7) {
            let (j, k) = roots[rng.gen_range(0..roots.len())];
            rs.root_form(j, k)
        } else {
            loop {
                let v: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(-2..=2))).collect();
                if v.iter().any(|c| !c.is_zero()) {
                    break v;
                }
            }
        };
        factors.push((form, p));
    }
    Ok(RootFraction { numerator, factors })
}
