//! Rational functions with a factored denominator `Y^α · ∏ f_i^{e_i}`.
//!
//! Denominator factors have rational coefficients, no monomial content and
//! leading coefficient one, so every scalar lives in the numerator.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::coeff::Coeff;
use super::poly::{Monomial, MultiPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

type Factor = MultiPoly<Rational>;

#[derive(Clone, Debug)]
pub struct RatFunc<C> {
    num: MultiPoly<C>,
    mono: Monomial,
    factors: BTreeMap<Factor, u32>,
}

/// Splits `p = scalar · Y^mono · h` with `h` monic and free of monomial content.
pub fn split_factor(p: &Factor) -> Result<(Rational, Monomial, Option<Factor>)> {
    if p.is_zero() {
        return Err(Error::DivisionByZero("zero polynomial in a denominator".into()));
    }
    let mono = p.monomial_content();
    let q = p.div_monomial(&mono);
    if let Some(c) = q.as_constant() {
        return Ok((c, mono, None));
    }
    let lc = q.leading().expect("nonconstant").1.clone();
    let h = q.scale(&lc.recip());
    Ok((lc, mono, Some(h)))
}

impl<C: Coeff> RatFunc<C> {
    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn from_poly(num: MultiPoly<C>) -> Self {
        let n = num.nvars();
        RatFunc { num, mono: Monomial::one(n), factors: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    /// `num / den` with `den` kept as a single factor after removing scalars and monomials.
    pub fn new(num: MultiPoly<C>, den: &MultiPoly<Rational>) -> Result<Self> {
        let n = num.nvars();
        Self::from_parts(num, Monomial::one(n), [(den.clone(), 1)])
    }

    /// `num / (Y^mono · ∏ f^e)`, canonicalizing each factor.
    pub fn from_parts(
        num: MultiPoly<C>,
        mono: Monomial,
        factors: impl IntoIterator<Item = (Factor, u32)>,
    ) -> Result<Self> {
        let mut r = RatFunc { num, mono, factors: BTreeMap::new() };
        let mut scalar = Rational::one();
        for (f, e) in factors {
            if e == 0 {
                continue;
            }
            let (s, m, h) = split_factor(&f)?;
            for _ in 0..e {
                scalar *= &s;
            }
            for (a, b) in r.mono.0.iter_mut().zip(m.0.iter()) {
                *a += b * e;
            }
            if let Some(h) = h {
                *r.factors.entry(h).or_insert(0) += e;
            }
        }
        if !scalar.is_one() {
            r.num = r.num.scale(&scalar.recip());
        }
        Ok(r.normalized())
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly<C> {
        &self.num
    }

    pub fn denominator_monomial(&self) -> &Monomial {
        &self.mono
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Factor, u32)> {
        self.factors.iter().map(|(f, &e)| (f, e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> Factor {
        let mut d = Factor::term(self.mono.clone(), Rational::one());
        for (f, &e) in &self.factors {
            d = d.mul_ref(&f.pow(e));
        }
        d
    }

    /// Scalar value when nothing depends on the variables.
    pub fn as_constant(&self) -> Option<C> {
        if self.num.is_zero() {
            return Some(C::zero());
        }
        if !self.mono.is_one() || !self.factors.is_empty() {
            return None;
        }
        self.num.as_constant()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.mono = Monomial::one(self.num.nvars());
            self.factors.clear();
            return self;
        }
        let g = self.num.monomial_content().gcd(&self.mono);
        if !g.is_one() {
            self.num = self.num.div_monomial(&g);
            self.mono = g.quotient_of(&self.mono);
        }
        self
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(mut self) -> Self {
        self = self.normalized();
        if self.num.is_zero() {
            return self;
        }
        let keys: Vec<Factor> = self.factors.keys().cloned().collect();
        for f in keys {
            loop {
                let e = self.factors[&f];
                if e == 0 || self.num.total_degree() < f.total_degree() {
                    break;
                }
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        if e == 1 {
                            self.factors.remove(&f);
                            break;
                        }
                        self.factors.insert(f.clone(), e - 1);
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn complement(&self, mono: &Monomial, factors: &BTreeMap<Factor, u32>) -> MultiPoly<C> {
        let mut p = MultiPoly::<C>::term(self.mono.quotient_of(mono), C::one());
        for (f, &e) in factors {
            let have = self.factors.get(f).copied().unwrap_or(0);
            if e > have {
                p = p.mul_rat(&f.pow(e - have));
            }
        }
        p
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.mono == other.mono && self.factors == other.factors {
            let r =
                RatFunc { num: self.num.add_ref(&other.num), mono: self.mono.clone(), factors: self.factors.clone() };
            return r.normalized();
        }
        let mono = self.mono.lcm(&other.mono);
        let mut factors = self.factors.clone();
        for (f, &e) in &other.factors {
            let slot = factors.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let a = self.num.mul_ref(&self.complement(&mono, &factors));
        let b = other.num.mul_ref(&other.complement(&mono, &factors));
        RatFunc { num: a.add_ref(&b), mono, factors }.normalized()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), mono: self.mono.clone(), factors: self.factors.clone() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RatFunc { num: self.num.scale(r), mono: self.mono.clone(), factors: self.factors.clone() }.normalized()
    }

    pub fn mul_poly(&self, p: &MultiPoly<C>) -> Self {
        RatFunc { num: self.num.mul_ref(p), mono: self.mono.clone(), factors: self.factors.clone() }.normalized()
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (f, &e) in &other.factors {
            *factors.entry(f.clone()).or_insert(0) += e;
        }
        RatFunc { num: self.num.mul_ref(&other.num), mono: self.mono.mul(&other.mono), factors }.reduce()
    }

    /// Division; the divisor's numerator must carry rational coefficients.
    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero("rational function divisor is zero".into()));
        }
        let mut den = Factor::zero(other.nvars());
        for (m, c) in other.num.terms() {
            let r = c
                .as_rational()
                .ok_or_else(|| Error::Computation("division by a polynomial with nilpotent coefficients".into()))?;
            den.add_term(m.clone(), r);
        }
        let mut num = self.num.mul_monomial(&other.mono);
        for (f, &e) in &other.factors {
            num = num.mul_rat(&f.pow(e));
        }
        let mut parts: Vec<(Factor, u32)> = self.factors.iter().map(|(f, &e)| (f.clone(), e)).collect();
        parts.push((den, 1));
        Ok(Self::from_parts(num, self.mono.clone(), parts)?.reduce())
    }

    pub fn derivative(&self, var: usize) -> Self {
        // d(N/D) = (N'·D_v - N·Σ e·f'·D_v/f)/(D·D_v) with D_v the factors involving var.
        let n = self.nvars();
        let mut new_mono = self.mono.clone();
        let mut new_factors = self.factors.clone();
        let mut dv = MultiPoly::<Rational>::one(n);
        let a = self.mono.0[var];
        if a > 0 {
            new_mono.0[var] += 1;
            dv = dv.mul_ref(&MultiPoly::var(n, var));
        }
        let involved: Vec<(&Factor, u32)> =
            self.factors.iter().filter(|(f, _)| f.depends_on(var)).map(|(f, &e)| (f, e)).collect();
        for (f, _) in &involved {
            *new_factors.get_mut(*f).expect("present") += 1;
            dv = dv.mul_ref(f);
        }
        let mut num = self.num.derivative(var).mul_rat(&dv);
        if a > 0 {
            let rest = dv.div_exact(&MultiPoly::var(n, var)).expect("contains var");
            num = num.sub_ref(&self.num.mul_rat(&rest.scale(&Rational::from_integer(a.into()))));
        }
        for (f, e) in &involved {
            let rest = dv.div_exact(f).expect("contains factor");
            let term = f.derivative(var).mul_ref(&rest).scale(&Rational::from_integer((*e).into()));
            num = num.sub_ref(&self.num.mul_rat(&term));
        }
        RatFunc { num, mono: new_mono, factors: new_factors }.reduce()
    }

    /// Substitutes each variable by a rational polynomial (used for Weyl transport).
    pub fn substitute(&self, subs: &[MultiPoly<Rational>]) -> Result<Self> {
        let lifted: Vec<MultiPoly<C>> = subs.iter().map(|s| s.lift()).collect();
        let num = self.num.compose(&lifted);
        let n = num.nvars();
        let mut parts: Vec<(Factor, u32)> = Vec::new();
        for (i, &e) in self.mono.0.iter().enumerate() {
            if e > 0 {
                parts.push((subs[i].clone(), e));
            }
        }
        for (f, &e) in &self.factors {
            parts.push((f.compose(subs), e));
        }
        Ok(Self::from_parts(num, Monomial::one(n), parts)?.reduce())
    }

    pub fn render(&self) -> String {
        let mut den: Vec<String> = Vec::new();
        if !self.mono.is_one() {
            den.push(self.mono.render());
        }
        for (f, &e) in &self.factors {
            if e == 1 {
                den.push(format!("({})", f.render()));
            } else {
                den.push(format!("({})^{}", f.render(), e));
            }
        }
        if den.is_empty() {
            format!("({})", self.num.render())
        } else {
            format!("({})/({})", self.num.render(), den.join("*"))
        }
    }
}

impl<C: Coeff> PartialEq for RatFunc<C> {
    fn eq(&self, other: &Self) -> bool {
        self.sub_ref(other).is_zero()
    }
}

impl<C: Coeff> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Single entry point mirroring the three field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Mul,
    Div,
}

pub fn ratfunc_arith<C: Coeff>(op: RatOp, a: &RatFunc<C>, b: &RatFunc<C>) -> Result<RatFunc<C>> {
    match op {
        RatOp::Add => Ok(a.add_ref(b)),
        RatOp::Mul => Ok(a.mul_ref(b)),
        RatOp::Div => a.div_ref(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    type P = MultiPoly<Rational>;
    type R = RatFunc<Rational>;

    fn y(i: usize) -> P {
        P::var(2, i)
    }

    fn r(p: P) -> R {
        R::from_poly(p)
    }

    #[test]
    fn spec_examples() {
        let inv = R::new(P::one(2), &y(0)).unwrap();
        assert!(ratfunc_arith(RatOp::Add, &inv, &inv.neg()).unwrap().is_zero());

        let s = &y(0) + &y(1);
        let a = R::new(y(0), &s).unwrap();
        let prod = ratfunc_arith(RatOp::Mul, &a, &r(s.clone())).unwrap();
        assert_eq!(prod.numerator(), &y(0));
        assert!(prod.denominator_monomial().is_one());
        assert_eq!(prod.factors().count(), 0);

        let num = &y(0).pow(2) - &y(1).pow(2);
        let q = ratfunc_arith(RatOp::Div, &r(num), &r(&y(0) - &y(1))).unwrap();
        assert_eq!(q.numerator(), &(&y(0) + &y(1)));
        assert_eq!(q.factors().count(), 0);

        assert!(ratfunc_arith(RatOp::Div, &inv, &R::zero(2)).is_err());
    }

    #[test]
    fn scalars_move_to_numerator() {
        let f = R::new(P::one(2), &(&y(0).scale(&int(2)) + &y(1).scale(&int(4)))).unwrap();
        let (g, e) = f.factors().next().unwrap();
        assert_eq!(e, 1);
        assert_eq!(g.leading().unwrap().1, &int(1));
        assert_eq!(f.numerator(), &P::constant(2, rat(1, 2)));
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dY2 [Y1/(Y1+Y2)] = -Y1/(Y1+Y2)^2
        let s = &y(0) + &y(1);
        let f = R::new(y(0), &s).unwrap();
        let expect = R::from_parts(y(0).neg(), Monomial::one(2), [(s, 2)]).unwrap();
        assert_eq!(f.derivative(1), expect);
        // d/dY1 [1/Y1^2] = -2/Y1^3
        let g = R::from_parts(P::one(2), Monomial::var(2, 0, 2), []).unwrap();
        let dg = R::from_parts(P::constant(2, int(-2)), Monomial::var(2, 0, 3), []).unwrap();
        assert_eq!(g.derivative(0), dg);
    }
}
