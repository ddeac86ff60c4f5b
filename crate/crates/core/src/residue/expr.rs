//! Expression IR: finite sums of `exp(λ·Y) · R(Y) · ∏ (e^{c_j Y_j} − 1)^{−m_j}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exact::rational::int;
use crate::exact::{Coeff, MultiPoly, RatFunc, Rational};

/// The factor `(e^{scale·Y_var} − 1)^{−power}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EulerFactor {
    pub var: usize,
    pub scale: Rational,
    pub power: u32,
}

impl EulerFactor {
    pub fn new(var: usize, scale: Rational, power: u32) -> Self {
        assert!(!scale.is_zero(), "euler factor needs a nonzero scale");
        EulerFactor { var, scale, power }
    }
}

/// Sorts by (variable, scale) and merges equal factors.
fn normalize_euler(mut e: Vec<EulerFactor>) -> Vec<EulerFactor> {
    e.sort();
    let mut out: Vec<EulerFactor> = Vec::with_capacity(e.len());
    for f in e {
        if f.power == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.var == f.var && last.scale == f.scale => last.power += f.power,
            _ => out.push(f),
        }
    }
    out
}

/// Structural key of a term: exponential coefficients and euler factors.
pub type TermKey = (Vec<Rational>, Vec<EulerFactor>);

#[derive(Clone, Debug)]
pub struct ExpTerm<C> {
    pub exp: Vec<Rational>,
    pub rat: RatFunc<C>,
    pub euler: Vec<EulerFactor>,
}

impl<C: Coeff> ExpTerm<C> {
    pub fn new(exp: Vec<Rational>, rat: RatFunc<C>, euler: Vec<EulerFactor>) -> Self {
        assert_eq!(exp.len(), rat.nvars(), "one exponential coefficient per variable");
        ExpTerm { exp, rat, euler: normalize_euler(euler) }
    }

    /// A term without exponential or euler part.
    pub fn rational(rat: RatFunc<C>) -> Self {
        let n = rat.nvars();
        Self::new(vec![Rational::zero(); n], rat, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.rat.nvars()
    }

    pub fn key(&self) -> TermKey {
        (self.exp.clone(), self.euler.clone())
    }

    pub fn euler_in(&self, var: usize) -> impl Iterator<Item = &EulerFactor> {
        self.euler.iter().filter(move |f| f.var == var)
    }

    /// Symbolic derivative in one variable, as an expression in the same class.
    pub fn derivative(&self, var: usize) -> Expression<C> {
        let mut out = Expression::new(self.nvars());
        // exponential part
        if !self.exp[var].is_zero() {
            out.push(ExpTerm::new(self.exp.clone(), self.rat.scale(&self.exp[var]), self.euler.clone()));
        }
        // rational part
        out.push(ExpTerm::new(self.exp.clone(), self.rat.derivative(var), self.euler.clone()));
        // d/dY (e^{cY}−1)^{−m} = −m·c·[(e^{cY}−1)^{−m} + (e^{cY}−1)^{−m−1}]
        for (i, f) in self.euler.iter().enumerate() {
            if f.var != var {
                continue;
            }
            let k = -(int(f.power as i64) * &f.scale);
            for bump in 0..2u32 {
                let mut e = self.euler.clone();
                e[i].power += bump;
                out.push(ExpTerm::new(self.exp.clone(), self.rat.scale(&k), e));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.exp.iter().any(|c| !c.is_zero()) {
            let parts: Vec<String> = self
                .exp
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("{}*Y{}", c, i + 1))
                .collect();
            s.push_str(&format!("exp({})*", parts.join(" + ")));
        }
        s.push_str(&self.rat.render());
        for f in &self.euler {
            s.push_str(&format!("*(exp({}*Y{})-1)^-{}", f.scale, f.var + 1, f.power));
        }
        s
    }
}

/// Sum of terms with structurally identical terms merged; iteration order is canonical.
#[derive(Clone, Debug)]
pub struct Expression<C> {
    nvars: usize,
    terms: BTreeMap<TermKey, RatFunc<C>>,
}

impl<C: Coeff> Expression<C> {
    pub fn new(nvars: usize) -> Self {
        Expression { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = ExpTerm<C>>) -> Self {
        let mut e = Self::new(nvars);
        for t in terms {
            e.push(t);
        }
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, t: ExpTerm<C>) {
        if t.rat.is_zero() {
            return;
        }
        let key = t.key();
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, t.rat);
            }
            Some(old) => {
                let sum = old.add_ref(&t.rat);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for t in other.terms() {
            self.push(t);
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.nvars, self.terms().map(|t| ExpTerm::new(t.exp, t.rat.scale(r), t.euler)))
    }

    pub fn mul_poly(&self, p: &MultiPoly<C>) -> Self {
        Self::from_terms(self.nvars, self.terms().map(|t| ExpTerm::new(t.exp, t.rat.mul_poly(p), t.euler)))
    }

    pub fn terms(&self) -> impl Iterator<Item = ExpTerm<C>> + '_ {
        self.terms.iter().map(|((exp, euler), rat)| ExpTerm {
            exp: exp.clone(),
            rat: rat.clone(),
            euler: euler.clone(),
        })
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::new(self.nvars);
        for t in self.terms() {
            out.add_assign(&t.derivative(var));
        }
        out
    }

    /// Deterministic one-term-per-line dump used by golden tests.
    pub fn dump(&self) -> String {
        let lines: Vec<String> = self.terms().map(|t| t.render()).collect();
        if lines.is_empty() {
            "0".to_string()
        } else {
            lines.join("\n")
        }
    }
}

impl<C: Coeff> fmt::Display for Expression<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}
