use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::exact::Rational;

/// A pairing request `∏ a_r^{m_r} f_r^{n_r} ∏ b_r^j · exp(f₂) [M(n,d)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSpec {
    pub n: usize,
    pub d: i64,
    pub g: usize,
    /// a-exponents `m_r`, keyed by `r ∈ 2..=n`.
    pub a: BTreeMap<usize, u32>,
    /// f-exponents `n_r`, keyed by `r ∈ 3..=n`.
    pub f: BTreeMap<usize, u32>,
    /// b-classes `(r, j)` with `1 ≤ j ≤ 2g`, in the order given.
    pub b: Vec<(usize, usize)>,
    pub epsilon: Option<Rational>,
}

impl PairingSpec {
    pub fn new(n: usize, d: i64, g: usize) -> Self {
        PairingSpec { n, d, g, a: BTreeMap::new(), f: BTreeMap::new(), b: Vec::new(), epsilon: None }
    }

    pub fn with_a(mut self, r: usize, m: u32) -> Self {
        if m > 0 {
            *self.a.entry(r).or_insert(0) += m;
        }
        self
    }

    pub fn with_f(mut self, r: usize, m: u32) -> Self {
        if m > 0 {
            *self.f.entry(r).or_insert(0) += m;
        }
        self
    }

    pub fn with_b(mut self, r: usize, j: usize) -> Self {
        self.b.push((r, j));
        self
    }

    pub fn with_epsilon(mut self, e: Rational) -> Self {
        self.epsilon = Some(e);
        self
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
        if let Some(&r) = self.a.keys().find(|&&r| r < 2 || r > self.n) {
            return invalid(format!("a_{r} does not exist for n={}", self.n));
        }
        if let Some(&r) = self.f.keys().find(|&&r| r < 3 || r > self.n) {
            return invalid(format!("f_{r} does not exist for n={} (f_2 enters only through exp f_2)", self.n));
        }
        for &(r, j) in &self.b {
            if r < 2 || r > self.n || j < 1 || j > 2 * self.g {
                return invalid(format!("b_{r}^{j} out of range for n={}, g={}", self.n, self.g));
            }
        }
        if let Some(e) = &self.epsilon {
            if e.is_zero() {
                return invalid("epsilon must be nonzero");
            }
        }
        Ok(())
    }

    /// Real cohomological degree of the requested class (exp f₂ excluded).
    pub fn class_degree(&self) -> u64 {
        let a: u64 = self.a.iter().map(|(&r, &m)| 2 * r as u64 * m as u64).sum();
        let f: u64 = self.f.iter().map(|(&r, &m)| (2 * r as u64 - 2) * m as u64).sum();
        let b: u64 = self.b.iter().map(|&(r, _)| 2 * r as u64 - 1).sum();
        a + f + b
    }

    /// Real dimension (n² − 1)(2g − 2) of the moduli space.
    pub fn real_dimension(&self) -> u64 {
        (self.n as u64 * self.n as u64 - 1) * (2 * self.g as u64 - 2)
    }

    /// f-exponents as a multidegree over δ₃..δ_n.
    pub fn f_multidegree(&self) -> Vec<u32> {
        (3..=self.n).map(|r| self.f.get(&r).copied().unwrap_or(0)).collect()
    }
}

impl fmt::Display for PairingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d={} g={}", self.n, self.d, self.g)?;
        for (r, m) in &self.a {
            write!(f, " a{r}^{m}")?;
        }
        for (r, m) in &self.f {
            write!(f, " f{r}^{m}")?;
        }
        for (r, j) in &self.b {
            write!(f, " b{r}^{j}")?;
        }
        if let Some(e) = &self.epsilon {
            write!(f, " eps={e}")?;
        }
        Ok(())
    }
}

/// Formula route used to produce a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    /// a-classes with exp f₂.
    MainAb,
    /// f-classes through the δ-deformed invariant polynomial.
    T96b,
    /// b-classes through the T_rs insertion.
    Eq936,
    /// Change-of-variables consistency check.
    BinverseCheck,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::MainAb => "mainab",
            Route::T96b => "t96b",
            Route::Eq936 => "eq936",
            Route::BinverseCheck => "binverse-check",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mainab" => Ok(Route::MainAb),
            "t96b" => Ok(Route::T96b),
            "eq936" => Ok(Route::Eq936),
            "binverse-check" => Ok(Route::BinverseCheck),
            _ => invalid(format!("unknown route {s:?} (expected mainab, t96b, eq936 or binverse-check)")),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact value plus provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingResult {
    pub value: Rational,
    pub route: Route,
    pub metadata: BTreeMap<String, String>,
}
