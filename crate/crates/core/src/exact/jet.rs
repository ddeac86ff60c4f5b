//! Truncated polynomial ring in the nilpotent parameters δ₃..δ_n.

use std::sync::Arc;

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Per-variable degree caps plus precomputed index tables.
#[derive(Debug, PartialEq, Eq)]
pub struct JetShape {
    caps: Vec<u32>,
    strides: Vec<usize>,
    degs: Vec<Vec<u32>>,
}

impl JetShape {
    pub fn new(caps: Vec<u32>) -> Arc<Self> {
        let mut strides = Vec::with_capacity(caps.len());
        let mut len = 1usize;
        for &c in &caps {
            strides.push(len);
            len *= c as usize + 1;
        }
        let degs = (0..len)
            .map(|mut i| {
                caps.iter()
                    .map(|&c| {
                        let d = (i % (c as usize + 1)) as u32;
                        i /= c as usize + 1;
                        d
                    })
                    .collect()
            })
            .collect();
        Arc::new(JetShape { caps, strides, degs })
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.degs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degs.is_empty()
    }

    /// Sum of the caps: any product of more nilpotent factors than this vanishes.
    pub fn total_cap(&self) -> u32 {
        self.caps.iter().sum()
    }

    pub fn index_of(&self, degree: &[u32]) -> Option<usize> {
        if degree.len() != self.caps.len() || degree.iter().zip(&self.caps).any(|(d, c)| d > c) {
            return None;
        }
        Some(degree.iter().zip(&self.strides).map(|(&d, &s)| d as usize * s).sum())
    }

    pub fn degree_at(&self, index: usize) -> &[u32] {
        &self.degs[index]
    }

    fn product_fits(&self, i: usize, j: usize) -> bool {
        self.degs[i].iter().zip(&self.degs[j]).zip(&self.caps).all(|((a, b), c)| a + b <= *c)
    }
}

/// Element of `Q[δ]/(above-cap monomials)`, stored densely.
///
/// A jet without a shape is a plain scalar and combines with any shape.
#[derive(Clone, Debug)]
pub struct DeltaJet {
    shape: Option<Arc<JetShape>>,
    coeffs: Vec<Rational>,
}

impl DeltaJet {
    pub fn scalar(r: Rational) -> Self {
        DeltaJet { shape: None, coeffs: vec![r] }
    }

    pub fn zero_in(shape: &Arc<JetShape>) -> Self {
        DeltaJet { shape: Some(shape.clone()), coeffs: vec![Rational::zero(); shape.len()] }
    }

    /// The parameter δ with index `k` (0-based over the shape's variables), times `r`.
    pub fn variable(shape: &Arc<JetShape>, k: usize, r: Rational) -> Self {
        let mut j = Self::zero_in(shape);
        let mut deg = vec![0; shape.caps.len()];
        deg[k] = 1;
        if let Some(i) = shape.index_of(&deg) {
            j.coeffs[i] = r;
        }
        j
    }

    /// Builds a jet from (multidegree, coefficient) pairs, dropping above-cap entries.
    pub fn from_terms(shape: &Arc<JetShape>, terms: &[(Vec<u32>, Rational)]) -> Self {
        let mut j = Self::zero_in(shape);
        for (d, c) in terms {
            if let Some(i) = shape.index_of(d) {
                j.coeffs[i] += c;
            }
        }
        j
    }

    pub fn shape(&self) -> Option<&Arc<JetShape>> {
        self.shape.as_ref()
    }

    /// Raw coefficient of `∏ δ^degree` (no factorial normalization).
    pub fn coeff(&self, degree: &[u32]) -> Result<Rational> {
        match &self.shape {
            None => {
                if degree.iter().all(|&d| d == 0) {
                    Ok(self.coeffs[0].clone())
                } else {
                    Ok(Rational::zero())
                }
            }
            Some(s) => match s.index_of(degree) {
                Some(i) => Ok(self.coeffs[i].clone()),
                None => Err(Error::AboveCap { requested: degree.to_vec(), cap: s.caps.clone() }),
            },
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Nonzero (multidegree, coefficient) pairs in index order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let d = match &self.shape {
                    Some(s) => s.degree_at(i).to_vec(),
                    None => Vec::new(),
                };
                (d, c.clone())
            })
            .collect()
    }

    fn broadcast(&self, shape: &Arc<JetShape>) -> Vec<Rational> {
        match &self.shape {
            Some(_) => self.coeffs.clone(),
            None => {
                let mut v = vec![Rational::zero(); shape.len()];
                v[0] = self.coeffs[0].clone();
                v
            }
        }
    }

    fn joint_shape(&self, other: &Self) -> Option<Arc<JetShape>> {
        match (&self.shape, &other.shape) {
            (Some(a), Some(b)) => {
                assert!(Arc::ptr_eq(a, b) || a == b, "mixing jets with different caps");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for DeltaJet {
    fn eq(&self, other: &Self) -> bool {
        match self.joint_shape(other) {
            None => self.coeffs == other.coeffs,
            Some(s) => self.broadcast(&s) == other.broadcast(&s),
        }
    }
}

impl Add for DeltaJet {
    type Output = DeltaJet;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Mul for DeltaJet {
    type Output = DeltaJet;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Zero for DeltaJet {
    fn zero() -> Self {
        Self::scalar(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for DeltaJet {
    fn one() -> Self {
        Self::scalar(Rational::one())
    }
}

impl Coeff for DeltaJet {
    fn from_rational(r: &Rational) -> Self {
        Self::scalar(r.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        match self.joint_shape(other) {
            None => self.coeffs[0] += &other.coeffs[0],
            Some(s) => {
                if self.shape.is_none() {
                    self.coeffs = self.broadcast(&s);
                    self.shape = Some(s);
                }
                match &other.shape {
                    Some(_) => {
                        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
                            if !b.is_zero() {
                                *a += b;
                            }
                        }
                    }
                    None => self.coeffs[0] += &other.coeffs[0],
                }
            }
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.shape.is_none() {
            return other.scale(&self.coeffs[0]);
        }
        if other.shape.is_none() {
            return self.scale(&other.coeffs[0]);
        }
        let s = self.joint_shape(other).expect("shaped operands");
        let mut out = vec![Rational::zero(); s.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() || i + j >= out.len() || !s.product_fits(i, j) {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        DeltaJet { shape: Some(s), coeffs: out }
    }
    fn neg_ref(&self) -> Self {
        DeltaJet { shape: self.shape.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        DeltaJet { shape: self.shape.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
    fn render(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(d, c)| {
                let mono: Vec<String> = d
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| if e == 1 { format!("d{}", k + 3) } else { format!("d{}^{}", k + 3, e) })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        format!("[{}]", parts.join(" + "))
    }
}

/// Raw coefficient of a multidegree; callers multiply by `∏ n_r!` to get derivatives at zero.
pub fn jet_extract(j: &DeltaJet, degree: &[u32]) -> Result<Rational> {
    j.coeff(degree)
}
