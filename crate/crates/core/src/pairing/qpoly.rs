//! The deformed invariant polynomial q = τ₂ + Σ δ_r τ_r and the data derived from it.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::rational::{factorial_q, int};
use crate::exact::{Coeff, DeltaJet, JetShape, MultiPoly, Rational};
use crate::su::RootSystem;

pub type JPoly = MultiPoly<DeltaJet>;
pub type Matrix = Vec<Vec<JPoly>>;

#[derive(Clone, Debug)]
pub struct QPolynomial {
    pub rs: RootSystem,
    pub shape: Arc<JetShape>,
    pub q: JPoly,
    cartan: Vec<Vec<Rational>>,
}

impl QPolynomial {
    /// `caps[i]` bounds the degree in δ_{i+3}.
    pub fn new(rs: &RootSystem, caps: Vec<u32>) -> Result<Self> {
        assert_eq!(caps.len(), rs.n() - 2, "one cap per δ_3..δ_n");
        let shape = JetShape::new(caps);
        let mut q: JPoly = rs.tau_poly(2)?;
        for r in 3..=rs.n() {
            let delta = DeltaJet::variable(&shape, r - 3, Rational::one());
            q = q.add_ref(&rs.tau_poly::<DeltaJet>(r)?.mul_coeff(&delta));
        }
        Ok(QPolynomial { rs: rs.clone(), shape, q, cartan: rs.cartan() })
    }

    pub fn nvars(&self) -> usize {
        self.rs.rank()
    }

    /// Directional derivative along ê_a: Σ_k ⟨ê_k, ê_a⟩ ∂/∂Y_k.
    pub fn d_along<C: Coeff>(&self, p: &MultiPoly<C>, a: usize) -> MultiPoly<C> {
        let mut out = MultiPoly::zero(p.nvars());
        for (k, row) in self.cartan.iter().enumerate() {
            if !row[a].is_zero() {
                out = out.add_ref(&p.derivative(k).scale(&row[a]));
            }
        }
        out
    }

    /// B(X)_j = −(dq)_X(ê_j).
    pub fn b_map(&self) -> Vec<JPoly> {
        (0..self.nvars()).map(|j| self.d_along(&self.q, j).neg()).collect()
    }

    /// Nilpotent parts β_j = B_j − Y_j.
    pub fn b_perturbation(&self) -> Vec<JPoly> {
        self.b_map().iter().enumerate().map(|(j, b)| b.sub_ref(&JPoly::var(self.nvars(), j))).collect()
    }

    /// Second derivatives ∂²q(ê_a, ê_b).
    pub fn hessian_e(&self) -> Matrix {
        let m = self.nvars();
        let first: Vec<JPoly> = (0..m).map(|a| self.d_along(&self.q, a)).collect();
        (0..m).map(|a| (0..m).map(|b| self.d_along(&first[a], b)).collect()).collect()
    }

    /// det H_t: determinant of −∂²q in the ê basis divided by the Gram determinant n.
    pub fn det_ht(&self) -> JPoly {
        let h: Matrix = self.hessian_e().iter().map(|row| row.iter().map(|p| p.neg()).collect()).collect();
        det(&h).scale(&Rational::new(1.into(), (self.rs.n() as i64).into()))
    }

    /// T_rs(−X) = −(dτ_r)ᵀ (∂²q)⁻¹ (dτ_s), contracted through the ê basis.
    pub fn t_rs(&self, r: usize, s: usize) -> Result<JPoly> {
        let m = self.nvars();
        let tr: JPoly = self.rs.tau_poly(r)?;
        let ts: JPoly = self.rs.tau_poly(s)?;
        let fr: Vec<JPoly> = (0..m).map(|a| self.d_along(&tr, a)).collect();
        let fs: Vec<JPoly> = (0..m).map(|a| self.d_along(&ts, a)).collect();
        let qinv = self.hessian_inverse();
        let mut acc = JPoly::zero(m);
        for a in 0..m {
            for b in 0..m {
                acc = acc.add_ref(&fr[a].mul_ref(&qinv[a][b]).mul_ref(&fs[b]));
            }
        }
        Ok(acc.neg())
    }

    /// (∂²q)⁻¹ = −Σ_k (E⁻¹N)^k E⁻¹ where ∂²q = −E + N with N nilpotent.
    pub fn hessian_inverse(&self) -> Matrix {
        let m = self.nvars();
        let q = self.hessian_e();
        let einv: Matrix = self
            .rs
            .cartan_inverse()
            .iter()
            .map(|row| row.iter().map(|c| JPoly::constant(m, DeltaJet::scalar(c.clone()))).collect())
            .collect();
        let e: Matrix = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|c| JPoly::constant(m, DeltaJet::scalar(c.clone()))).collect())
            .collect();
        let nil = mat_add(&q, &e);
        let step = mat_mul(&einv, &nil);
        let mut term = einv.clone();
        let mut sum = einv;
        for _ in 0..self.shape.total_cap() {
            term = mat_mul(&step, &term);
            sum = mat_add(&sum, &term);
        }
        sum.iter().map(|row| row.iter().map(|p| p.neg()).collect()).collect()
    }
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add_ref(y)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    let nv = a[0][0].nvars();
    (0..m)
        .map(|i| {
            (0..m).map(|j| (0..m).fold(JPoly::zero(nv), |acc, k| acc.add_ref(&a[i][k].mul_ref(&b[k][j])))).collect()
        })
        .collect()
}

/// Determinant by Laplace expansion along the first row (matrices here are at most 4×4).
pub fn det<C: Coeff>(m: &[Vec<MultiPoly<C>>]) -> MultiPoly<C> {
    let k = m.len();
    if k == 0 {
        return MultiPoly::one(0);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].nvars());
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<C>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = m[0][col].mul_ref(&det(&minor));
        acc = if col % 2 == 0 { acc.add_ref(&t) } else { acc.sub_ref(&t) };
    }
    acc
}

/// exp(ν) for a polynomial with nilpotent coefficients, truncated where the jets vanish.
pub fn exp_nilpotent(nu: &JPoly, total_cap: u32) -> JPoly {
    let m = nu.nvars();
    let mut sum = JPoly::one(m);
    let mut pow = JPoly::one(m);
    for k in 1..=total_cap {
        pow = pow.mul_ref(nu);
        if pow.is_zero() {
            break;
        }
        sum = sum.add_ref(&pow.scale(&factorial_q(k as u64).recip()));
    }
    sum
}

/// Coefficients (in w = 1/(e^Y − 1)) of the k-th derivative of u = 1/(1 − e^{−Y}) = 1 + w.
pub fn u_derivative_in_w(k: usize) -> Vec<Rational> {
    let mut p = vec![int(1), int(1)];
    for _ in 0..k {
        // P' (w) · (−w − w²)
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate().skip(1) {
            let d = c * int(i as i64);
            next[i] -= &d;
            next[i + 1] -= &d;
        }
        p = next;
    }
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn undeformed_b_map_is_identity() {
        for n in 2..5 {
            let rs = RootSystem::new(n).unwrap();
            let q = QPolynomial::new(&rs, vec![0; n - 2]).unwrap();
            for (j, b) in q.b_map().iter().enumerate() {
                assert_eq!(b, &JPoly::var(n - 1, j));
            }
            assert_eq!(q.det_ht(), JPoly::one(n - 1));
        }
    }

    #[test]
    fn t22_examples() {
        let r2 = RootSystem::new(2).unwrap();
        let q = QPolynomial::new(&r2, vec![]).unwrap();
        let t = q.t_rs(2, 2).unwrap();
        assert_eq!(t, JPoly::var(1, 0).pow(2).scale(&rat(1, 2)));
        let r3 = RootSystem::new(3).unwrap();
        let q = QPolynomial::new(&r3, vec![0]).unwrap();
        let y1 = JPoly::var(2, 0);
        let y2 = JPoly::var(2, 1);
        let expect = (&(&y1.pow(2) + &(&y1 * &y2)) + &y2.pow(2)).scale(&rat(2, 3));
        assert_eq!(q.t_rs(2, 2).unwrap(), expect);
    }

    #[test]
    fn hessian_inverse_is_inverse() {
        let r3 = RootSystem::new(3).unwrap();
        let q = QPolynomial::new(&r3, vec![2]).unwrap();
        let prod = mat_mul(&q.hessian_e(), &q.hessian_inverse());
        for (i, row) in prod.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let expect = if i == j { JPoly::one(2) } else { JPoly::zero(2) };
                assert_eq!(p, &expect);
            }
        }
    }

    #[test]
    fn u_derivatives() {
        assert_eq!(u_derivative_in_w(0), vec![int(1), int(1)]);
        // u' = −w − w²
        assert_eq!(u_derivative_in_w(1), vec![int(0), int(-1), int(-1)]);
        // u'' = w + 3w² + 2w³
        assert_eq!(u_derivative_in_w(2), vec![int(0), int(1), int(3), int(2)]);
    }
}
