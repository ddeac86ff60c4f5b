//! SU(n) root-system data in residue coordinates Y_j = X_j − X_{j+1}.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::exact::rational::{frac, int, Rational};
use crate::exact::{Coeff, MultiPoly};

/// Point of the Cartan subalgebra stored by simple-root coefficients γ_j (v = Σ γ_j ê_j).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint(pub Vec<Rational>);

/// Permutation `w` of `{0..n-1}` acting by `(w·v)_{w(i)} = v_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement(pub Vec<usize>);

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement((0..n).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        WeylElement(inv)
    }

    /// Acts on a vector given in X coordinates.
    pub fn act(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j] = v[i].clone();
        }
        out
    }

    pub fn is_transposition(&self) -> bool {
        self.0.iter().enumerate().filter(|(i, &j)| *i != j).count() == 2
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    n: usize,
}

impl RootSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return invalid(format!("rank+1 must be at least 2, got n={n}"));
        }
        Ok(RootSystem { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of residue variables Y₁..Y_{n−1}.
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// ê_j in X coordinates (0-based j).
    pub fn simple_root(&self, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v[j] = int(1);
        v[j + 1] = int(-1);
        v
    }

    /// ŵ_j in X coordinates: 1 − (j+1)/n in the first j+1 slots, −(j+1)/n elsewhere.
    pub fn fundamental_weight(&self, j: usize) -> Vec<Rational> {
        let k = Rational::new((j as i64 + 1).into(), (self.n as i64).into());
        (0..self.n).map(|i| if i <= j { int(1) - &k } else { -k.clone() }).collect()
    }

    /// Positive roots (j, k), j < k, i.e. X_j − X_k.
    pub fn positive_roots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for k in j + 1..self.n {
                out.push((j, k));
            }
        }
        out
    }

    /// Y-coefficients of X_j − X_k (j < k): ones on j..k−1.
    pub fn root_form(&self, j: usize, k: usize) -> Vec<Rational> {
        (0..self.rank()).map(|i| if i >= j && i < k { int(1) } else { int(0) }).collect()
    }

    /// Y-coefficients of X_a − X_b for any a ≠ b.
    pub fn difference_form(&self, a: usize, b: usize) -> Vec<Rational> {
        if a < b {
            self.root_form(a, b)
        } else {
            self.root_form(b, a).iter().map(|c| -c).collect()
        }
    }

    /// Cartan matrix ⟨ê_a, ê_b⟩.
    pub fn cartan(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| {
                        if a == b {
                            int(2)
                        } else if a.abs_diff(b) == 1 {
                            int(-1)
                        } else {
                            int(0)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Inverse Cartan matrix ⟨ŵ_a, ŵ_b⟩ = min(a,b)(n − max(a,b))/n in 1-based indices.
    pub fn cartan_inverse(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        let n = self.n as i64;
        (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| {
                        let (lo, hi) = ((a.min(b) + 1) as i64, (a.max(b) + 1) as i64);
                        Rational::new((lo * (n - hi)).into(), n.into())
                    })
                    .collect()
            })
            .collect()
    }

    /// X coordinates as linear forms in Y: X_i = Σ_{j≥i} Y_j − (1/n) Σ_j j·Y_j (1-based j).
    pub fn x_forms(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        let n = self.n as i64;
        (0..self.n)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let base = if j >= i { int(1) } else { int(0) };
                        base - Rational::new((j as i64 + 1).into(), n.into())
                    })
                    .collect()
            })
            .collect()
    }

    /// X coordinates of the vector Σ γ_j ê_j.
    pub fn to_x(&self, p: &TorusPoint) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        for (j, g) in p.0.iter().enumerate() {
            v[j] += g;
            v[j + 1] -= g;
        }
        v
    }

    /// Simple-root coefficients of a trace-zero vector: γ_j = ⟨v, ŵ_j⟩ = Σ_{i≤j} v_i.
    pub fn from_x(&self, v: &[Rational]) -> TorusPoint {
        let mut acc = Rational::zero();
        TorusPoint(
            (0..self.rank())
                .map(|j| {
                    acc += &v[j];
                    acc.clone()
                })
                .collect(),
        )
    }

    /// c̃ = [[(d/n, …, d/n, −(n−1)d/n)]] in simple-root coefficients.
    pub fn tilde_c(&self, d: i64) -> Result<TorusPoint> {
        let n = self.n as i64;
        if d.gcd(&n) != 1 {
            return invalid(format!("gcd(n,d) must be 1, got n={n}, d={d}"));
        }
        let q = Rational::new(d.into(), n.into());
        let mut v = vec![q.clone(); self.n];
        v[self.n - 1] = -q * int(n - 1);
        Ok(bracket(&self.from_x(&v)))
    }

    /// W_{n−1}: permutations of the first n−1 coordinates, lexicographic order.
    pub fn weyl_w_n_minus_1(&self) -> Vec<WeylElement> {
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..self.n - 1).collect();
        permutations(&mut cur, 0, &mut perms);
        perms.sort();
        perms
            .into_iter()
            .map(|mut p| {
                p.push(self.n - 1);
                WeylElement(p)
            })
            .collect()
    }

    pub fn act_point(&self, w: &WeylElement, p: &TorusPoint) -> TorusPoint {
        self.from_x(&w.act(&self.to_x(p)))
    }

    /// Y-substitution realizing f ↦ f∘w⁻¹: Y_j(w⁻¹X) = X_{w(j)} − X_{w(j+1)}.
    pub fn weyl_substitution(&self, w: &WeylElement) -> Vec<MultiPoly<Rational>> {
        (0..self.rank()).map(|j| MultiPoly::linear(&self.difference_form(w.0[j], w.0[j + 1]))).collect()
    }

    /// Elementary symmetric polynomial τ_r(X) written in the Y variables.
    pub fn tau_poly<C: Coeff>(&self, r: usize) -> Result<MultiPoly<C>> {
        if r < 2 || r > self.n {
            return invalid(format!("tau index r={r} outside 2..={}", self.n));
        }
        let xs: Vec<MultiPoly<Rational>> = self.x_forms().iter().map(|f| MultiPoly::linear(f)).collect();
        // e_k via the running product ∏(1 + t·X_i), truncated at degree r in t.
        let mut e: Vec<MultiPoly<Rational>> = vec![MultiPoly::one(self.rank())];
        for x in &xs {
            let mut next = e.clone();
            next.push(MultiPoly::zero(self.rank()));
            for k in 1..next.len().min(r + 1) {
                next[k] = next[k].add_ref(&e[k - 1].mul_ref(x));
            }
            next.truncate(r + 1);
            e = next;
        }
        Ok(e[r].lift())
    }

    /// ϖ = ∏_{j<k} (Y_j + … + Y_{k−1}).
    pub fn varpi_poly<C: Coeff>(&self) -> MultiPoly<C> {
        self.positive_roots()
            .iter()
            .fold(MultiPoly::one(self.rank()), |acc, &(j, k)| acc.mul_ref(&MultiPoly::linear(&self.root_form(j, k))))
    }

    /// e^{2πi·angle} = c^{−λ} for λ given by fundamental-weight coordinates l_j; angle in [0,1).
    pub fn central_phase(&self, c: &TorusPoint, l: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for (g, &lj) in c.0.iter().zip(l) {
            s += g * int(lj);
        }
        frac(&-s)
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Replaces every simple-root coefficient by its fractional part.
pub fn bracket(p: &TorusPoint) -> TorusPoint {
    TorusPoint(p.0.iter().map(frac).collect())
}

/// Euclidean inner product of two X-coordinate vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
