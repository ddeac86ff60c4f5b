//! The a-, f- and b-class pairing formulas and the change-of-variables check.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::qpoly::{exp_nilpotent, u_derivative_in_w, JPoly, QPolynomial};
use super::spec::{PairingResult, PairingSpec, Route};
use crate::error::{invalid, Error, Result};
use crate::exact::rational::{factorial_q, int, minus_one_pow, powi};
use crate::exact::{jet_extract, Coeff, DeltaJet, MultiPoly, RatFunc, Rational};
use crate::residue::{iterated_residue, EulerFactor, ExpTerm, Expression};
use crate::su::{bracket, RootSystem};

/// Sign applied per symplectic pair `b^j b^{j+g}` so that genus reduction holds with a positive sign.
pub const B_PAIR_SIGN: i64 = -1;

/// Which form of the a-class integrand to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MainAbVariant {
    /// `e^{−⟨[[wc̃]],X⟩} τ(X) / (ϖ^{2g−2} ∏(1 − e^{−Y_j}))`, the shape shared with the δ-deformed route.
    Canonical,
    /// `e^{⟨[[wc̃]],X⟩} τ(−X) / (ϖ^{2g−2} ∏(e^{Y_j} − 1))`.
    Literal,
}

impl MainAbVariant {
    pub fn name(self) -> &'static str {
        match self {
            MainAbVariant::Canonical => "minus-x",
            MainAbVariant::Literal => "plus-x",
        }
    }
}

/// `(−1)^{n₊(g−1)} / n!`.
fn sign_prefactor(rs: &RootSystem, g: usize) -> Rational {
    minus_one_pow((rs.num_positive_roots() * (g - 1)) as u64) / factorial_q(rs.n() as u64)
}

/// Simple-root coefficients of `[[w c̃]]` for each w in W_{n−1}.
fn weyl_phases(rs: &RootSystem, d: i64) -> Result<Vec<Vec<Rational>>> {
    let c = rs.tilde_c(d)?;
    Ok(rs.weyl_w_n_minus_1().iter().map(|w| bracket(&rs.act_point(w, &c)).0).collect())
}

/// `∏ τ_r^{m_r}`, optionally with `τ_r(−X) = (−1)^r τ_r(X)`.
fn a_monomial<C: Coeff>(rs: &RootSystem, a: &BTreeMap<usize, u32>, negate: bool) -> Result<MultiPoly<C>> {
    let mut p = MultiPoly::one(rs.rank());
    for (&r, &m) in a {
        let mut t: MultiPoly<C> = rs.tau_poly(r)?;
        if negate && r % 2 == 1 {
            t = t.neg();
        }
        p = p.mul_ref(&t.pow(m));
    }
    Ok(p)
}

fn varpi_power(rs: &RootSystem, g: usize) -> MultiPoly<Rational> {
    rs.varpi_poly::<Rational>().pow(2 * g as u32 - 2)
}

fn unit_euler(rs: &RootSystem, scale: &Rational) -> Vec<EulerFactor> {
    (0..rs.rank()).map(|j| EulerFactor::new(j, scale.clone(), 1)).collect()
}

fn require_plain(spec: &PairingSpec, what: &str) -> Result<()> {
    if !spec.f.is_empty() || !spec.b.is_empty() {
        return invalid(format!("{what} takes a-classes only; use the t96b or eq936 route for f- and b-classes"));
    }
    Ok(())
}

/// The a-class integrand with exp f₂, summed over W_{n−1}.
pub fn integrand_mainab(spec: &PairingSpec, variant: MainAbVariant) -> Result<Expression<Rational>> {
    spec.validate()?;
    require_plain(spec, "integrand_mainab")?;
    let rs = RootSystem::new(spec.n)?;
    let pre = sign_prefactor(&rs, spec.g) * powi(&int(spec.n as i64), spec.g as i64);
    let num = a_monomial::<Rational>(&rs, &spec.a, variant == MainAbVariant::Literal)?.scale(&pre);
    let rat = RatFunc::new(num, &varpi_power(&rs, spec.g))?;
    let mut out = Expression::new(rs.rank());
    for gamma in weyl_phases(&rs, spec.d)? {
        let exp = match variant {
            MainAbVariant::Canonical => gamma.iter().map(|c| int(1) - c).collect(),
            MainAbVariant::Literal => gamma,
        };
        out.push(ExpTerm::new(exp, rat.clone(), unit_euler(&rs, &int(1))));
    }
    Ok(out)
}

fn residue_order(n: usize) -> String {
    (1..n).rev().map(|j| format!("Y{j}")).collect::<Vec<_>>().join(",")
}

fn result(value: Rational, route: Route, meta: Vec<(&str, String)>) -> PairingResult {
    PairingResult { value, route, metadata: meta.into_iter().map(|(k, v)| (k.to_string(), v)).collect() }
}

/// a-class pairing with exp f₂; with `spec.epsilon` set, the ε-scaled form is used instead.
pub fn pairing_a(spec: &PairingSpec) -> Result<PairingResult> {
    if let Some(eps) = &spec.epsilon {
        return epsilon_scaled_pairing(spec, eps);
    }
    let expr = integrand_mainab(spec, MainAbVariant::Canonical)?;
    let value = iterated_residue(&expr)?;
    Ok(result(
        value,
        Route::MainAb,
        vec![
            ("residue_order", residue_order(spec.n)),
            ("variant", MainAbVariant::Canonical.name().into()),
            ("terms", expr.len().to_string()),
        ],
    ))
}

/// `∫ η e^{ε ω̄}` from the ε-scaled integrand; equals the plain pairing when η has top degree.
pub fn epsilon_scaled_pairing(spec: &PairingSpec, eps: &Rational) -> Result<PairingResult> {
    spec.validate()?;
    require_plain(spec, "epsilon_scaled_pairing")?;
    if eps.is_zero() {
        return invalid("epsilon must be nonzero");
    }
    let rs = RootSystem::new(spec.n)?;
    let pre =
        sign_prefactor(&rs, spec.g) * powi(&int(spec.n as i64), spec.g as i64) * powi(eps, (rs.rank() * spec.g) as i64);
    let num = a_monomial::<Rational>(&rs, &spec.a, true)?.scale(&pre);
    let rat = RatFunc::new(num, &varpi_power(&rs, spec.g))?;
    let mut expr = Expression::new(rs.rank());
    for gamma in weyl_phases(&rs, spec.d)? {
        let exp = gamma.iter().map(|c| c * eps).collect();
        expr.push(ExpTerm::new(exp, rat.clone(), unit_euler(&rs, eps)));
    }
    let value = iterated_residue(&expr)?;
    Ok(result(
        value,
        Route::MainAb,
        vec![("residue_order", residue_order(spec.n)), ("variant", "epsilon".into()), ("epsilon", eps.to_string())],
    ))
}

/// Coefficient of ε^k in `∫ η e^{ε ω̄}`, i.e. `∫ η f₂^k / k!`, by exact interpolation in ε.
pub fn epsilon_coefficient(spec: &PairingSpec, k: u32) -> Result<Rational> {
    let dim = spec.real_dimension();
    let deg = spec.class_degree();
    if deg > dim || (dim - deg) % 2 == 1 {
        return Ok(Rational::zero());
    }
    // ∫ η e^{εω̄} is a polynomial in ε of degree (dim − deg)/2.
    let top = ((dim - deg) / 2) as usize;
    if k as usize > top {
        return Ok(Rational::zero());
    }
    let xs: Vec<Rational> = (1..=top as i64 + 1).map(int).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for x in &xs {
        ys.push(epsilon_scaled_pairing(spec, x)?.value);
    }
    Ok(interpolation_coefficient(&xs, &ys, k as usize))
}

/// Coefficient of t^k of the polynomial through the points (xs, ys).
fn interpolation_coefficient(xs: &[Rational], ys: &[Rational], k: usize) -> Rational {
    let mut total = Rational::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        // basis polynomial ∏_{j≠i} (t − x_j)/(x_i − x_j), expanded in t
        let mut poly = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (e, c) in poly.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * xj;
            }
            poly = next;
            denom *= xi - xj;
        }
        if let Some(c) = poly.get(k) {
            total += c * yi / denom;
        }
    }
    total
}

/// Expansion of `1/(1 − e^{−B_j})` with `B_j = Y_j + β_j`, grouped by the power of `(e^{Y_j} − 1)^{−1}`.
fn inverse_euler_expansion(beta: &JPoly, total_cap: u32) -> BTreeMap<u32, JPoly> {
    let nv = beta.nvars();
    let mut out: BTreeMap<u32, JPoly> = BTreeMap::new();
    let mut pow = JPoly::one(nv);
    for k in 0..=total_cap as usize {
        if k > 0 {
            pow = pow.mul_ref(beta);
        }
        if pow.is_zero() {
            break;
        }
        let scaled = pow.scale(&factorial_q(k as u64).recip());
        for (p, c) in u_derivative_in_w(k).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = out.entry(p as u32).or_insert_with(|| JPoly::zero(nv));
            *e = e.add_ref(&scaled.scale(c));
        }
    }
    out
}

/// Integrand of the δ-deformed formula times an extra numerator `insertion`.
fn deformed_integrand(spec: &PairingSpec, q: &QPolynomial, insertion: &JPoly) -> Result<Expression<DeltaJet>> {
    let rs = &q.rs;
    let m = rs.rank();
    let cap = q.shape.total_cap();
    let pre = sign_prefactor(rs, spec.g) * powi(&int(spec.n as i64), spec.g as i64);
    let num0 = a_monomial::<DeltaJet>(rs, &spec.a, false)?
        .mul_ref(&q.det_ht().pow(spec.g as u32))
        .mul_ref(insertion)
        .scale(&pre);
    let den = varpi_power(rs, spec.g);
    let beta = q.b_perturbation();
    let factors: Vec<Vec<(u32, JPoly)>> =
        beta.iter().map(|b| inverse_euler_expansion(b, cap).into_iter().collect()).collect();

    let mut out = Expression::new(m);
    for gamma in weyl_phases(rs, spec.d)? {
        // e^{dq_X([[wc̃]])} = e^{−Σγ_j Y_j} · exp(−Σγ_j β_j)
        let mut nu = JPoly::zero(m);
        for (g, b) in gamma.iter().zip(&beta) {
            nu = nu.sub_ref(&b.scale(g));
        }
        let num = num0.mul_ref(&exp_nilpotent(&nu, cap));
        let exp: Vec<Rational> = gamma.iter().map(|c| -c).collect();
        let mut combos: Vec<(Vec<EulerFactor>, JPoly)> = vec![(Vec::new(), num)];
        for (j, fj) in factors.iter().enumerate() {
            let mut next = Vec::with_capacity(combos.len() * fj.len());
            for (eul, p) in &combos {
                for (power, c) in fj {
                    let prod = p.mul_ref(c);
                    if prod.is_zero() {
                        continue;
                    }
                    let mut e = eul.clone();
                    if *power > 0 {
                        e.push(EulerFactor::new(j, int(1), *power));
                    }
                    next.push((e, prod));
                }
            }
            combos = next;
        }
        for (eul, p) in combos {
            out.push(ExpTerm::new(exp.clone(), RatFunc::new(p, &den)?, eul));
        }
    }
    Ok(out)
}

fn f_factorials(spec: &PairingSpec) -> Rational {
    spec.f.values().fold(Rational::one(), |acc, &m| acc * factorial_q(m as u64))
}

fn extract(jet: &DeltaJet, spec: &PairingSpec) -> Result<Rational> {
    Ok(jet_extract(jet, &spec.f_multidegree())? * f_factorials(spec))
}

/// f-class pairing through the δ-deformed invariant polynomial.
pub fn pairing_f(spec: &PairingSpec) -> Result<PairingResult> {
    spec.validate()?;
    if !spec.b.is_empty() {
        return invalid("b-classes need the eq936 route");
    }
    if spec.epsilon.is_some() {
        return invalid("epsilon scaling is only available for a-class pairings");
    }
    let rs = RootSystem::new(spec.n)?;
    let q = QPolynomial::new(&rs, spec.f_multidegree())?;
    let expr = deformed_integrand(spec, &q, &JPoly::one(rs.rank()))?;
    let jet = iterated_residue(&expr)?;
    Ok(result(
        extract(&jet, spec)?,
        Route::T96b,
        vec![
            ("residue_order", residue_order(spec.n)),
            ("jet_cap", format!("{:?}", spec.f_multidegree())),
            ("terms", expr.len().to_string()),
        ],
    ))
}

/// Groups b-classes by symplectic pair; `None` when the class vanishes for parity reasons.
/// Returns the reordering sign and, per j ≤ g, the r-indices at j and at j+g.
#[allow(clippy::type_complexity)]
fn b_structure(spec: &PairingSpec) -> Option<(i64, Vec<(Vec<usize>, Vec<usize>)>)> {
    let g = spec.g;
    let mut seen = std::collections::BTreeSet::new();
    for &rj in &spec.b {
        if !seen.insert(rj) {
            return None;
        }
    }
    // canonical order: for j = 1..g, the classes at j then those at j+g, each in input order
    let mut order: Vec<usize> = Vec::with_capacity(spec.b.len());
    let mut groups = Vec::new();
    for j in 1..=g {
        let lo: Vec<usize> = (0..spec.b.len()).filter(|&i| spec.b[i].1 == j).collect();
        let hi: Vec<usize> = (0..spec.b.len()).filter(|&i| spec.b[i].1 == j + g).collect();
        if lo.len() != hi.len() {
            return None;
        }
        groups.push((lo.iter().map(|&i| spec.b[i].0).collect(), hi.iter().map(|&i| spec.b[i].0).collect()));
        order.extend(lo);
        order.extend(hi);
    }
    Some((permutation_sign(&order), groups))
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=i {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// b-class pairing: `∏_j Σ_σ ∏ T_{r s_σ}(−X)` inserted into the deformed integrand.
pub fn pairing_b(spec: &PairingSpec) -> Result<PairingResult> {
    spec.validate()?;
    if spec.epsilon.is_some() {
        return invalid("epsilon scaling is only available for a-class pairings");
    }
    let Some((sign, groups)) = b_structure(spec) else {
        return Ok(result(
            Rational::zero(),
            Route::Eq936,
            vec![("vanishing", "b-classes do not form symplectic pairs".into())],
        ));
    };
    let pairs: usize = groups.iter().map(|(lo, _)| lo.len()).sum();
    let rs = RootSystem::new(spec.n)?;
    let q = QPolynomial::new(&rs, spec.f_multidegree())?;
    let m = rs.rank();
    let mut t_cache: BTreeMap<(usize, usize), JPoly> = BTreeMap::new();
    let mut insertion = JPoly::one(m);
    for (lo, hi) in &groups {
        let mut sum = JPoly::zero(m);
        for sigma in permutations(lo.len()) {
            let mut prod = JPoly::one(m);
            for (i, &r) in lo.iter().enumerate() {
                let s = hi[sigma[i]];
                let t = match t_cache.get(&(r, s)) {
                    Some(t) => t.clone(),
                    None => {
                        let t = q.t_rs(r, s)?;
                        t_cache.insert((r, s), t.clone());
                        t
                    }
                };
                prod = prod.mul_ref(&t);
            }
            sum = sum.add_ref(&prod);
        }
        insertion = insertion.mul_ref(&sum);
    }
    let kappa = powi(&int(B_PAIR_SIGN), pairs as i64) * int(sign);
    let expr = deformed_integrand(spec, &q, &insertion)?;
    let literal = extract(&iterated_residue(&expr)?, spec)?;
    Ok(result(
        &literal * &kappa,
        Route::Eq936,
        vec![
            ("residue_order", residue_order(spec.n)),
            ("jet_cap", format!("{:?}", spec.f_multidegree())),
            ("b_pairs", pairs.to_string()),
            ("b_pair_sign", B_PAIR_SIGN.to_string()),
            ("reorder_sign", sign.to_string()),
            ("literal_value", literal.to_string()),
        ],
    ))
}

/// Both sides of the change-of-variables identity as full δ-jets.
#[derive(Clone, Debug, PartialEq)]
pub struct BinverseReport {
    pub direct: DeltaJet,
    pub substituted: DeltaJet,
    pub holds: bool,
}

/// Compares the δ-deformed integral of `∏τ_r^{m_r}` with the exp f₂ integral of
/// `τ(B⁻¹(X)) · det H(B⁻¹(X))^{g−1}`, jet by jet.
pub fn binverse_identity_check(
    n: usize,
    d: i64,
    g: usize,
    a: &BTreeMap<usize, u32>,
    caps: &[u32],
) -> Result<BinverseReport> {
    let mut spec = PairingSpec::new(n, d, g);
    spec.a = a.clone();
    spec.validate()?;
    let rs = RootSystem::new(n)?;
    if caps.len() != n - 2 {
        return invalid(format!("expected {} jet caps for n={n}, got {}", n - 2, caps.len()));
    }
    let q = QPolynomial::new(&rs, caps.to_vec())?;
    let m = rs.rank();
    let direct = iterated_residue(&deformed_integrand(&spec, &q, &JPoly::one(m))?)?;

    // Z = B⁻¹(Y) by the fixed point Z = Y − β(Z); each pass fixes one more δ-order.
    let beta = q.b_perturbation();
    let ys: Vec<JPoly> = (0..m).map(|j| JPoly::var(m, j)).collect();
    let mut z = ys.clone();
    for _ in 0..=q.shape.total_cap() {
        z = ys.iter().zip(&beta).map(|(y, b)| y.sub_ref(&b.compose(&z))).collect();
    }

    // Root-direction Hessian ∏_γ (γ(B(X))/γ(X))², an exact polynomial.
    let bmap = q.b_map();
    let mut h_perp = JPoly::one(m);
    for (j, k) in rs.positive_roots() {
        let form = rs.root_form(j, k);
        let lin = MultiPoly::<Rational>::linear(&form);
        let gb = form.iter().zip(&bmap).fold(JPoly::zero(m), |acc, (c, b)| acc.add_ref(&b.scale(c)));
        let ratio = gb
            .div_exact(&lin)
            .ok_or_else(|| Error::Computation(format!("root form {lin} does not divide gamma(B)")))?;
        h_perp = h_perp.mul_ref(&ratio.pow(2));
    }
    let det_h = q.det_ht().mul_ref(&h_perp);

    let pre = sign_prefactor(&rs, g) * powi(&int(n as i64), g as i64);
    let num =
        a_monomial::<DeltaJet>(&rs, a, false)?.compose(&z).mul_ref(&det_h.compose(&z).pow(g as u32 - 1)).scale(&pre);
    let rat = RatFunc::new(num, &varpi_power(&rs, g))?;
    let mut expr = Expression::new(m);
    for gamma in weyl_phases(&rs, d)? {
        let exp = gamma.iter().map(|c| int(1) - c).collect();
        expr.push(ExpTerm::new(exp, rat.clone(), unit_euler(&rs, &int(1))));
    }
    let substituted = iterated_residue(&expr)?;
    let holds = direct == substituted;
    Ok(BinverseReport { direct, substituted, holds })
}

/// Evaluates a pairing by the requested route, or the natural one for the classes present.
pub fn pair(spec: &PairingSpec, route: Option<Route>) -> Result<PairingResult> {
    let route = route.unwrap_or(if !spec.b.is_empty() {
        Route::Eq936
    } else if !spec.f.is_empty() {
        Route::T96b
    } else {
        Route::MainAb
    });
    match route {
        Route::MainAb => pairing_a(spec),
        Route::T96b => pairing_f(spec),
        Route::Eq936 => pairing_b(spec),
        Route::BinverseCheck => {
            if !spec.b.is_empty() || spec.epsilon.is_some() {
                return invalid("binverse-check takes a-classes and f-exponents only");
            }
            spec.validate()?;
            let report = binverse_identity_check(spec.n, spec.d, spec.g, &spec.a, &spec.f_multidegree())?;
            Ok(result(
                extract(&report.substituted, spec)?,
                Route::BinverseCheck,
                vec![
                    ("residue_order", residue_order(spec.n)),
                    ("jet_cap", format!("{:?}", spec.f_multidegree())),
                    ("identity", if report.holds { "holds" } else { "fails" }.into()),
                    ("direct_value", extract(&report.direct, spec)?.to_string()),
                ],
            ))
        }
    }
}

#[cfg(test)]
mod tests;
