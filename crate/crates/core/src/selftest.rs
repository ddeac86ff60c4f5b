//! A fast, deterministic battery of cross-checks with a stable text report.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::rational::{int, powi, rat, to_f64};
use crate::exact::{bernoulli, jet_extract, DeltaJet, JetShape};
use crate::oracles::{
    joint_expansion_residue, random_expression, svol_value, szenes_check, thaddeus_value, witten_sum, LatticeSumConfig,
    SzenesFunction,
};
use crate::pairing::{
    binverse_identity_check, epsilon_scaled_pairing, integrand_mainab, pairing_a, pairing_b, pairing_f, MainAbVariant,
    PairingSpec,
};
use crate::residue::iterated_residue;
use crate::su::{bracket, RootSystem, TorusPoint};
use crate::verlinde::{verlinde_check, VerlindeSpec, DEFAULT_DIGITS};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, r: Result<(bool, String)>) -> CheckOutcome {
    match r {
        Ok((passed, detail)) => CheckOutcome { name: name.into(), passed, detail },
        Err(e) => CheckOutcome { name: name.into(), passed: false, detail: format!("error: {e}") },
    }
}

fn spec(n: usize, g: usize, a: &[(usize, u32)]) -> PairingSpec {
    a.iter().fold(PairingSpec::new(n, 1, g), |s, &(r, m)| s.with_a(r, m))
}

fn bernoulli_values() -> Result<(bool, String)> {
    let got = [bernoulli(0), bernoulli(1), bernoulli(4), bernoulli(12)];
    let ok = got == [int(1), rat(-1, 2), rat(-1, 30), rat(-691, 2730)] && bernoulli(7).is_zero();
    Ok((ok, format!("B0={} B1={} B4={} B12={}", got[0], got[1], got[2], got[3])))
}

fn jets() -> Result<(bool, String)> {
    let s = JetShape::new(vec![2]);
    let j = DeltaJet::from_terms(&s, &[(vec![0], int(1)), (vec![1], int(1))]);
    let sq = j.clone() * j;
    let c = jet_extract(&sq, &[2])?;
    Ok((c == int(1), format!("(1+d3)^2 at d3^2 = {c}")))
}

fn su_data() -> Result<(bool, String)> {
    let r3 = RootSystem::new(3)?;
    let c = r3.tilde_c(1)?;
    let b = bracket(&TorusPoint(vec![rat(-1, 3), rat(5, 3)]));
    let ok = c.0 == vec![rat(1, 3), rat(2, 3)] && b.0 == vec![rat(2, 3), rat(2, 3)] && r3.weyl_w_n_minus_1().len() == 2;
    Ok((ok, format!("c(3,1)=({}, {}) bracket(-1/3,5/3)=({}, {})", c.0[0], c.0[1], b.0[0], b.0[1])))
}

fn volumes() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in 2..=5 {
        let v = pairing_a(&spec(2, g, &[]))?.value;
        ok &= v == svol_value(g)?;
        parts.push(format!("g{g}={v}"));
    }
    Ok((ok, parts.join(" ")))
}

fn thaddeus() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (g, j) in [(3, 1), (4, 1), (4, 2), (2, 1)] {
        let v = pairing_a(&spec(2, g, &[(2, j as u32)]))?.value;
        let t = thaddeus_value(g, j, j == g - 1)?;
        ok &= t.as_rational() == Some(&v);
        parts.push(format!("({g},{j})={v}"));
    }
    Ok((ok, parts.join(" ")))
}

fn routes() -> Result<(bool, String)> {
    let mut ok = true;
    let mut count = 0;
    for (n, g, a) in [(2, 2, vec![(2, 1)]), (2, 3, vec![]), (3, 2, vec![]), (3, 2, vec![(3, 1)]), (3, 2, vec![(2, 2)])]
    {
        let s = spec(n, g, &a);
        let canon = pairing_a(&s)?.value;
        let lit = iterated_residue(&integrand_mainab(&s, MainAbVariant::Literal)?)?;
        let f = pairing_f(&s)?.value;
        ok &= canon == lit && canon == f;
        count += 1;
    }
    Ok((ok, format!("{count} specs agree across variants")))
}

fn binverse() -> Result<(bool, String)> {
    let mut a = BTreeMap::new();
    a.insert(2, 1);
    let rep = binverse_identity_check(3, 1, 2, &a, &[2])?;
    Ok((rep.holds, format!("n=3 g=2 a2 cap 2: {}", rep.direct.constant_term())))
}

fn epsilon() -> Result<(bool, String)> {
    // ∫η e^{εω̄} = ε^k ∫η ω̄^k/k! with k = (dim − deg)/2, so the rescaled value is ε-independent.
    let mut ok = true;
    let mut parts = Vec::new();
    for s in [spec(2, 3, &[(2, 3)]), spec(2, 3, &[(2, 2)]), spec(3, 2, &[(3, 1)])] {
        let plain = pairing_a(&s)?.value;
        let k = ((s.real_dimension() - s.class_degree()) / 2) as i64;
        for e in [int(1), int(2), rat(1, 3)] {
            ok &= epsilon_scaled_pairing(&s, &e)?.value / powi(&e, k) == plain;
        }
        parts.push(plain.to_string());
    }
    Ok((ok, format!("rescaled values {}", parts.join(" "))))
}

fn b_sector() -> Result<(bool, String)> {
    let odd = pairing_b(&PairingSpec::new(2, 1, 2).with_b(2, 1))?.value;
    let red = pairing_b(&PairingSpec::new(2, 1, 3).with_a(2, 1).with_b(2, 1).with_b(2, 4))?.value;
    let ok = odd.is_zero() && red == rat(1, 2);
    Ok((ok, format!("unpaired={odd} reduced={red}")))
}

fn verlinde() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in [VerlindeSpec::new(2, 1, 2, 2), VerlindeSpec::new(2, 1, 3, 2), VerlindeSpec::new(3, 1, 2, 3)] {
        let rep = verlinde_check(&s, DEFAULT_DIGITS)?;
        ok &= rep.passed();
        parts.push(format!("D({},{},{},{})={}", s.n, s.d, s.g, s.k, rep.d));
    }
    Ok((ok, parts.join(" ")))
}

fn joint_oracle() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut agree = 0;
    for i in 0..20 {
        let f = random_expression(&mut rng, 2 + i % 2, 6)?;
        if iterated_residue(&f.to_expression()?)? == joint_expansion_residue(&f)? {
            agree += 1;
        }
    }
    Ok((agree == 20, format!("{agree}/20 random expressions agree")))
}

fn lattice_sums() -> Result<(bool, String)> {
    let w = witten_sum(2, 1, 2, &BTreeMap::new(), &LatticeSumConfig::new(2000))?;
    let s = szenes_check(SzenesFunction::HalfSquare, &LatticeSumConfig::new(2000))?;
    let ok = (w.value - to_f64(&rat(1, 12))).abs() < 1e-6 && s.difference() < 1e-6 && s.rhs == rat(1, 24);
    Ok((ok, format!("witten={:.12e} szenes_lhs={:.12e}", w.value, s.lhs)))
}

/// Runs every check in a fixed order.
pub fn run_selftest() -> Vec<CheckOutcome> {
    vec![
        outcome("bernoulli", bernoulli_values()),
        outcome("jets", jets()),
        outcome("su-data", su_data()),
        outcome("volumes", volumes()),
        outcome("thaddeus", thaddeus()),
        outcome("route-agreement", routes()),
        outcome("binverse", binverse()),
        outcome("epsilon", epsilon()),
        outcome("b-sector", b_sector()),
        outcome("verlinde", verlinde()),
        outcome("joint-oracle", joint_oracle()),
        outcome("lattice-sums", lattice_sums()),
    ]
}
