//! Lattice sum over all regular weights against the iterated residue with (e^{−Y_j} − 1) denominators.

use std::fmt;

use num_traits::ToPrimitive;

use super::lattice::{box_sum, cmul, i_pow, F64Poly, LatticeSumConfig};
use crate::error::{invalid, Result};
use crate::exact::rational::{int, rat, to_f64};
use crate::exact::{MultiPoly, RatFunc, Rational};
use crate::residue::{iterated_residue, EulerFactor, ExpTerm, Expression};
use crate::su::{bracket, RootSystem, TorusPoint};

/// Built-in test functions `e^{−γ(X)} / D(X)` with D a product of roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SzenesFunction {
    /// n = 2, e^{−Y/2} / Y².
    HalfSquare,
    /// n = 2, e^{−Y/2} / Y⁴.
    HalfQuartic,
    /// n = 2, e^{−Y/3} / Y².
    ThirdSquare,
    /// n = 3, e^{−(Y₁+Y₂)/3} / ϖ².
    RankThreeVarpi,
}

impl SzenesFunction {
    pub const ALL: [SzenesFunction; 4] = [
        SzenesFunction::HalfSquare,
        SzenesFunction::HalfQuartic,
        SzenesFunction::ThirdSquare,
        SzenesFunction::RankThreeVarpi,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SzenesFunction::HalfSquare => "n2-half-y2",
            SzenesFunction::HalfQuartic => "n2-half-y4",
            SzenesFunction::ThirdSquare => "n2-third-y2",
            SzenesFunction::RankThreeVarpi => "n3-third-varpi2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.id() == s).map_or_else(
            || {
                invalid(format!(
                    "unknown test function {s:?}; expected one of n2-half-y2, n2-half-y4, n2-third-y2, n3-third-varpi2"
                ))
            },
            Ok,
        )
    }

    pub fn n(self) -> usize {
        match self {
            SzenesFunction::RankThreeVarpi => 3,
            _ => 2,
        }
    }

    fn gamma(self) -> Vec<Rational> {
        match self {
            SzenesFunction::HalfSquare | SzenesFunction::HalfQuartic => vec![rat(1, 2)],
            SzenesFunction::ThirdSquare => vec![rat(1, 3)],
            SzenesFunction::RankThreeVarpi => vec![rat(1, 3), rat(1, 3)],
        }
    }

    fn denominator(self, rs: &RootSystem) -> MultiPoly<Rational> {
        match self {
            SzenesFunction::HalfSquare | SzenesFunction::ThirdSquare => MultiPoly::var(1, 0).pow(2),
            SzenesFunction::HalfQuartic => MultiPoly::var(1, 0).pow(4),
            SzenesFunction::RankThreeVarpi => rs.varpi_poly::<Rational>().pow(2),
        }
    }
}

impl fmt::Display for SzenesFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SzenesReport {
    pub function: SzenesFunction,
    /// Truncated lattice sum at the largest cutoff.
    pub lhs: f64,
    pub lhs_imag: f64,
    pub rhs: Rational,
    /// |LHS − RHS| at cutoff, 2·cutoff, ….
    pub differences: Vec<f64>,
}

impl SzenesReport {
    pub fn difference(&self) -> f64 {
        *self.differences.last().expect("at least one cutoff")
    }
}

/// The residue side: `Σ_w [[w f]] / ∏(e^{−Y_j} − 1)`, exact.
pub fn szenes_rhs(function: SzenesFunction) -> Result<Rational> {
    let rs = RootSystem::new(function.n())?;
    let den = function.denominator(&rs);
    let gamma = TorusPoint(function.gamma());
    let mut expr = Expression::new(rs.rank());
    for w in rs.weyl_w_n_minus_1() {
        let subs = rs.weyl_substitution(&w);
        let rat_part = RatFunc::new(MultiPoly::one(rs.rank()), &den.compose(&subs))?;
        let shifted = bracket(&rs.act_point(&w, &gamma));
        let exp = shifted.0.iter().map(|c| -c).collect();
        let euler = (0..rs.rank()).map(|j| EulerFactor::new(j, int(-1), 1)).collect();
        expr.push(ExpTerm::new(exp, rat_part, euler));
    }
    iterated_residue(&expr)
}

/// The lattice side: Σ f(2πiλ) over regular λ with fundamental-weight coordinates in [−N, N].
pub fn szenes_lhs(function: SzenesFunction, cutoff: i64) -> Result<(f64, f64)> {
    let rs = RootSystem::new(function.n())?;
    let den_poly = function.denominator(&rs);
    let degree = den_poly.total_degree() as i64;
    let den = F64Poly::new(&den_poly);
    let roots: Vec<(usize, usize)> = rs.positive_roots();
    // γ_j = a_j / q with a common denominator q
    let gamma = function.gamma();
    let q: i64 = gamma.iter().map(|c| c.denom().to_i64().expect("small")).fold(1, num_integer::lcm);
    let steps: Vec<i64> = gamma.iter().map(|c| (c * int(q)).to_integer().to_i64().expect("small")).collect();
    let phases: Vec<(f64, f64)> = (0..q)
        .map(|k| {
            let t = -std::f64::consts::TAU * k as f64 / q as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let s = box_sum(rs.rank(), -cutoff, cutoff, |l| {
        if roots.iter().any(|&(j, k)| l[j..k].iter().sum::<i64>() == 0) {
            return (0.0, 0.0);
        }
        let x: Vec<f64> = l.iter().map(|&v| v as f64).collect();
        let k = l.iter().zip(&steps).map(|(a, b)| a * b).sum::<i64>().rem_euclid(q) as usize;
        let w = 1.0 / den.eval(&x);
        (phases[k].0 * w, phases[k].1 * w)
    });
    // 1 / (2πi)^{deg D}
    let scale = (std::f64::consts::TAU).powi(-degree as i32);
    let z = cmul(s, i_pow(-degree));
    Ok((z.0 * scale, z.1 * scale))
}

pub fn szenes_check(function: SzenesFunction, config: &LatticeSumConfig) -> Result<SzenesReport> {
    if config.cutoff < 1 {
        return invalid("cutoff must be positive");
    }
    let rhs = szenes_rhs(function)?;
    let exact = to_f64(&rhs);
    let mut differences = Vec::new();
    let mut last = (0.0, 0.0);
    for k in 0..=config.doublings {
        last = szenes_lhs(function, config.cutoff << k)?;
        differences.push((last.0 - exact).abs());
    }
    Ok(SzenesReport { function, lhs: last.0, lhs_imag: last.1, rhs, differences })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_function_exact() {
        assert_eq!(szenes_rhs(SzenesFunction::HalfSquare).unwrap(), rat(1, 24));
    }

    #[test]
    fn third_square() {
        assert_eq!(szenes_rhs(SzenesFunction::ThirdSquare).unwrap(), rat(1, 36));
        let r = szenes_check(SzenesFunction::ThirdSquare, &LatticeSumConfig::new(3000)).unwrap();
        assert!(r.difference() < 1e-6, "{r:?}");
    }
}
