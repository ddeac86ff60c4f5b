use std::collections::BTreeMap;

use moduli_core::exact::rational::{int, rat};
use moduli_core::pairing::{
    binverse_identity_check, integrand_mainab, pair, pairing_a, pairing_b, pairing_f, MainAbVariant, PairingSpec, Route,
};
use moduli_core::residue::iterated_residue;
use moduli_core::Rational;

/// Every a-monomial with Σ r·m_r ≤ max_weight.
fn a_monomials(n: usize, max_weight: usize) -> Vec<BTreeMap<usize, u32>> {
    let mut out = vec![BTreeMap::new()];
    for r in 2..=n {
        let mut next = Vec::new();
        for m in &out {
            let used: usize = m.iter().map(|(r, e)| r * *e as usize).sum();
            for e in 0..=((max_weight - used) / r) as u32 {
                let mut m = m.clone();
                if e > 0 {
                    m.insert(r, e);
                }
                next.push(m);
            }
        }
        out = next;
    }
    out
}

fn with_a(n: usize, d: i64, g: usize, a: &BTreeMap<usize, u32>) -> PairingSpec {
    let mut s = PairingSpec::new(n, d, g);
    s.a = a.clone();
    s
}

#[test]
fn routes_agree_on_grid() {
    for n in 2..=3 {
        for g in 2..=3 {
            for a in a_monomials(n, 8) {
                let s = with_a(n, 1, g, &a);
                let canon = pairing_a(&s).unwrap().value;
                let literal = iterated_residue(&integrand_mainab(&s, MainAbVariant::Literal).unwrap()).unwrap();
                let f = pairing_f(&s).unwrap().value;
                assert_eq!(canon, literal, "{s:?}");
                assert_eq!(canon, f, "{s:?}");
            }
        }
    }
}

#[test]
fn rank_three_golden_values() {
    assert_eq!(pairing_a(&PairingSpec::new(3, 1, 2)).unwrap().value, rat(53, 1632960));
    assert_eq!(pairing_a(&PairingSpec::new(3, 1, 2).with_a(2, 1)).unwrap().value, rat(7, 6480));
    assert_eq!(pairing_a(&PairingSpec::new(3, 1, 2).with_a(3, 1)).unwrap().value, rat(-1, 1944));
    let f3 = |s: PairingSpec| pairing_f(&s).unwrap().value;
    assert_eq!(f3(PairingSpec::new(3, 1, 2).with_f(3, 1)), int(0));
    assert_eq!(f3(PairingSpec::new(3, 1, 2).with_f(3, 2)), rat(7, 972));
    assert_eq!(f3(PairingSpec::new(3, 1, 2).with_a(2, 1).with_f(3, 1)), rat(1, 648));
    assert_eq!(f3(PairingSpec::new(3, 1, 2).with_a(3, 1).with_f(3, 1)), rat(1, 54));
}

#[test]
fn conjugate_degree_flips_odd_classes() {
    for a in a_monomials(3, 6) {
        let odd = a.get(&3).copied().unwrap_or(0) % 2 == 1;
        let v1 = pairing_a(&with_a(3, 1, 2, &a)).unwrap().value;
        let v2 = pairing_a(&with_a(3, 2, 2, &a)).unwrap().value;
        assert_eq!(v2, if odd { -v1.clone() } else { v1.clone() }, "{a:?}");
    }
}

#[test]
fn binverse_identity_on_grid() {
    for n in 2..=3usize {
        for g in 2..=3 {
            let caps: Vec<Vec<u32>> = if n == 2 { vec![vec![]] } else { (0..=2).map(|c| vec![c]).collect() };
            for cap in caps {
                for a in a_monomials(n, if g == 3 { 4 } else { 6 }) {
                    let r = binverse_identity_check(n, 1, g, &a, &cap).unwrap();
                    assert!(r.holds, "n={n} g={g} a={a:?} cap={cap:?}");
                }
            }
        }
    }
}

#[test]
fn t96b_route_without_f_matches_a_route() {
    for g in 2..=3 {
        let s = PairingSpec::new(3, 1, g).with_a(2, 1);
        assert_eq!(pair(&s, Some(Route::T96b)).unwrap().value, pairing_a(&s).unwrap().value);
    }
}

#[test]
fn unpaired_b_classes_vanish() {
    let cases = [
        PairingSpec::new(2, 1, 2).with_b(2, 1),
        PairingSpec::new(2, 1, 3).with_b(2, 1).with_b(2, 2),
        PairingSpec::new(2, 1, 3).with_a(2, 1).with_b(2, 1).with_b(2, 5),
        PairingSpec::new(3, 1, 2).with_b(2, 1).with_b(3, 1),
    ];
    for s in cases {
        assert_eq!(pairing_b(&s).unwrap().value, Rational::from_integer(0.into()), "{s:?}");
    }
}

#[test]
fn symplectic_pair_reduces_genus() {
    let lower = pairing_a(&PairingSpec::new(2, 1, 2).with_a(2, 1)).unwrap().value;
    let b = pairing_b(&PairingSpec::new(2, 1, 3).with_a(2, 1).with_b(2, 1).with_b(2, 4)).unwrap();
    assert_eq!(lower, rat(1, 2));
    assert_eq!(b.value, lower);
    assert_eq!(b.metadata["literal_value"], "-1/2");
    assert_eq!(b.metadata["b_pair_sign"], "-1");
}

#[test]
fn pair_picks_route_from_classes() {
    assert_eq!(pair(&PairingSpec::new(2, 1, 2), None).unwrap().route, Route::MainAb);
    assert_eq!(pair(&PairingSpec::new(3, 1, 2).with_f(3, 1), None).unwrap().route, Route::T96b);
    assert_eq!(pair(&PairingSpec::new(2, 1, 2).with_b(2, 1), None).unwrap().route, Route::Eq936);
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(pairing_a(&PairingSpec::new(2, 2, 2)).is_err());
    assert!(pairing_a(&PairingSpec::new(1, 1, 2)).is_err());
    assert!(pairing_a(&PairingSpec::new(2, 1, 1)).is_err());
    assert!(pairing_a(&PairingSpec::new(2, 1, 2).with_a(3, 1)).is_err());
}
