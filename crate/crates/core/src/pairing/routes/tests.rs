use super::*;
use crate::exact::rational::rat;

fn a(n: usize, g: usize, ms: &[(usize, u32)]) -> PairingSpec {
    ms.iter().fold(PairingSpec::new(n, 1, g), |s, &(r, m)| s.with_a(r, m))
}

#[test]
fn rank_two_volumes() {
    assert_eq!(pairing_a(&a(2, 2, &[])).unwrap().value, rat(1, 12));
    assert_eq!(pairing_a(&a(2, 3, &[])).unwrap().value, rat(7, 1440));
    assert_eq!(pairing_a(&a(2, 2, &[(2, 1)])).unwrap().value, rat(1, 2));
}

#[test]
fn integrand_shape_rank_two() {
    let e = integrand_mainab(&a(2, 2, &[]), MainAbVariant::Literal).unwrap();
    assert_eq!(e.dump(), "exp(1/2*Y1)*(-2)/(Y1^2)*(exp(1*Y1)-1)^-1");
    let e = integrand_mainab(&a(3, 2, &[]), MainAbVariant::Literal).unwrap();
    assert_eq!(e.len(), 1, "the two Weyl phases coincide and merge");
}

#[test]
fn variants_agree() {
    for (n, g, ms) in [(2, 2, vec![]), (2, 3, vec![(2, 1)]), (3, 2, vec![]), (3, 2, vec![(3, 1)]), (3, 2, vec![(2, 2)])]
    {
        let s = a(n, g, &ms);
        let c = iterated_residue(&integrand_mainab(&s, MainAbVariant::Canonical).unwrap()).unwrap();
        let l = iterated_residue(&integrand_mainab(&s, MainAbVariant::Literal).unwrap()).unwrap();
        assert_eq!(c, l, "{s}");
    }
}

#[test]
fn f_route_at_cap_zero_matches() {
    for (n, g, ms) in [(2, 2, vec![(2, 1)]), (3, 2, vec![]), (3, 2, vec![(3, 1)]), (3, 3, vec![(2, 1)])] {
        let s = a(n, g, &ms);
        assert_eq!(pairing_f(&s).unwrap().value, pairing_a(&s).unwrap().value, "{s}");
    }
}

#[test]
fn epsilon_scaling() {
    // a₂³ has degree 12 > 6
    let s = a(2, 2, &[(2, 3)]);
    for e in [int(1), int(2), rat(1, 3)] {
        assert!(epsilon_scaled_pairing(&s, &e).unwrap().value.is_zero());
    }
    // a₂ f₂ as the linear coefficient in ε
    assert_eq!(epsilon_coefficient(&a(2, 2, &[(2, 1)]), 1).unwrap(), rat(1, 2));
    assert!(epsilon_coefficient(&a(2, 2, &[(2, 3)]), 0).unwrap().is_zero());
    // top degree: a₂ a₂ ... n=2, g=3: dim 12, a₂³
    let top = a(2, 3, &[(2, 3)]);
    let vals: Vec<Rational> =
        [int(1), int(2), rat(1, 3)].iter().map(|e| epsilon_scaled_pairing(&top, e).unwrap().value).collect();
    assert_eq!(vals[0], vals[1]);
    assert_eq!(vals[0], vals[2]);
}

#[test]
fn b_sector() {
    let single = PairingSpec::new(2, 1, 2).with_b(2, 1);
    assert!(pairing_b(&single).unwrap().value.is_zero());
    let reduced = PairingSpec::new(2, 1, 3).with_a(2, 1).with_b(2, 1).with_b(2, 4);
    let r = pairing_b(&reduced).unwrap();
    assert_eq!(r.value, rat(1, 2));
    assert_eq!(r.metadata["literal_value"], "-1/2");
    let swapped = PairingSpec::new(2, 1, 3).with_a(2, 1).with_b(2, 4).with_b(2, 1);
    assert_eq!(pairing_b(&swapped).unwrap().value, rat(-1, 2));
    let two = PairingSpec::new(2, 1, 4).with_a(2, 1).with_b(2, 1).with_b(2, 5).with_b(2, 2).with_b(2, 6);
    assert_eq!(pairing_b(&two).unwrap().value, rat(1, 2));
    let top = PairingSpec::new(2, 1, 2).with_b(2, 1).with_b(2, 3).with_b(2, 2).with_b(2, 4);
    assert!(pairing_b(&top).unwrap().value.is_zero());
}

#[test]
fn binverse_small() {
    let empty = BTreeMap::new();
    let rep = binverse_identity_check(3, 1, 2, &empty, &[1]).unwrap();
    assert!(rep.holds, "{:?}", rep);
    let mut m = BTreeMap::new();
    m.insert(2, 1);
    let rep = binverse_identity_check(2, 1, 2, &m, &[]).unwrap();
    assert!(rep.holds);
    assert_eq!(rep.direct, DeltaJet::scalar(rat(1, 2)));
}

#[test]
fn f3_golden() {
    let base = PairingSpec::new(3, 1, 2);
    assert!(pairing_f(&base.clone().with_f(3, 1)).unwrap().value.is_zero());
    assert_eq!(pairing_f(&base.clone().with_f(3, 2)).unwrap().value, rat(7, 972));
    assert_eq!(pairing_f(&base.clone().with_a(2, 1).with_f(3, 1)).unwrap().value, rat(1, 648));
    assert_eq!(pairing_f(&base.with_a(3, 1).with_f(3, 1)).unwrap().value, rat(1, 54));
}

#[test]
fn binverse_grid() {
    let monomials: [&[(usize, u32)]; 3] = [&[], &[(2, 1)], &[(3, 1)]];
    for g in 2..=3 {
        for ms in &monomials[..2] {
            let m: BTreeMap<usize, u32> = ms.iter().copied().collect();
            assert!(binverse_identity_check(2, 1, g, &m, &[]).unwrap().holds);
        }
        for cap in 0..=2u32 {
            for ms in monomials {
                let m: BTreeMap<usize, u32> = ms.iter().copied().collect();
                let rep = binverse_identity_check(3, 1, g, &m, &[cap]).unwrap();
                assert!(rep.holds, "g={g} cap={cap} m={m:?}: {rep:?}");
            }
        }
    }
}

#[test]
fn dual_degree_flips_odd_classes() {
    let s1 = PairingSpec::new(3, 1, 2);
    let s2 = PairingSpec::new(3, 2, 2);
    assert_eq!(pairing_a(&s1).unwrap().value, pairing_a(&s2).unwrap().value);
    assert_eq!(pairing_a(&s1.clone().with_a(3, 1)).unwrap().value, -pairing_a(&s2.clone().with_a(3, 1)).unwrap().value);
    assert_eq!(
        pairing_f(&s1.with_a(2, 1).with_f(3, 1)).unwrap().value,
        -pairing_f(&s2.with_a(2, 1).with_f(3, 1)).unwrap().value
    );
}
