use super::*;
use crate::exact::rational::{int, rat};
use crate::exact::{Monomial, MultiPoly, RatFunc, Rational};

type P = MultiPoly<Rational>;
type R = RatFunc<Rational>;

fn inv_mono(n: usize, exps: &[u32]) -> R {
    R::from_parts(P::one(n), Monomial::from_slice(exps), []).unwrap()
}

#[test]
fn expand_euler_factor() {
    let t = ExpTerm::new(vec![int(0)], R::one(1), vec![EulerFactor::new(0, int(1), 1)]);
    let s = expand_in(&t, 0, 1).unwrap();
    assert_eq!(s.lowest, -1);
    assert_eq!(s.coeff(-1), R::one(1));
    assert_eq!(s.coeff(0), R::constant(1, rat(-1, 2)));
    assert_eq!(s.coeff(1), R::constant(1, rat(1, 12)));
}

#[test]
fn expand_geometric() {
    let s = &P::var(2, 0) + &P::var(2, 1);
    let t = ExpTerm::rational(R::new(P::one(2), &s).unwrap());
    let ser = expand_in(&t, 1, 2).unwrap();
    assert_eq!(ser.lowest, 0);
    assert_eq!(ser.coeff(0), inv_mono(2, &[1, 0]));
    assert_eq!(ser.coeff(1), inv_mono(2, &[2, 0]).scale(&int(-1)));
    assert_eq!(ser.coeff(2), inv_mono(2, &[3, 0]));
}

#[test]
fn expand_exponential_times_square() {
    let t = ExpTerm::new(vec![int(1)], R::from_poly(P::var(1, 0).pow(2)), vec![]);
    let ser = expand_in(&t, 0, 3).unwrap();
    assert_eq!(ser.lowest, 2);
    assert_eq!(ser.coeff(2), R::one(1));
    assert_eq!(ser.coeff(3), R::one(1));
    assert_eq!(ser.order(), 3);
}

#[test]
fn single_residues() {
    let e = Expression::from_terms(1, [ExpTerm::rational(inv_mono(1, &[1]))]);
    assert_eq!(iterated_residue(&e).unwrap(), int(1));
    let e = Expression::from_terms(1, [ExpTerm::new(vec![int(1)], R::one(1), vec![])]);
    assert_eq!(iterated_residue(&e).unwrap(), int(0));
    // e^X/(X^2 (1 − e^{2X})) = −e^X/(X^2 (e^{2X} − 1))
    let e = Expression::from_terms(
        1,
        [ExpTerm::new(vec![int(1)], inv_mono(1, &[2]).scale(&int(-1)), vec![EulerFactor::new(0, int(2), 1)])],
    );
    assert_eq!(iterated_residue(&e).unwrap(), rat(1, 12));
}

#[test]
fn iterated_examples() {
    let e = Expression::from_terms(2, [ExpTerm::new(vec![int(1), int(0)], inv_mono(2, &[2, 1]), vec![])]);
    assert_eq!(iterated_residue(&e).unwrap(), int(1));
    let s = &P::var(2, 0) + &P::var(2, 1);
    let r = R::from_parts(P::one(2), Monomial::from_slice(&[1, 1]), [(s, 1)]).unwrap();
    let e = Expression::from_terms(2, [ExpTerm::rational(r)]);
    let inner = residue_single(&e, 1).unwrap();
    assert_eq!(inner.len(), 1);
    assert_eq!(inner.terms().next().unwrap().rat, inv_mono(2, &[2, 0]));
    assert_eq!(iterated_residue(&e).unwrap(), int(0));
}

#[test]
fn positive_part_residues() {
    let one = inv_mono(1, &[1]);
    let e = Expression::from_terms(
        1,
        [ExpTerm::new(vec![int(1)], one.clone(), vec![]), ExpTerm::new(vec![int(-1)], one.clone(), vec![])],
    );
    assert_eq!(scalar_value(&res_plus(&e, 0).unwrap()).unwrap(), int(1));
    let e = Expression::from_terms(1, [ExpTerm::new(vec![int(0)], one.clone(), vec![])]);
    assert_eq!(scalar_value(&res_plus(&e, 0).unwrap()).unwrap(), int(0));
    let e = Expression::from_terms(
        1,
        [ExpTerm::new(vec![int(2)], one.clone(), vec![]), ExpTerm::new(vec![int(1)], one.scale(&int(-3)), vec![])],
    );
    assert_eq!(scalar_value(&res_plus(&e, 0).unwrap()).unwrap(), int(-2));
}

#[test]
fn derivatives_have_no_residue() {
    let s = &P::var(2, 0) + &P::var(2, 1);
    let r = R::from_parts(&P::var(2, 0).pow(2) + &P::one(2), Monomial::from_slice(&[1, 3]), [(s, 2)]).unwrap();
    let t = ExpTerm::new(vec![rat(1, 3), rat(2, 3)], r, vec![EulerFactor::new(1, int(1), 2)]);
    let d = t.derivative(1);
    assert!(residue_single(&d, 1).unwrap().is_empty());
}

#[test]
fn dump_is_deterministic() {
    let e = Expression::from_terms(
        1,
        [ExpTerm::new(vec![rat(1, 2)], inv_mono(1, &[2]).scale(&int(-2)), vec![EulerFactor::new(0, int(1), 1)])],
    );
    assert_eq!(e.dump(), "exp(1/2*Y1)*(-2)/(Y1^2)*(exp(1*Y1)-1)^-1");
}
