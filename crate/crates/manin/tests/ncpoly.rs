use manin::ncpoly::{Mono, Word};
use manin::{rings, Error, Param, Poly, Ring, Series, Q};
use proptest::prelude::*;
use std::sync::Arc;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn ring_pool() -> Vec<Arc<Ring>> {
    vec![
        rings::free(2, 2).unwrap(),
        rings::weyl(2).unwrap(),
        rings::manin_generic(2, 2).unwrap(),
        rings::grassmann(3).unwrap(),
        rings::gl_pbw(2).unwrap(),
        rings::cartier_foata(2, 2).unwrap(),
        rings::q_manin_generic(2, 2).unwrap(),
    ]
}

type Raw = Vec<(Vec<u16>, i32, i64, i64)>;

fn raw_poly() -> impl Strategy<Value = Raw> {
    prop::collection::vec(
        (prop::collection::vec(0u16..16, 0..4), -2i32..3, -4i64..5, 1i64..4),
        0..4,
    )
}

fn build(ring: &Arc<Ring>, raw: &Raw) -> Poly {
    let g = ring.sys().names().len() as u16;
    let q_ok = ring.sys().has_q();
    let terms = raw.iter().map(|(w, e, n, d)| {
        let w: Vec<u16> = w.iter().map(|x| x % g).collect();
        let e = if q_ok { *e } else { 0 };
        (Mono::new(Word::from_slice(&w), e), Q::new((*n).into(), (*d).into()))
    });
    Poly::from_terms(ring, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(r in 0usize..7, a in raw_poly(), b in raw_poly(), c in raw_poly()) {
        let ring = &ring_pool()[r];
        let (a, b, c) = (build(ring, &a), build(ring, &b), build(ring, &c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn multiplication_distributes(r in 0usize..7, a in raw_poly(), b in raw_poly(), c in raw_poly()) {
        let ring = &ring_pool()[r];
        let (a, b, c) = (build(ring, &a), build(ring, &b), build(ring, &c));
        let bc = b.add(&c).unwrap();
        prop_assert_eq!(a.mul(&bc).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(bc.mul(&a).unwrap(), b.mul(&a).unwrap().add(&c.mul(&a).unwrap()).unwrap());
    }

    #[test]
    fn render_parse_roundtrip(r in 0usize..7, a in raw_poly()) {
        let ring = &ring_pool()[r];
        let a = build(ring, &a);
        let text = a.render();
        prop_assert_eq!(Poly::parse(ring, &text).unwrap(), a);
    }

    #[test]
    fn addition_has_inverses(r in 0usize..7, a in raw_poly()) {
        let ring = &ring_pool()[r];
        let a = build(ring, &a);
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn series_inverse_is_two_sided(a in raw_poly(), b in raw_poly(), d in 1usize..5) {
        let ring = rings::weyl(2).unwrap();
        let p1 = build(&ring, &a);
        let p2 = build(&ring, &b);
        let s = Series::from_coeffs(&ring, Param::T, d, vec![Poly::int(&ring, 2), p1, p2]).unwrap();
        let inv = s.inverse().unwrap();
        let one = Series::constant(Poly::one(&ring), Param::T, d);
        prop_assert_eq!(s.mul(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.mul(&s).unwrap(), one);
    }
}

#[test]
fn weyl_commutation() {
    let w = rings::weyl(2).unwrap();
    let x1 = Poly::gen(&w, "x1").unwrap();
    let d1 = Poly::gen(&w, "d1").unwrap();
    let d2 = Poly::gen(&w, "d2").unwrap();
    assert_eq!(d1.commutator(&x1).unwrap(), Poly::one(&w));
    assert!(d2.commutator(&x1).unwrap().is_zero());
    assert_eq!(d1.mul(&x1).unwrap().render(), "1 + 1·x1·d1");
    // ∂ x² = x² ∂ + 2x
    let x1sq = x1.pow(2).unwrap();
    assert_eq!(d1.mul(&x1sq).unwrap(), Poly::parse(&w, "x1·x1·d1 + 2·x1").unwrap());
}

#[test]
fn grassmann_squares_vanish() {
    let g = rings::grassmann(3).unwrap();
    let p1 = Poly::gen(&g, "psi1").unwrap();
    let p2 = Poly::gen(&g, "psi2").unwrap();
    assert!(p1.mul(&p1).unwrap().is_zero());
    assert!(p1.anticommutator(&p2).unwrap().is_zero());
    let s = p1.add(&p2).unwrap();
    assert!(s.mul(&s).unwrap().is_zero());
}

#[test]
fn q_powers_render_and_specialize() {
    let r = rings::q_poly(2).unwrap();
    let x1 = Poly::gen(&r, "x1").unwrap();
    let x2 = Poly::gen(&r, "x2").unwrap();
    let p = x2.mul(&x1).unwrap();
    assert_eq!(p.render(), "1·q·x1·x2");
    assert_eq!(Poly::parse(&r, &p.render()).unwrap(), p);
    assert_eq!(p.at_q_one(), x1.mul(&x2).unwrap().at_q_one());
    let f = rings::free(2, 2).unwrap();
    assert!(matches!(Poly::q_power(&f, 1), Err(Error::NoQ(_))));
}

#[test]
fn rational_coefficients_render_reduced() {
    let f = rings::free(2, 2).unwrap();
    let a = Poly::gen(&f, "M[1,1]").unwrap();
    let p = a.scale(&Q::new(2.into(), 6.into())).sub(&Poly::int(&f, 3)).unwrap();
    assert_eq!(p.render(), "−3 + 1/3·M[1,1]");
    assert_eq!(Poly::parse(&f, "-3 + 1/3*M[1,1]").unwrap(), p);
    assert_eq!(Poly::zero(&f).render(), "0");
}

#[test]
fn parse_errors() {
    let f = rings::free(2, 2).unwrap();
    assert!(matches!(Poly::parse(&f, "M[3,3]"), Err(Error::UnknownGenerator(_))));
    assert!(matches!(Poly::parse(&f, "M[1,1] +"), Err(Error::Parse(_))));
    assert!(matches!(Poly::parse(&f, "M[1,1] M[1,2]"), Err(Error::Parse(_))));
    assert!(matches!(Poly::parse(&f, "1/0·M[1,1]"), Err(Error::Parse(_))));
}

#[test]
fn mixing_rings_is_an_error() {
    let a = Poly::one(&rings::free(2, 2).unwrap());
    let b = Poly::one(&rings::weyl(2).unwrap());
    assert!(matches!(a.add(&b), Err(Error::RingMismatch(..))));
}

#[test]
fn series_exp_log_invert_each_other() {
    let w = rings::weyl(1).unwrap();
    let x = Poly::gen(&w, "x1").unwrap();
    let d = Poly::gen(&w, "d1").unwrap();
    let s = Series::from_coeffs(&w, Param::Eps, 4, vec![Poly::zero(&w), x, d]).unwrap();
    let e = s.exp().unwrap();
    assert_eq!(e.log().unwrap(), s);
    let one_plus = Series::constant(Poly::one(&w), Param::Eps, 4).add(&s).unwrap();
    assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
}

#[test]
fn series_exp_of_scalar_has_factorial_coefficients() {
    let f = rings::free(1, 1).unwrap();
    let s = Series::monomial(Poly::one(&f), 1, Param::T, 5);
    let e = s.exp().unwrap();
    let mut fact = 1i64;
    for k in 0..=5 {
        if k > 0 {
            fact *= k as i64;
        }
        assert_eq!(e.coeff(k), Poly::scalar(&f, Q::new(1.into(), fact.into())));
    }
}

#[test]
fn series_derivative_and_truncation() {
    let f = rings::free(1, 1).unwrap();
    let m = Poly::gen(&f, "M[1,1]").unwrap();
    let s = Series::from_coeffs(&f, Param::T, 3, vec![Poly::one(&f), m.clone(), m.pow(2).unwrap(), m.pow(3).unwrap()]).unwrap();
    let ds = s.derivative();
    assert_eq!(ds.coeff(0), m);
    assert_eq!(ds.coeff(2), m.pow(3).unwrap().scale(&q(3)));
    assert_eq!(s.with_degree(1).degree(), 1);
    assert!(s.inverse().is_ok());
    let no_const = Series::monomial(m, 1, Param::T, 3);
    assert!(matches!(no_const.inverse(), Err(Error::NotInvertible(_))));
}
