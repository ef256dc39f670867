use super::*;
use astro_float::{BigFloat, Consts, RoundingMode};
use proptest::prelude::*;

fn z(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_i64(v)
}

#[test]
fn roots_of_unity_basics() {
    assert_eq!(z(1, 0), int(1));
    assert_eq!(z(2, 1), int(-1));
    assert_eq!(&z(4, 1) * &z(4, 1), z(2, 1));
    assert_eq!(z(12, 12), int(1));
    assert_eq!(z(6, 3), int(-1));
}

#[test]
fn cube_roots_sum_to_zero() {
    let s = &(&z(3, 1) + &z(3, 2)) + &int(1);
    assert!(s.is_zero());
}

#[test]
fn inverse_pair_multiplies_to_one() {
    assert_eq!(&z(8, 1) * &z(8, 7), int(1));
}

#[test]
fn norm_of_one_minus_zeta5() {
    // brute force: multiply the four factors as plain polynomials in x,
    // reduce modulo x^5 - 1, and read off the value at the fifth root
    let mut poly = vec![0i64; 5];
    poly[0] = 1;
    for j in 1..5 {
        let mut next = vec![0i64; 5];
        for (i, &c) in poly.iter().enumerate() {
            next[i] += c;
            next[(i + j) % 5] -= c;
        }
        poly = next;
    }
    // the sum of all fifth roots is zero, so subtract poly[1] from each slot
    let reduced: Vec<i64> = poly.iter().map(|c| c - poly[1]).collect();
    assert!(reduced[1..].iter().all(|&c| c == 0));
    assert_eq!(reduced[0], 5);

    let one = int(1);
    let mut prod = int(1);
    for k in 1..5 {
        prod = &prod * &(&one - &z(5, k));
    }
    assert_eq!(prod, int(5));
}

#[test]
fn conjugation_examples() {
    assert_eq!(z(8, 1).conj(), z(8, 7));
    let half = Cyclotomic::ratio(3, 2);
    assert_eq!(half.conj(), half);
    let r = &z(5, 1) + &z(5, 4);
    assert_eq!(r.conj(), r);
    assert!(r.is_real());
    assert!(!z(8, 1).is_real());
    assert!(Cyclotomic::zero(7).is_real());
}

#[test]
fn sign_examples() {
    assert_eq!(sqrt5().sign().unwrap(), 1);
    assert_eq!(Cyclotomic::ratio(-3, 7).sign().unwrap(), -1);
    assert_eq!((&z(3, 1) + &z(3, 2)).sign().unwrap(), -1);
    assert_eq!(z(8, 1).sign(), Err(Error::NotReal));
    let two = int(2);
    assert_eq!((&sqrt5() - &two).sign().unwrap(), 1);
    assert_eq!((&-sqrt5() - &two).sign().unwrap(), -1);
    assert_eq!((&sqrt5() * &sqrt5()), int(5));
}

#[test]
fn promote_examples() {
    assert_eq!(int(-1).promote(8).unwrap().numerators(), z(8, 4).numerators());
    assert!(Cyclotomic::zero(1).promote(9).unwrap().is_zero());
    let p = z(3, 1).promote(12).unwrap();
    assert_eq!(p.order(), 12);
    assert_eq!(p.numerators(), z(12, 4).numerators());
    assert_eq!(
        z(3, 1).promote(10),
        Err(Error::IncompatibleOrder { from: 3, to: 10 })
    );
}

#[test]
fn demote_round_trip() {
    let a = &z(5, 2) + &Cyclotomic::ratio(1, 3);
    let up = a.promote(20).unwrap();
    let down = up.demote(5).unwrap().unwrap();
    assert_eq!(down.order(), 5);
    assert_eq!(down.numerators(), a.numerators());
    assert_eq!(down.denominator(), a.denominator());
    assert!(z(8, 1).demote(4).unwrap().is_none());
    assert_eq!(inv_sqrt2().minimal_order().order(), 8);
    assert_eq!(sqrt5().promote(40).unwrap().minimal_order().order(), 5);
}

#[test]
fn inverse_and_division() {
    let a = &z(7, 1) + &int(2);
    let b = a.inv().unwrap();
    assert_eq!(&a * &b, int(1));
    assert_eq!(Cyclotomic::zero(7).inv(), Err(Error::DivisionByZero(7)));
    let q = z(8, 3).div(&z(8, 1)).unwrap();
    assert_eq!(q, z(8, 2));
    assert_eq!(inv_sqrt2().pow(-2).unwrap(), int(2));
}

#[test]
fn json_round_trip() {
    let a = &z(8, 1).scale_rational(&BigRational::new(3.into(), 4.into())) - &int(2);
    let s = serde_json::to_string(&a).unwrap();
    assert_eq!(s, r#"{"order":8,"coords":[[0,"-2"],[1,"3/4"]]}"#);
    let back: Cyclotomic = serde_json::from_str(&s).unwrap();
    assert_eq!(back, a);
    // exponents beyond phi(n) are reduced on input
    let w: Cyclotomic = serde_json::from_str(r#"{"order":4,"coords":[[2,1]]}"#).unwrap();
    assert_eq!(w, int(-1));
}

#[test]
fn mixed_orders_promote_to_lcm() {
    let s = &z(3, 1) + &z(4, 1);
    assert_eq!(s.order(), 12);
    assert_eq!(&s - &z(4, 1), z(3, 1));
}

fn arb_elem(n: u32) -> impl Strategy<Value = Cyclotomic> {
    let phi = euler_phi(n);
    (prop::collection::vec(-9i64..=9, phi), 1i64..=5).prop_map(move |(v, d)| {
        let coords: Vec<(i64, BigRational)> = v
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k as i64, BigRational::new(c.into(), d.into())))
            .collect();
        Cyclotomic::from_coords(n, &coords)
    })
}

fn arb_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    (1u32..=24).prop_flat_map(|n| (arb_elem(n), arb_elem(n), arb_elem(n)))
}

/// Sum a_k cos(2 pi k / n) evaluated independently with 200-bit floats.
fn float_value(a: &Cyclotomic) -> BigFloat {
    let p = 200;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().unwrap();
    let two_pi = cc.pi(p, rm).mul(&BigFloat::from_u8(2, p), p, rm);
    let mut acc = BigFloat::from_u8(0, p);
    for (k, r) in a.coords() {
        let angle = two_pi
            .mul(&BigFloat::from_u64(k as u64, p), p, rm)
            .div(&BigFloat::from_u32(a.order(), p), p, rm);
        let c = angle.cos(p, rm, &mut cc);
        let num = BigFloat::parse(&r.numer().to_string(), astro_float::Radix::Dec, p, rm, &mut cc);
        let den = BigFloat::parse(&r.denom().to_string(), astro_float::Radix::Dec, p, rm, &mut cc);
        acc = acc.add(&c.mul(&num, p, rm).div(&den, p, rm), p, rm);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conj_is_ring_automorphism((a, b, _c) in arb_triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn norm_is_nonnegative((a, _b, _c) in arb_triple()) {
        let nrm = &a * &a.conj();
        prop_assert!(nrm.is_real());
        let s = nrm.sign().unwrap();
        prop_assert_eq!(s == 0, a.is_zero());
        prop_assert!(s >= 0);
    }

    #[test]
    fn canonical_form_is_route_independent(n in 1u32..=24, k in -40i64..40, j in -40i64..40) {
        // zeta^k * zeta^j built two ways
        let direct = Cyclotomic::root_of_unity(n, k + j);
        let product = &Cyclotomic::root_of_unity(n, k) * &Cyclotomic::root_of_unity(n, j);
        prop_assert_eq!(direct.numerators(), product.numerators());
        let coords = Cyclotomic::from_coords(n, &[(k, BigRational::one()), (j, BigRational::one())]);
        let sum = &Cyclotomic::root_of_unity(n, k) + &Cyclotomic::root_of_unity(n, j);
        prop_assert_eq!(coords.numerators(), sum.numerators());
        prop_assert_eq!(coords.denominator(), sum.denominator());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sign_agrees_with_float((a, _b, _c) in arb_triple()) {
        let r = a.real_part();
        prop_assume!(!r.is_zero());
        let s = r.sign().unwrap();
        let f = float_value(&r);
        let expect = if f.is_zero() { 0 } else if f.is_positive() { 1 } else { -1 };
        prop_assert_eq!(s, expect);
    }
}
