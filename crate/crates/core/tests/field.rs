//! Arithmetic in `F_{p^2}`: worked examples, exhaustive checks and
//! algebraic laws.

mod common;

use proptest::prelude::*;
use superspecial::{Error, FieldElement, PrimeField};

#[test]
fn rejects_bad_characteristics() {
    for p in [0, 1, 2, 3, 5, 7, 9, 15, 21, 1 << 31] {
        assert!(
            matches!(PrimeField::new(p), Err(Error::InvalidPrime(_))),
            "p={p}"
        );
    }
    assert!(PrimeField::new(11).is_ok());
    assert!(PrimeField::new(2_147_483_647).is_ok());
}

#[test]
fn sqrt_of_three_mod_eleven() {
    let f = common::field(11);
    let r = f.from_i64(3).sqrt().unwrap();
    assert_eq!(r * r, f.from_i64(3));
    assert_eq!(r, f.from_i64(5));
}

#[test]
fn fourth_root_of_unity_mod_thirteen() {
    let f = common::field(13);
    let i = f.fourth_root_of_unity();
    assert_eq!(i * i, -f.one());
    assert_eq!(i, f.from_i64(5));
}

#[test]
fn nonresidue_is_smallest() {
    for (p, n) in [(11, 2), (13, 2), (17, 3), (19, 2), (23, 5), (41, 3)] {
        assert_eq!(common::field(p).nonresidue(), n, "p={p}");
        let t = common::field(p).t();
        assert_eq!(t * t, common::field(p).from_i64(n as i64));
    }
}

#[test]
fn exhaustive_squares_p11() {
    let f = common::field(11);
    let elems: Vec<FieldElement> = f.elements().collect();
    assert_eq!(elems.len(), 121);
    let squares = elems
        .iter()
        .filter(|x| !x.is_zero() && x.is_square())
        .count();
    assert_eq!(squares, 60);
    for x in elems {
        match x.sqrt() {
            Some(r) => {
                assert_eq!(r * r, x);
                assert!(r <= -r, "canonical root is the smaller one");
            }
            None => assert!(!x.is_square()),
        }
    }
}

#[test]
fn every_element_of_prime_field_is_square_in_extension() {
    let f = common::field(19);
    for k in 0..19 {
        assert!(f.from_i64(k).sqrt().is_some(), "{k}");
    }
}

#[test]
fn parse_and_display_roundtrip() {
    let f = common::field(13);
    let x = f.element(7, 4);
    assert_eq!(f.parse(&x.to_string()).unwrap(), x);
    assert_eq!(f.parse("5").unwrap(), f.from_i64(5));
    assert!(f.parse("a+b").is_err());
    assert_eq!(serde_json::to_string(&x).unwrap(), "[7,4]");
}

#[test]
fn frobenius_and_norm() {
    let f = common::field(17);
    for x in f.elements().step_by(7) {
        assert_eq!(x.frobenius(), x.pow(17));
        assert_eq!(f.from_i64(x.norm() as i64), x * x.frobenius());
    }
}

#[test]
fn zero_has_no_inverse() {
    assert!(matches!(
        common::field(11).zero().inv(),
        Err(Error::ZeroInverse)
    ));
}

fn arb_elem(p: u64) -> impl Strategy<Value = FieldElement> {
    (0..p, 0..p).prop_map(move |(a, b)| common::field(p).element(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sqrt_of_square(x in arb_elem(1_000_003)) {
        let r = (x * x).sqrt().unwrap();
        prop_assert!(r == x || r == -x);
        prop_assert_eq!(r * r, x * x);
    }

    #[test]
    fn ring_laws(a in arb_elem(104_729), b in arb_elem(104_729), c in arb_elem(104_729)) {
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a - a, a.field().zero());
        if !a.is_zero() {
            prop_assert!((a * a.inv().unwrap()).is_one());
            prop_assert!(a.pow(104_729 * 104_729 - 1).is_one());
        }
    }

    #[test]
    fn squares_match_euler_criterion(a in arb_elem(2_147_483_647)) {
        let q = 2_147_483_647u64 * 2_147_483_647;
        if !a.is_zero() {
            prop_assert_eq!(a.is_square(), a.pow((q - 1) / 2).is_one());
        }
    }
}
