//! Field-contract properties: exact axioms on the finite backends, total
//! order laws, and literal round trips.

use proptest::prelude::*;
use std::cmp::Ordering;
use tmrat2::Field;

fn axioms_exhaustive(field: &Field) {
    let elems = field.elements().expect("finite backend");
    for a in &elems {
        for b in &elems {
            assert_eq!(&(a + b), &(b + a));
            assert_eq!(&(a * b), &(b * a));
            for c in &elems {
                assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
                assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
                assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
            }
            if !b.is_zero() {
                assert!((&(b.inv().unwrap()) * b).is_one());
                assert_eq!(&(&a.div(b).unwrap() * b), a);
            }
        }
        assert_eq!(&(a + &a.neg_ref()), &field.zero());
    }
}

#[test]
fn exact_axioms_f5_f7() {
    axioms_exhaustive(&Field::prime(5).unwrap());
    axioms_exhaustive(&Field::prime(7).unwrap());
}

#[test]
fn exact_axioms_f9() {
    axioms_exhaustive(&Field::extension(3, 2).unwrap());
}

fn order_laws_exhaustive(field: &Field) {
    let elems = field.elements().expect("finite backend");
    for a in &elems {
        for b in &elems {
            // trichotomy: exactly one of <, =, > holds, and = iff equal
            let ord = a.canonical_cmp(b);
            assert_eq!(ord == Ordering::Equal, a == b);
            assert_eq!(ord.reverse(), b.canonical_cmp(a));
            for c in &elems {
                if ord != Ordering::Greater && b.canonical_cmp(c) != Ordering::Greater {
                    assert_ne!(a.canonical_cmp(c), Ordering::Greater, "transitivity");
                }
            }
        }
    }
}

#[test]
fn order_is_total_f7_f9() {
    order_laws_exhaustive(&Field::prime(7).unwrap());
    order_laws_exhaustive(&Field::extension(3, 2).unwrap());
}

proptest! {
    #[test]
    fn rational_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -50i64..50, cd in 1i64..20) {
        let q = Field::rationals();
        let a = q.from_ratio_i64(an, ad).unwrap();
        let b = q.from_ratio_i64(bn, bd).unwrap();
        let c = q.from_ratio_i64(cn, cd).unwrap();
        prop_assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        if !a.is_zero() {
            prop_assert!((&a.inv().unwrap() * &a).is_one());
        }
    }

    #[test]
    fn rational_literal_roundtrip(n in -1000i64..1000, d in 1i64..500) {
        let q = Field::rationals();
        let e = q.from_ratio_i64(n, d).unwrap();
        prop_assert_eq!(&q.parse_elem(&e.to_string()).unwrap(), &e);
    }

    #[test]
    fn extension_axioms_f25(a0 in 0i64..5, a1 in 0i64..5, b0 in 0i64..5, b1 in 0i64..5) {
        let f25 = Field::extension(5, 2).unwrap();
        let t = f25.parse_elem("t").unwrap();
        let a = &f25.from_i64(a0) + &(&f25.from_i64(a1) * &t);
        let b = &f25.from_i64(b0) + &(&f25.from_i64(b1) * &t);
        prop_assert_eq!(&(&a * &b), &(&b * &a));
        if !a.is_zero() {
            prop_assert!((&a.inv().unwrap() * &a).is_one());
        }
        // literal round trip
        prop_assert_eq!(&f25.parse_elem(&a.to_string()).unwrap(), &a);
    }
}

#[test]
fn complex_roundtrip_and_arithmetic() {
    let c = Field::complex(128);
    let mut rng = tmrat2::seeded_rng(11);
    for _ in 0..100 {
        let a = c.sample(&mut rng);
        let b = c.sample(&mut rng);
        assert_eq!(c.parse_elem(&a.to_string()).unwrap(), a);
        assert_eq!(&(&a + &b) - &b, a);
        if !b.is_zero() {
            assert_eq!(&a.div(&b).unwrap() * &b, a);
        }
    }
}
