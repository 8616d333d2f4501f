use edr_core::{Elem, Error, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn poly(ring: &Ring, coeffs: &[i64]) -> Elem {
    ring.poly(coeffs.iter().map(|&c| BigInt::from(c))).unwrap()
}

fn any_ring_pair() -> impl Strategy<Value = (Elem, Elem)> {
    prop_oneof![
        (-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| {
            let z = Ring::integers();
            (z.int(a), z.int(b))
        }),
        (2i64..200, 0i64..1000, 0i64..1000).prop_map(|(n, a, b)| {
            let r = Ring::modular(n).unwrap();
            (r.int(a), r.int(b))
        }),
        (
            prop::sample::select(vec![2i64, 3, 5, 7]),
            prop::collection::vec(0i64..7, 0..6),
            prop::collection::vec(0i64..7, 0..6)
        )
            .prop_map(|(p, a, b)| {
                let r = Ring::poly_over_prime_field(p).unwrap();
                (poly(&r, &a), poly(&r, &b))
            }),
        (-100i64..100, 0i64..12, -100i64..100, 0i64..12).prop_map(|(a, x, b, y)| {
            let r = Ring::product(vec![Ring::integers(), Ring::modular(12).unwrap()]).unwrap();
            let t = |u: i64, v: i64| {
                r.tuple(vec![
                    Ring::integers().int(u),
                    Ring::modular(12).unwrap().int(v),
                ])
                .unwrap()
            };
            (t(a, x), t(b, y))
        }),
    ]
}

proptest! {
    #[test]
    fn bezout_identities_hold((a, b) in any_ring_pair()) {
        let data = a.bezout(&b).unwrap();
        prop_assert!(data.holds_for(&a, &b));
        prop_assert!(data.g.divides(&a) && data.g.divides(&b));
    }

    #[test]
    fn gcd_is_symmetric_up_to_associates((a, b) in any_ring_pair()) {
        let g1 = a.bezout(&b).unwrap().g.canonical_associate().1;
        let g2 = b.bezout(&a).unwrap().g.canonical_associate().1;
        prop_assert_eq!(g1, g2);
    }

    #[test]
    fn divide_exact_round_trips((a, b) in any_ring_pair()) {
        let product = &a * &b;
        if !a.is_zero() {
            let q = product.divide_exact(&a).unwrap();
            prop_assert_eq!(&a * &q, product);
        }
    }

    #[test]
    fn canonical_associate_factors((a, _) in any_ring_pair()) {
        let (u, norm) = a.canonical_associate();
        prop_assert!(u.is_unit());
        prop_assert_eq!(&u * &norm, a);
        prop_assert!(norm.is_canonical());
        prop_assert_eq!(norm.canonical_associate().1, norm);
    }

    #[test]
    fn inverses_are_inverses((a, _) in any_ring_pair()) {
        match a.inverse() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(!a.is_unit()),
        }
    }
}

#[test]
fn modular_units_and_jacobson_match_brute_force() {
    for n in 2..=60u64 {
        let ring = Ring::modular(n).unwrap();
        let unit = |v: u64| gcd(v % n, n) == 1;
        for a in 0..n {
            let e = ring.int(a as i64);
            assert_eq!(e.is_unit(), unit(a), "unit {a} mod {n}");
            let in_j = (0..n).all(|t| unit(1 + a * t));
            assert_eq!(e.in_jacobson(), in_j, "jacobson {a} mod {n}");
        }
    }
}

#[test]
fn polynomial_units_are_nonzero_constants() {
    let r = Ring::poly_over_prime_field(5).unwrap();
    assert!(poly(&r, &[3]).is_unit());
    assert!(!poly(&r, &[0, 1]).is_unit());
    assert!(!r.zero().is_unit());
    assert!(r.zero().in_jacobson());
    assert!(!poly(&r, &[1, 1]).in_jacobson());
}

#[test]
fn mixed_rings_are_rejected() {
    let a = Ring::modular(6).unwrap().int(1);
    let b = Ring::modular(12).unwrap().int(1);
    assert!(matches!(
        a.try_add(&b),
        Err(Error::DescriptorMismatch { .. })
    ));
    assert!(matches!(
        a.bezout(&b),
        Err(Error::DescriptorMismatch { .. })
    ));
    let z = Ring::integers().int(1);
    assert!(matches!(
        z.try_mul(&a),
        Err(Error::DescriptorMismatch { .. })
    ));
}

#[test]
fn invalid_descriptors_are_rejected() {
    assert!(Ring::modular(0).is_err());
    assert!(Ring::modular(1).is_err());
    assert!(Ring::poly_over_prime_field(4).is_err());
    assert!(Ring::truncated_series(0).is_err());
    assert!(Ring::product(vec![]).is_err());
}
