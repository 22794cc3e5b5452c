//! Algebraic-law property tests for the scalar field.

use coboundary::scalar::{CycloRational, Scalar};
use proptest::prelude::*;

/// Small cyclotomic coefficients over a handful of conductors.
fn cyclo_strategy() -> impl Strategy<Value = CycloRational> {
    let rational = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| {
        CycloRational::from_rational(num_rational::BigRational::new(n.into(), d.into()))
    });
    let root = (prop::sample::select(vec![3u32, 4]), 0i64..=3)
        .prop_map(|(m, k)| CycloRational::root_of_unity(m, k));
    (rational, root, any::<bool>()).prop_map(|(r, z, use_root)| {
        if use_root {
            r.mul(&z)
        } else {
            r
        }
    })
}

fn poly_strategy() -> impl Strategy<Value = Vec<CycloRational>> {
    prop::collection::vec(cyclo_strategy(), 1..4)
}

/// Scalars built as q^shift * (small poly) / (small nonzero poly).
fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, poly_strategy(), poly_strategy()).prop_map(|(shift, num, den)| {
        let build = |coeffs: &[CycloRational]| {
            coeffs
                .iter()
                .enumerate()
                .fold(Scalar::zero(), |acc, (e, c)| {
                    acc + Scalar::from_cyclo(c.clone()) * Scalar::q_pow(e as i64)
                })
        };
        let n = build(&num);
        let d = build(&den);
        let d = if d.is_zero() { Scalar::one() } else { d };
        Scalar::q_pow(shift) * n / d
    })
}

proptest! {
    #[test]
    fn addition_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn multiplication_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn inverses_cancel(a in scalar_strategy()) {
        if let Some(ai) = a.inv() {
            prop_assert!((&a * &ai).is_one());
            prop_assert_eq!(&a / &a, Scalar::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn display_parse_round_trip(a in scalar_strategy()) {
        let s = a.to_string();
        let back: Scalar = s.parse().expect("canonical strings parse");
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_is_an_involutive_homomorphism(a in scalar_strategy(), b in scalar_strategy()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a + &b).conjugate(), a.conjugate() + b.conjugate());
        prop_assert_eq!((&a * &b).conjugate(), a.conjugate() * b.conjugate());
    }
}
