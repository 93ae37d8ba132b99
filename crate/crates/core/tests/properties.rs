//! Property tests for the algebraic kernels: ring axioms, divisibility
//! closure, permutation functoriality, rational/polynomial agreement, and
//! round-trips of the interchange forms.

use num_bigint::BigInt;
use proptest::prelude::*;

use gkm_motives::perm::Perm;
use gkm_motives::poly::{
    divides, gcd, parse_polynomial, LinearForm, Monomial, Polynomial, RationalFunction,
};

const NVARS: usize = 4;

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (
            prop::collection::vec(0u16..4, NVARS),
            -6i64..=6,
        ),
        0..6,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            NVARS,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial(e), BigInt::from(c))),
        )
    })
}

fn arb_root() -> impl Strategy<Value = LinearForm> {
    (0usize..NVARS, 0usize..NVARS - 1).prop_map(|(i, j0)| {
        let j = if j0 >= i { j0 + 1 } else { j0 };
        LinearForm::root(NVARS, i + 1, j + 1)
    })
}

fn arb_perm() -> impl Strategy<Value = Perm> {
    Just(()).prop_perturb(|_, mut rng| {
        let mut images: Vec<usize> = (1..=NVARS).collect();
        for i in (1..images.len()).rev() {
            let j = (rng.next_u64() as usize) % (i + 1);
            images.swap(i, j);
        }
        Perm::from_images(images).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn divisibility_closure(a in arb_poly(), b in arb_poly(), alpha in arb_root()) {
        // a root form divides any multiple of itself
        let mult = &a * &alpha.to_polynomial();
        prop_assert!(divides(&alpha, &mult).unwrap());
        // and divisibility is closed under sums and differences
        let mult2 = &b * &alpha.to_polynomial();
        prop_assert!(divides(&alpha, &(&mult + &mult2)).unwrap());
        prop_assert!(divides(&alpha, &(&mult - &mult2)).unwrap());
    }

    #[test]
    fn permutation_is_a_ring_map(a in arb_poly(), b in arb_poly(), sigma in arb_perm()) {
        prop_assert_eq!(
            (&a * &b).permute(&sigma),
            &a.permute(&sigma) * &b.permute(&sigma)
        );
        prop_assert_eq!(
            (&a + &b).permute(&sigma),
            &a.permute(&sigma) + &b.permute(&sigma)
        );
        prop_assert_eq!(a.permute(&sigma.inverse()).permute(&sigma), a);
    }

    #[test]
    fn rational_extends_polynomial_arithmetic(a in arb_poly(), b in arb_poly()) {
        let ra = RationalFunction::from_polynomial(a.clone());
        let rb = RationalFunction::from_polynomial(b.clone());
        let sum = &ra + &rb;
        let prod = &ra * &rb;
        prop_assert_eq!(sum.as_polynomial().unwrap(), &(&a + &b));
        prop_assert_eq!(prod.as_polynomial().unwrap(), &(&a * &b));
    }

    #[test]
    fn rational_reduction_invariants(a in arb_poly(), b in arb_poly(), d in arb_poly()) {
        prop_assume!(!d.is_zero());
        // numerator and denominator of any sum stay coprime
        let x = RationalFunction::new(a, d.clone()).unwrap();
        let y = RationalFunction::new(b, d).unwrap();
        let s = &x + &y;
        let g = gcd(s.numerator(), s.denominator());
        prop_assert!(g.is_constant());
        prop_assert_eq!(g.content(), BigInt::from(1));
    }

    #[test]
    fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
        let g = gcd(&a, &b);
        if !g.is_zero() {
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
        } else {
            prop_assert!(a.is_zero() && b.is_zero());
        }
    }

    #[test]
    fn text_and_json_round_trip(a in arb_poly()) {
        let text = a.to_string();
        prop_assert_eq!(&parse_polynomial(NVARS, &text).unwrap(), &a);
        let js = serde_json::to_string(&a).unwrap();
        let back: Polynomial = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, a);
    }
}
