//! Ring axioms and exact division for sparse Laurent polynomials.

mod common;

use common::poly;
use proptest::prelude::*;
use tensorinv::laurent::{a, Q};
use tensorinv::{BigRat, LaurentPoly, Monomial};

fn p3() -> impl Strategy<Value = LaurentPoly> {
    poly(vec![Q, a(1), a(2)], 5, -3, 3)
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn addition_is_a_group(f in p3(), g in p3(), h in p3()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.add(&LaurentPoly::zero()), f.clone());
        prop_assert_eq!(f.neg().neg(), f);
    }

    #[test]
    fn multiplication_axioms(f in p3(), g in p3(), h in p3()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&LaurentPoly::one()), f.clone());
        prop_assert!(f.mul(&LaurentPoly::zero()).is_zero());
        prop_assert_eq!(f.pow(2), f.mul(&f));
    }

    #[test]
    fn exact_division_inverts_multiplication(f in p3(), g in p3()) {
        prop_assume!(!g.is_zero());
        let prod = f.mul(&g);
        prop_assert_eq!(prod.div_exact(&g).unwrap(), f);
    }

    #[test]
    fn substitution_is_a_ring_map(f in p3(), g in p3(), e in -2i32..=2, c in 1i64..=3) {
        let m = Monomial::from_pairs(&[(Q, 1), (a(1), e)]);
        let c = BigRat::from_int(c);
        let s = |p: &LaurentPoly| p.subst(a(2), &c, &m);
        prop_assert_eq!(s(&f.mul(&g)), s(&f).mul(&s(&g)));
        prop_assert_eq!(s(&f.add(&g)), s(&f).add(&s(&g)));
        prop_assert!(!s(&f).contains(a(2)));
    }
}
