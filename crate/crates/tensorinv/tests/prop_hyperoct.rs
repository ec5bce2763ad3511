//! Algebraic properties of the hyperoctahedral action on indices and variables.

mod common;

use proptest::prelude::*;
use tensorinv::hyperoct::{act_index, act_vars, GroupElement, Model, Support};
use tensorinv::system::{complete_integrand, partner};

fn element(k: usize) -> impl Strategy<Value = GroupElement> {
    (
        Just((1..=k as u8).collect::<Vec<u8>>()).prop_shuffle(),
        prop::collection::vec(0u8..=1, k),
    )
        .prop_map(|(alpha, eta)| GroupElement::new(alpha, eta).unwrap())
}

fn pair(kmax: usize) -> impl Strategy<Value = (usize, GroupElement, GroupElement)> {
    (1..=kmax).prop_flat_map(|k| (Just(k), element(k), element(k)))
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn composition_is_a_homomorphism((k, g, h) in pair(6)) {
        let gh = g.compose(&h);
        for i in 1..=(1usize << k) {
            prop_assert_eq!(act_index(&gh, i, k), act_index(&g, act_index(&h, i, k), k));
        }
    }

    #[test]
    fn action_preserves_pairing((k, g, _h) in pair(6)) {
        let s = g.sigma();
        prop_assert!(s.respects_pairing());
        for i in 1..=(1usize << k) {
            prop_assert_eq!(act_index(&g, partner(i, k), k), partner(act_index(&g, i, k), k));
        }
    }

    #[test]
    fn integrand_is_invariant((k, g, h) in pair(4)) {
        let f = complete_integrand(k);
        prop_assert!(act_vars(&g, &f, k).unwrap().equal_as_rational(&f));
        let lhs = act_vars(&g.compose(&h), &f, k).unwrap();
        let rhs = act_vars(&g, &act_vars(&h, &f, k).unwrap(), k).unwrap();
        prop_assert!(lhs.equal_as_rational(&rhs));
    }

    #[test]
    fn support_action_is_a_homomorphism((k, g, h) in pair(4), bits in any::<u64>()) {
        prop_assume!(k >= 2);
        // a pair-free subset: keep index i or its partner according to one bit
        let n = 1usize << k;
        let mut mask = 0u64;
        for i in 1..=n / 2 {
            if bits >> i & 1 == 1 {
                let j = if bits >> (i + 32) & 1 == 1 { i } else { partner(i, k) };
                mask |= 1 << (j - 1);
            }
        }
        let s = Support::new(Model::Full, k, mask).unwrap();
        prop_assert_eq!(s.act(&g.compose(&h)), s.act(&h).act(&g));
        prop_assert_eq!(s.act(&g).members().len(), s.members().len());
    }
}
