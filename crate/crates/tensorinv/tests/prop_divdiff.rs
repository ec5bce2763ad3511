//! Algebraic properties of divided differences.

mod common;

use common::{monomial, poly};
use proptest::prelude::*;
use tensorinv::divdiff::divided_difference;
use tensorinv::laurent::{x, Q};
use tensorinv::{BigRat, BinFactor, EllRational, LaurentPoly, Monomial, VarId};

fn xvars() -> Vec<VarId> {
    vec![Q, x(1), x(2), x(3), x(4)]
}

fn xell() -> impl Strategy<Value = EllRational> {
    (
        poly(xvars(), 3, 0, 2),
        prop::collection::vec(monomial(xvars(), 0, 1), 1..=3),
    )
        .prop_filter_map("constant factor", |(num, monos)| {
            let num = if num.is_zero() {
                LaurentPoly::one()
            } else {
                num
            };
            let factors: Vec<BinFactor> = monos
                .into_iter()
                .filter(|m| !m.is_one())
                .map(BinFactor::simple)
                .collect();
            if factors.is_empty() {
                return None;
            }
            EllRational::new(num, factors).ok()
        })
}

fn swap(f: &EllRational, i: VarId, j: VarId) -> EllRational {
    f.subst_map(&|w| {
        if w == i {
            Some((BigRat::one(), Monomial::var(j, 1)))
        } else if w == j {
            Some((BigRat::one(), Monomial::var(i, 1)))
        } else {
            None
        }
    })
    .unwrap()
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn difference_is_exact(f in xell()) {
        let d = divided_difference(&f, x(1), x(2)).unwrap();
        let lhs = d.mul_poly(&LaurentPoly::var(x(1)).sub(&LaurentPoly::var(x(2))));
        prop_assert!(lhs.equal_as_rational(&f.sub(&swap(&f, x(1), x(2)))));
        prop_assert!(swap(&d, x(1), x(2)).equal_as_rational(&d));
    }

    #[test]
    fn disjoint_differences_commute(f in xell()) {
        let ab = divided_difference(&divided_difference(&f, x(1), x(2)).unwrap(), x(3), x(4)).unwrap();
        let ba = divided_difference(&divided_difference(&f, x(3), x(4)).unwrap(), x(1), x(2)).unwrap();
        prop_assert!(ab.equal_as_rational(&ba));
    }

    #[test]
    fn polynomial_differences_stay_polynomial(p in poly(xvars(), 4, 0, 3)) {
        let f = EllRational::from_poly(p);
        let d = divided_difference(&f, x(1), x(3)).unwrap();
        prop_assert!(d.den().is_empty());
    }
}
