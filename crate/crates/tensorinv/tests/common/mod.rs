//! Shared generators for the property suites.
#![allow(dead_code)]

use proptest::prelude::*;
use tensorinv::laurent::{a, Q};
use tensorinv::system::direct_integrand;
use tensorinv::{BigRat, BinFactor, EllRational, LaurentPoly, Monomial, VarId};

/// Number of cases for every randomized suite.
pub const CASES: u32 = 256;

/// Shared runner configuration: [`CASES`] cases, no failure files.
pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// A monomial in the given variables with exponents in `lo..=hi`.
pub fn monomial(vars: Vec<VarId>, lo: i32, hi: i32) -> impl Strategy<Value = Monomial> {
    let n = vars.len();
    prop::collection::vec(lo..=hi, n).prop_map(move |es| {
        let pairs: Vec<(VarId, i32)> = vars.iter().copied().zip(es).collect();
        Monomial::from_pairs(&pairs)
    })
}

/// A sparse Laurent polynomial with small integer coefficients.
pub fn poly(
    vars: Vec<VarId>,
    terms: usize,
    lo: i32,
    hi: i32,
) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(vars, lo, hi), -4i64..=4), 0..=terms).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(m, c)| (m, BigRat::from_int(c))))
    })
}

/// A monomial `q^e m` with `e >= 1` and `m` in `a_1..a_na`.
pub fn graded_monomial(na: usize, qmax: i32, amax: i32) -> impl Strategy<Value = Monomial> {
    (1..=qmax, monomial((1..=na).map(a).collect(), -amax, amax))
        .prop_map(|(e, m)| m.mul(&Monomial::var(Q, e)))
}

/// An Elliott rational in `q, a_1..a_na` whose factors all have positive degree in `q`.
pub fn graded_ell(na: usize, nfac: usize) -> impl Strategy<Value = EllRational> {
    let vars: Vec<VarId> = (1..=na).map(a).collect();
    (
        poly(vars, 3, -2, 2),
        prop::collection::vec(
            (
                graded_monomial(na, 2, 2),
                prop_oneof![Just(1i64), Just(-1), Just(2)],
                1u32..=2,
            ),
            1..=nfac,
        ),
    )
        .prop_map(|(num, facs)| {
            let num = if num.is_zero() {
                LaurentPoly::one()
            } else {
                num
            };
            let factors = facs
                .into_iter()
                .map(|(m, c, r)| BinFactor::new(BigRat::from_int(c), m, r))
                .collect();
            EllRational::new(num, factors).expect("graded factors are nonconstant")
        })
}

/// Cross-multiplied polynomial equality `f == n / d` with `d` a plain polynomial.
pub fn equals_fraction(f: &EllRational, n: &LaurentPoly, d: &LaurentPoly) -> bool {
    f.num().mul(d) == n.mul(&f.den_poly())
}

/// Products of factor pairs `(1 - q^e m)(1 - q^f / m)` over `a_1..a_na`, the shape of
/// the weight-graded integrands, with a random Laurent numerator.
pub fn paired_ell(na: usize, npairs: usize) -> impl Strategy<Value = EllRational> {
    let vars: Vec<VarId> = (1..=na).map(a).collect();
    (
        poly(vars.clone(), 2, -1, 1),
        prop::collection::vec((monomial(vars, -1, 1), 1..=2i32, 1..=2i32), 1..=npairs),
    )
        .prop_filter_map("constant pair monomial", |(num, pairs)| {
            let num = if num.is_zero() {
                LaurentPoly::one()
            } else {
                num
            };
            let mut monos = Vec::new();
            for (m, e, f) in pairs {
                if m.is_one() {
                    return None;
                }
                monos.push(m.mul(&Monomial::var(Q, e)));
                monos.push(m.inv().mul(&Monomial::var(Q, f)));
            }
            EllRational::from_monos(num, &monos).ok()
        })
}

/// A sub-product of the weight-graded integrand for `k <= 3`, as `(k, f, elimination order, sdd)`.
pub fn direct_subproduct() -> impl Strategy<Value = (usize, EllRational, Vec<usize>, bool)> {
    (1usize..=3, any::<u8>(), any::<bool>()).prop_flat_map(|(k, keep, sdd)| {
        let perm = Just((0..k).collect::<Vec<usize>>()).prop_shuffle();
        let full = direct_integrand(k, sdd);
        let n = full.den().len();
        let den: Vec<_> = full
            .den()
            .iter()
            .enumerate()
            .filter(|(i, _)| keep >> (i % 8) & 1 == 1 || *i + 1 == n)
            .map(|(_, f)| f.clone())
            .collect();
        let f = EllRational::new(full.num().clone(), den).unwrap();
        (Just(k), Just(f), perm, Just(sdd))
    })
}
