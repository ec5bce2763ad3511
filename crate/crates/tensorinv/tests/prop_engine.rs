//! Constant-term engine against truncated series expansion.

mod common;

use common::{graded_ell, paired_ell};
use proptest::prelude::*;
use tensorinv::ct::{ct_exact, ct_iter, ct_series_oracle};
use tensorinv::laurent::{a, Q};
use tensorinv::SeriesOrder;

const DEG: usize = 8;

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn one_variable_matches_series(f in graded_ell(1, 4)) {
        let order = SeriesOrder::standard();
        let g = ct_exact(&f, a(1), &order).unwrap();
        prop_assert!(!g.contains(a(1)));
        let want = ct_series_oracle(&f, &[a(1)], Q, DEG).unwrap();
        prop_assert_eq!(g.series(Q, DEG).unwrap(), want);
    }

    #[test]
    fn two_variables_match_series(f in graded_ell(2, 4)) {
        let order = SeriesOrder::standard();
        let g = ct_iter(&f, &[a(1), a(2)], &order, None).unwrap();
        let want = ct_series_oracle(&f, &[a(1), a(2)], Q, DEG).unwrap();
        prop_assert_eq!(g.series(Q, DEG).unwrap(), want);
    }

    #[test]
    fn paired_integrands_match_series(f in paired_ell(2, 4)) {
        let order = SeriesOrder::standard();
        let g = ct_iter(&f, &[a(1), a(2)], &order, None).unwrap();
        let want = ct_series_oracle(&f, &[a(1), a(2)], Q, DEG).unwrap();
        prop_assert_eq!(g.series(Q, DEG).unwrap(), want);
    }

    #[test]
    fn paired_three_variables_match_series(f in paired_ell(3, 4)) {
        let order = SeriesOrder::standard();
        let g = ct_iter(&f, &[a(1), a(2), a(3)], &order, None).unwrap();
        let want = ct_series_oracle(&f, &[a(1), a(2), a(3)], Q, DEG).unwrap();
        prop_assert_eq!(g.series(Q, DEG).unwrap(), want);
    }
}
