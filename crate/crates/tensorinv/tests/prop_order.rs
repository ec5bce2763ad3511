//! Iterated constant terms do not depend on the elimination order.

mod common;

use proptest::prelude::*;
use tensorinv::ct::{ct_iter, ct_series_oracle, CtPlan};
use tensorinv::laurent::Q;
use tensorinv::system::a_vars;
use tensorinv::SeriesOrder;

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn order_invariance((k, f, perm, _sdd) in common::direct_subproduct()) {
        let order = SeriesOrder::standard();
        let vars = a_vars(k);
        let plan = CtPlan::fixed(perm.iter().map(|&i| vars[i]).collect()).unwrap();
        let fixed = ct_iter(&f, &vars, &order, Some(&plan)).unwrap();
        let auto = ct_iter(&f, &vars, &order, None).unwrap();
        prop_assert!(fixed.equal_as_rational(&auto), "{} vs {}", fixed, auto);
        let want = ct_series_oracle(&f, &vars, Q, 8).unwrap();
        prop_assert_eq!(fixed.series(Q, 8).unwrap(), want);
    }
}
