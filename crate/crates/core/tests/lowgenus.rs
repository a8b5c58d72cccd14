//! Boundary closed forms against the Hodge table and the point series.

use kkv_core::kkv::{kkv_R_table, point_series_gw};
use kkv_core::lowgenus::*;
use kkv_core::modforms::{c2, qmod_derive};
use kkv_core::series::rational::ratio;

#[test]
fn identities_to_order_30() {
    let checks = appendix_identities(30);
    assert_eq!(checks.len(), 11);
    for c in checks.iter().chain(&closed_form_identities(30)) {
        assert!(c.holds(), "{} fails at q^{:?}", c.name, c.first_mismatch);
    }
}

#[test]
fn boundary_matches_table_h25() {
    for rep in boundary_reports(25).unwrap() {
        assert!(rep.matches_kkv, "genus {}", rep.genus);
        assert!(rep.intermediate_checks.iter().all(|(_, ok)| *ok), "{:?}", rep.intermediate_checks);
    }
}

#[test]
fn genus_one_relation() {
    // R_{1,h} = -(h-1)/12 R_{0,h}
    let t = kkv_R_table(1, 10).unwrap();
    let rep = boundary_r(1, 10).unwrap();
    assert_eq!(rep.closed_form, c2().scale(&kkv_core::series::rational::rat(-2)));
    for h in 0..=10 {
        assert_eq!(t.get(&[1, h]).unwrap(), &(t.get(&[0, h]).unwrap() * ratio(1 - h, 12)));
    }
}

#[test]
fn stationary_matches_point_series() {
    let h_max = 8;
    for (ks, g) in [(vec![0], 1u32), (vec![0, 0], 2), (vec![0, 0, 0], 3)] {
        let k = ks.len() as u32;
        let st = stationary_series(&ks, h_max).unwrap();
        let (_, table) = point_series_gw(k, g, h_max).unwrap();
        for h in 0..=h_max as i64 {
            assert_eq!(table.get(&[k as i64, g as i64, h]), Some(&st.coeff(h - 1)), "k = {k}, h = {h}");
        }
    }
    assert_eq!(t_form(0).unwrap(), qmod_derive(&c2()));
}
