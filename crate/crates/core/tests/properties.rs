//! Algebraic laws of the series, conversion and table layers.

use kkv_core::kkv::{kkv_R_table, kkv_r_table, ky_euler_table, r_table_checks};
use kkv_core::modforms::{monomial_basis, qmod_derive, qmod_expand, QModElement};
use kkv_core::series::rational::{is_integer, rat, ratio};
use kkv_core::series::{
    from_z_basis, q_derive, symmetric_to_z, trig_substitute, weighted_product, Coeff, QSeries, Rational, Var, YLaurent,
};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

/// A `q`-series with `min_exp` in `-2..=2` and order in `4..=9`.
fn series() -> impl Strategy<Value = QSeries> {
    (-2i64..=2, 4i64..=9, prop::collection::vec(rational(), 12)).prop_map(|(min, order, cs)| {
        QSeries::new(Var::Q, min, cs[..(order - min + 1) as usize].to_vec())
    })
}

/// A series with constant term 1 and no negative powers.
fn unit_series() -> impl Strategy<Value = QSeries> {
    (4i64..=9, prop::collection::vec(rational(), 10)).prop_map(|(order, mut cs)| {
        cs[0] = rat(1);
        QSeries::new(Var::Q, 0, cs[..(order + 1) as usize].to_vec())
    })
}

fn symmetric_laurent() -> impl Strategy<Value = YLaurent> {
    prop::collection::vec(rational(), 1..=4).prop_map(|cs| {
        let mut p = YLaurent::new();
        for (d, c) in cs.into_iter().enumerate() {
            let d = d as i64;
            p.add_term(d, c.clone());
            if d > 0 {
                p.add_term(-d, c);
            }
        }
        p
    })
}

fn qmod_element(max_weight: u32) -> impl Strategy<Value = QModElement> {
    let basis = monomial_basis(max_weight);
    prop::collection::vec(rational(), basis.len())
        .prop_map(move |cs| QModElement::from_terms(basis.iter().copied().zip(cs)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert!((&(&a + &b) + &c).agrees_with(&(&a + &(&b + &c))));
        prop_assert!((&a + &b).agrees_with(&(&b + &a)));
        prop_assert!((&a * &b).agrees_with(&(&b * &a)));
        prop_assert!((&(&a * &b) * &c).agrees_with(&(&a * &(&b * &c))));
        prop_assert!((&a * &(&b + &c)).agrees_with(&(&(&a * &b) + &(&a * &c))));
        prop_assert!((&a - &a).coeffs().iter().all(Zero::is_zero));
        let one = QSeries::one(Var::Q, 20);
        prop_assert!((&a * &one).agrees_with(&a));
    }

    #[test]
    fn leibniz(a in series(), b in series()) {
        let lhs = q_derive(&(&a * &b));
        let rhs = &(&q_derive(&a) * &b) + &(&a * &q_derive(&b));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn inverse_and_exp_log(f in unit_series()) {
        let inv = f.inv().unwrap();
        prop_assert!((&f * &inv).agrees_with(&QSeries::one(Var::Q, f.order())));
        let g = f.log().unwrap();
        prop_assert!(g.exp().unwrap().agrees_with(&f));
    }

    #[test]
    fn weighted_product_inverse(es in prop::collection::vec(-30i64..=30, 8)) {
        let e = es.clone();
        let p = weighted_product(Var::Q, move |n| e[(n as usize - 1) % e.len()], 10);
        let e = es.clone();
        let q = weighted_product(Var::Q, move |n| -e[(n as usize - 1) % e.len()], 10);
        prop_assert!((&p * &q).agrees_with(&QSeries::one(Var::Q, 10)));
    }

    #[test]
    fn trig_substitute_is_a_homomorphism(p in symmetric_laurent(), r in symmetric_laurent()) {
        let order = 10;
        let tp = trig_substitute(&p, order).unwrap();
        let tr = trig_substitute(&r, order).unwrap();
        prop_assert!(trig_substitute(&p.times(&r), order).unwrap().agrees_with(&(&tp * &tr)));
        prop_assert!(trig_substitute(&p.plus(&r), order).unwrap().agrees_with(&(&tp + &tr)));
        // At u = 0, y = -1.
        prop_assert_eq!(tp.coeff(0), p.eval(&rat(-1)));
    }

    #[test]
    fn z_basis_round_trip(mut a in prop::collection::vec(rational(), 1..=6)) {
        while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        let p = from_z_basis(&a);
        prop_assert!(p.is_symmetric());
        prop_assert_eq!(symmetric_to_z(&p).unwrap(), a);
    }

    #[test]
    fn derive_commutes_with_expand(m in qmod_element(8)) {
        let order = 12;
        prop_assert!(qmod_expand(&qmod_derive(&m), order).agrees_with(&q_derive(&qmod_expand(&m, order))));
    }

    #[test]
    fn table_supports(g_max in 0u32..=5, h_max in 0u32..=6) {
        let r = kkv_r_table(g_max, h_max);
        prop_assert!(r_table_checks(&r).is_ok());
        prop_assert!(r.entries().all(|(_, v)| is_integer(v)));
        // Odd u-powers vanish, or this errors.
        prop_assert!(kkv_R_table(g_max, h_max).is_ok());
        // Entries below n = 1 - h are checked to vanish inside.
        let e = ky_euler_table(3, h_max).unwrap();
        prop_assert!(e.entries().all(|(idx, _)| idx[0] >= 1 - idx[1]));
    }
}
