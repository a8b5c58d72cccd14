//! BPS counts from `1/Delta(y,q)`, Hodge integrals from the exponential
//! formula, and the identities tying them together.

use num_traits::Zero;

use super::gw::gw_point_generating_series;
use super::{sign, InvariantTable, KkvError, TableKind};
use crate::modforms::{bernoulli, eisenstein_series, inverse_discriminant_yq, yq_product};
use crate::par;
use crate::series::rational::{factorial, int, is_integer, rat};
use crate::series::{Rational, s_squared, sine_half_scaled, symmetric_to_z, trig_substitute, BiSeries, QSeries, Var};

/// `r_{g,h}` for `g <= g_max`, `h <= h_max`: `(-1)^g` times the `z^g`
/// coefficient of `[q^{h-1}] 1/Delta(y,q)` with `z = y - 2 + 1/y`.
pub fn kkv_r_table(g_max: u32, h_max: u32) -> InvariantTable {
    let inv = inverse_discriminant_yq(h_max as i64 - 1);
    let rows = par::map_range(h_max as usize + 1, |h| {
        let p = inv.coeff(h as i64 - 1);
        symmetric_to_z(&p).expect("coefficients of 1/Delta(y,q) are symmetric")
    });
    let mut table = InvariantTable::new(TableKind::BpsR);
    for (h, z) in rows.iter().enumerate() {
        for g in 0..=g_max as usize {
            let a = z.get(g).cloned().unwrap_or_else(Rational::zero);
            table.insert(&[g as i64, h as i64], sign(g as i64) * a);
        }
    }
    table
}

/// Integrality and the empirical support bound `r_{g,h} = 0` for `g > h`.
pub fn r_table_checks(table: &InvariantTable) -> Result<(), KkvError> {
    for (idx, v) in table.entries() {
        if !is_integer(v) {
            return Err(KkvError::Support { what: "integrality of r", index: idx.to_vec() });
        }
        if idx[0] > idx[1] && !v.is_zero() {
            return Err(KkvError::Support { what: "r_{g,h} = 0 for g > h", index: idx.to_vec() });
        }
    }
    Ok(())
}

/// `R_{g,h}` for `g <= g_max`, `h <= h_max` read off the exponential
/// formula; every odd `u`-power in the window must vanish.
#[allow(non_snake_case)]
pub fn kkv_R_table(g_max: u32, h_max: u32) -> Result<InvariantTable, KkvError> {
    let bi = gw_point_generating_series(0, 2 * g_max as i64 - 1, h_max as i64 - 1);
    if let Some((u, q)) = bi.first_odd_u_term() {
        return Err(KkvError::OddPower { u, q });
    }
    let mut table = InvariantTable::new(TableKind::HodgeR);
    for g in 0..=g_max as i64 {
        let row = bi.u_row(2 * g - 2);
        for h in 0..=h_max as i64 {
            table.insert(&[g, h], row.coeff(h - 1));
        }
    }
    Ok(table)
}

/// `sum_g R_{g,h} u^{2g-2} = sum_g r_{g,h} s^{2g-2}` with `s = 2 sin(u/2)`,
/// for every `h <= h_max`, through `u^{2 g_max - 2}`.
pub fn bps_transform_check(g_max: u32, h_max: u32) -> Result<(), KkvError> {
    let r = kkv_r_table(g_max, h_max);
    let big_r = kkv_R_table(g_max, h_max)?;
    let top = 2 * g_max as i64 - 2;
    let s2 = s_squared(top + 4);
    let inv_s2 = s2.inv()?.truncate(top);
    let failures = par::map_range(h_max as usize + 1, |h| {
        let h = h as i64;
        let lhs = QSeries::from_fn(Var::U, -2, top, |e| {
            if e % 2 == 0 {
                big_r.get(&[(e + 2) / 2, h]).cloned().expect("R entry")
            } else {
                Rational::zero()
            }
        });
        let mut rhs = QSeries::zero(Var::U, top);
        let mut power = inv_s2.clone();
        for g in 0..=g_max as i64 {
            let c = r.get(&[g, h]).expect("r entry");
            rhs = &rhs + &power.scale(c);
            power = (&power * &s2).truncate(top);
        }
        lhs.first_mismatch(&rhs).map(|e| (h, e))
    });
    match failures.into_iter().flatten().next() {
        Some((h, e)) => Err(KkvError::Mismatch { check: "BPS transform", location: format!("h = {h}, u^{e}") }),
        None => Ok(()),
    }
}

/// `(-1)^{g+1} B_{2g} / (g (2g)!)`, that is `|B_{2g}| / (g (2g)!)`.
fn exponent_coefficient(g: i64) -> Rational {
    let k = 2 * g as usize;
    sign(g + 1) * bernoulli(k) / (rat(g) * int(factorial(k as u64)))
}

/// The logarithmic identity behind the exponential formula:
/// `log(S(u)^{-2} Delta(q) / Delta(e^{iu}, q))` equals
/// `sum_g u^{2g} |B_{2g}| / (g (2g)!) E_{2g}(q)`, and
/// `log S(u) = sum_g (-1)^g B_{2g} / (2g (2g)!) u^{2g}`.
pub fn corollary2_log_identity(u_order: i64, q_order: i64) -> Result<(), KkvError> {
    // Delta(q)/Delta(y,q); the leading q and the (1-q^n)^20 cancel.
    let ratio = yq_product(4, -2, q_order);
    let columns: Vec<QSeries> = (0..=q_order)
        .map(|j| trig_substitute(&ratio.coeff(j).negate_variable(), u_order))
        .collect::<Result<_, _>>()?;
    let ratio_u = BiSeries::from_columns(0, &columns);
    let big_s = sine_half_scaled(u_order);
    let inv_s2 = BiSeries::from_u(&(&big_s * &big_s).inv()?, q_order);
    let lhs = ratio_u.mul(&inv_s2).log_u()?;

    let rhs_rows: Vec<QSeries> = (0..=u_order)
        .map(|e| {
            if e == 0 || e % 2 == 1 {
                QSeries::zero(Var::Q, q_order)
            } else {
                eisenstein_series(e as u32, q_order).scale(&exponent_coefficient(e / 2))
            }
        })
        .collect();
    let rhs = BiSeries::from_rows(0, rhs_rows);
    if let Some((u, q)) = lhs.first_mismatch(&rhs) {
        return Err(KkvError::Mismatch { check: "log identity", location: format!("u^{u} q^{q}") });
    }

    let log_s = big_s.log()?;
    let expected = QSeries::from_fn(Var::U, 0, u_order, |e| {
        if e == 0 || e % 2 == 1 {
            return Rational::zero();
        }
        let g = e / 2;
        sign(g) * bernoulli(e as usize) / (rat(e) * int(factorial(e as u64)))
    });
    if let Some(e) = log_s.first_mismatch(&expected) {
        return Err(KkvError::Mismatch { check: "log S(u)", location: format!("u^{e}") });
    }
    Ok(())
}
