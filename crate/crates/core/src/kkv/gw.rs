//! The Gromov-Witten side with point insertions, its correspondence with
//! the pairs side under `y = -e^{iu}`, and the quasimodularity audit.

use num_traits::Zero;

use super::pairs::point_numerators;
use super::{sign, InvariantTable, KkvError, TableKind};
use crate::modforms::{
    bernoulli, c2, discriminant_q, eisenstein_series, inverse_discriminant_q, monomial_basis, qmod_derive,
    qmod_expand, qmod_recognize, QModElement, RECOGNITION_MARGIN,
};
use crate::par;
use crate::series::rational::{divisor_power_sum, factorial, int, rat};
use crate::series::{s_squared, trig_substitute, BiSeries, Coeff, QSeries, Rational, Var, YLaurent};

/// `exp(sum_{g >= 1} u^{2g} |B_{2g}| / (g (2g)!) E_{2g}(q))` through
/// `u^{u_order}` and `q^{q_order}`.
pub fn exp_factor(u_order: i64, q_order: i64) -> BiSeries {
    if u_order < 1 {
        return BiSeries::one(u_order, q_order);
    }
    let rows = (1..=u_order)
        .map(|e| {
            if e % 2 == 1 {
                return QSeries::zero(Var::Q, q_order);
            }
            let g = e / 2;
            let c = sign(g + 1) * bernoulli(e as usize) / (rat(g) * int(factorial(e as u64)));
            eisenstein_series(e as u32, q_order).scale(&c)
        })
        .collect();
    BiSeries::from_rows(1, rows).exp_u().expect("exponent has no u^0 part")
}

/// `sum_{m >= 1} q^m sum_{d | m} (m/d) (2 sin(du/2))^2` through `u^{u_order}`
/// and `q^{q_order}`. The `u^{2j}` row is
/// `2 (-1)^{j+1} / (2j)! sum_m q^m sum_{d | m} (m/d) d^{2j}`.
pub fn point_factor_gw(u_order: i64, q_order: i64) -> BiSeries {
    let rows = (0..=u_order.max(0))
        .map(|e| {
            if e == 0 || e % 2 == 1 {
                return QSeries::zero(Var::Q, q_order);
            }
            let j = e / 2;
            let c = sign(j + 1) * rat(2) / int(factorial(e as u64));
            QSeries::from_fn(Var::Q, 0, q_order, |m| {
                if m == 0 {
                    return Rational::zero();
                }
                // sum_{d | m} (m/d) d^{2j} = m sigma_{2j-1}(m)
                &c * rat(m) * int(divisor_power_sum(m as u64, e as u32 - 1))
            })
        })
        .collect();
    BiSeries::from_rows(0, rows)
}

/// The generating series of `<(-1)^{g-k} lambda_{g-k} tau_0(p)^k>_{g,h}`,
/// `u^{2g-2} q^{h-1}`, certified through `u^{u_order}` and `q^{q_order}`.
pub fn gw_point_generating_series(k: u32, u_order: i64, q_order: i64) -> BiSeries {
    let top = u_order + 2;
    let inv_delta = BiSeries::from_q(&inverse_discriminant_q(q_order), top);
    let mut acc = inv_delta.mul(&exp_factor(top, q_order + 1));
    if k > 0 {
        acc = acc.mul(&point_factor_gw(top, q_order + 1).pow(k));
    }
    acc.shift_u(-2).truncate_u(u_order)
}

/// Point invariants for `g <= g_max`, `h <= h_max`; at `k = 0` these are the
/// Hodge integrals `R_{g,h}`.
pub fn point_series_gw(k: u32, g_max: u32, h_max: u32) -> Result<(BiSeries, InvariantTable), KkvError> {
    let bi = gw_point_generating_series(k, 2 * g_max as i64 - 1, h_max as i64 - 1);
    if let Some((u, q)) = bi.first_odd_u_term() {
        return Err(KkvError::OddPower { u, q });
    }
    let mut table = InvariantTable::new(TableKind::GwPoint);
    for g in 0..=g_max as i64 {
        let row = bi.u_row(2 * g - 2);
        for h in 0..=h_max as i64 {
            table.insert(&[k as i64, g, h], row.coeff(h - 1));
        }
    }
    Ok((bi, table))
}

/// The two sides of the correspondence for one `(h, k)`, as `u`-series.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceReport {
    pub h: i64,
    pub k: u32,
    pub u_order: i64,
    pub gw_side: QSeries,
    pub pairs_side_substituted: QSeries,
    pub equal: bool,
}

/// The pairs side `Z^P_h(y) = (-1)^k A_h(-y) y/(1+y)^2` with
/// `A_h = [q^{h-1}] (point factor)^k / Delta(y,q)`, pushed through
/// `y = -e^{iu}`: the numerator via `trig_substitute`, and `y/(1+y)^2`
/// becomes `1/s^2`.
fn pairs_side_u(numerator: &YLaurent, k: u32, u_order: i64) -> Result<QSeries, KkvError> {
    let n = numerator.negate_variable();
    let n = Coeff::scale(&n, &sign(k as i64));
    let top = trig_substitute(&n, u_order + 2)?;
    let inv_s2 = s_squared(u_order + 4).inv()?;
    Ok((&top * &inv_s2).truncate(u_order))
}

/// [`gw_pairs_check`] for every `h <= h_max`, sharing the expansions.
pub fn gw_pairs_checks(h_max: u32, u_order: i64, k: u32) -> Result<Vec<CorrespondenceReport>, KkvError> {
    let bi = gw_point_generating_series(k, u_order, h_max as i64 - 1);
    let numerators = point_numerators(k, h_max);
    let pairs = par::map_slice(&numerators, |a| pairs_side_u(a, k, u_order));
    let mut out = Vec::with_capacity(numerators.len());
    for (h, pairs_side) in pairs.into_iter().enumerate() {
        let pairs_side = pairs_side?;
        let gw_side = bi.q_column(h as i64 - 1);
        let equal = gw_side.agrees_with(&pairs_side);
        out.push(CorrespondenceReport {
            h: h as i64,
            k,
            u_order,
            gw_side,
            pairs_side_substituted: pairs_side,
            equal,
        });
    }
    Ok(out)
}

/// Compare the Gromov-Witten and pairs partition functions with `k` point
/// insertions after `y = -e^{iu}`, through `u^{u_order}`.
pub fn gw_pairs_check(h: u32, u_order: i64, k: u32) -> Result<CorrespondenceReport, KkvError> {
    Ok(gw_pairs_checks(h, u_order, k)?.pop().expect("nonempty"))
}

/// One recognized row of the audit.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditEntry {
    pub k: u32,
    pub g: u32,
    pub max_weight: u32,
    /// `Delta(q)` times the `u^{2g-2}` row, as a quasimodular form.
    pub element: QModElement,
    pub homogeneous_weight: Option<u32>,
    /// For `k = g`: whether the element is `T_0^g`.
    pub matches_t0_power: Option<bool>,
}

/// For `k <= k_max`, `g <= g_max`: recognize `Delta(q)` times the
/// `u^{2g-2}` row of the point series in weight `<= 2g + 2k`.
pub fn quasimodularity_audit(k_max: u32, g_max: u32) -> Result<Vec<AuditEntry>, KkvError> {
    let t0 = qmod_derive(&c2());
    let per_k = par::map_range(k_max as usize + 1, |k| -> Result<Vec<AuditEntry>, KkvError> {
        let k = k as u32;
        let q_order = monomial_basis(2 * g_max + 2 * k).len() as i64 + RECOGNITION_MARGIN + 1;
        let bi = gw_point_generating_series(k, 2 * g_max as i64 - 2, q_order);
        let delta = discriminant_q(q_order + 2);
        let mut entries = Vec::new();
        for g in 0..=g_max {
            let max_weight = 2 * g + 2 * k;
            let row = &bi.u_row(2 * g as i64 - 2) * &delta;
            let element = qmod_recognize(&row, max_weight)?;
            let matches_t0_power = (k == g).then(|| {
                let expected = t0.pow(g);
                let series_ok = qmod_expand(&expected, q_order).agrees_with(&row);
                expected == element && series_ok
            });
            entries.push(AuditEntry {
                k,
                g,
                max_weight,
                homogeneous_weight: element.homogeneous_weight(),
                element,
                matches_t0_power,
            });
        }
        Ok(entries)
    });
    let mut out = Vec::new();
    for entries in per_k {
        out.extend(entries?);
    }
    Ok(out)
}
