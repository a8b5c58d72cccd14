//! The stable-pairs side: Kawai-Yoshioka Euler characteristics, the signed
//! partition function, point integrals, and the Gauss-Bonnet relation.
//!
//! `(y - 2 + 1/y)^{-1}` is expanded on the ascending branch
//! `y/(1-y)^2 = sum_{j >= 1} j y^j`, so every coefficient is a finite sum
//! over the exact Laurent polynomial it multiplies.

use num_traits::Zero;

use super::{sign, InvariantTable, KkvError, TableKind};
use crate::modforms::inverse_discriminant_yq;
use crate::par;
use crate::series::rational::{binomial, divisors, int, rat};
use crate::series::{Coeff, Rational, Series, Var, YLaurent};

/// `[y^n] (p(y) * sum_{j >= 1} j y^j)`.
fn ascending_coeff(p: &YLaurent, n: i64) -> Rational {
    p.terms().filter(|(e, _)| *e < n).fold(Rational::zero(), |acc, (e, c)| acc + c * rat(n - e))
}

/// `[q^{h-1}] 1/Delta(y,q)` for `h <= h_max`.
fn kkv_numerators(h_max: u32) -> Vec<YLaurent> {
    let inv = inverse_discriminant_yq(h_max as i64 - 1);
    (0..=h_max as i64).map(|h| inv.coeff(h - 1)).collect()
}

/// `e(P_n(S,h))` for `1 - h <= n <= n_max`, `h <= h_max`. Coefficients
/// below `n = 1 - h` are computed as well and must vanish.
pub fn ky_euler_table(n_max: i64, h_max: u32) -> Result<InvariantTable, KkvError> {
    let numerators = kkv_numerators(h_max);
    let mut table = InvariantTable::new(TableKind::Euler);
    for (h, m) in numerators.iter().enumerate() {
        let h = h as i64;
        let lowest = m.min_degree().unwrap_or(0).min(-h) - 2;
        for n in lowest..=n_max {
            let e = ascending_coeff(m, n);
            if n < 1 - h {
                if !e.is_zero() {
                    return Err(KkvError::Support { what: "e(P_n(S,h)) = 0 for n < 1-h", index: vec![n, h] });
                }
                continue;
            }
            table.insert(&[n, h], e);
        }
    }
    Ok(table)
}

/// `Z^P_h(y)` in closed form `y/(1+y)^2 * numerator(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedZ {
    pub h: i64,
    /// `[q^{h-1}] 1/Delta(-y, q)`.
    pub numerator: YLaurent,
    pub symmetric: bool,
    /// Ascending coefficients `n -> [y^n] Z^P_h` for `1 - h <= n <= n_window`.
    pub expansion: Vec<(i64, Rational)>,
    /// The expansion equals `(-1)^{n+2h-1} e(P_n(S,h))` on the window.
    pub matches_euler: bool,
}

fn signed_z_from(h: i64, m: &YLaurent, n_window: i64) -> SignedZ {
    let numerator = m.negate_variable();
    // y/(1+y)^2 = sum_{j >= 1} (-1)^{j+1} j y^j
    let expansion: Vec<(i64, Rational)> = (1 - h..=n_window)
        .map(|n| {
            let c = numerator
                .terms()
                .filter(|(e, _)| *e < n)
                .fold(Rational::zero(), |acc, (e, c)| acc + c * sign(n - e + 1) * rat(n - e));
            (n, c)
        })
        .collect();
    let matches_euler =
        expansion.iter().all(|(n, c)| *c == sign(n + 2 * h - 1) * ascending_coeff(m, *n));
    SignedZ { h, symmetric: numerator.is_symmetric(), numerator, expansion, matches_euler }
}

/// The signed partition function for one `h`.
pub fn pairs_signed_z(h: u32, n_window: i64) -> SignedZ {
    let m = kkv_numerators(h).pop().expect("nonempty");
    signed_z_from(h as i64, &m, n_window)
}

/// [`pairs_signed_z`] for all `h <= h_max`, as a table and per-`h` reports.
pub fn pairs_signed_z_table(n_window: i64, h_max: u32) -> (InvariantTable, Vec<SignedZ>) {
    let numerators = kkv_numerators(h_max);
    let reports = par::map_range(numerators.len(), |h| signed_z_from(h as i64, &numerators[h], n_window));
    let mut table = InvariantTable::new(TableKind::SignedZ);
    for r in &reports {
        for (n, c) in &r.expansion {
            table.insert(&[*n, r.h], c.clone());
        }
    }
    (table, reports)
}

/// `sum_{m >= 1} q^m sum_{d | m} (m/d) (y^d - 2 + y^{-d})` through `q^order`.
fn pairs_point_factor(order: i64) -> Series<YLaurent> {
    Series::from_fn(Var::Q, 0, order, |m| {
        let mut p = YLaurent::new();
        if m == 0 {
            return p;
        }
        for d in divisors(m as u64) {
            let w = rat(m / d as i64);
            let d = d as i64;
            p.add_term(d, w.clone());
            p.add_term(-d, w.clone());
            p.add_term(0, -(w * rat(2)));
        }
        p
    })
}

/// `[q^{h-1}] (point factor)^k / Delta(y,q)` for `h <= h_max`.
pub fn point_numerators(k: u32, h_max: u32) -> Vec<YLaurent> {
    let order = h_max as i64;
    let factor = pairs_point_factor(order);
    let mut product = inverse_discriminant_yq(order);
    for _ in 0..k {
        product = &product * &factor;
    }
    (0..=order).map(|h| product.coeff(h - 1)).collect()
}

fn insert_point_cells(table: &mut InvariantTable, k: u32, numerators: &[YLaurent], n_window: i64) {
    let sgn = sign(k as i64 + 1);
    for (h, a) in numerators.iter().enumerate() {
        let h = h as i64;
        let a = a.scale(&sgn);
        for n in 1 - h..=n_window {
            table.insert(&[k as i64, n, h], sign(n) * ascending_coeff(&a, n));
        }
    }
}

/// `C^k_{n,h}` for `1 - h <= n <= n_window`, `h <= h_max`, from
/// `sum_n C^k_{n,h} (-y)^n = (-1)^{k+1} [q^{h-1}] (...)^k / Delta(y,q) / (y - 2 + 1/y)`.
pub fn point_series_pairs(k: u32, n_window: i64, h_max: u32) -> InvariantTable {
    let mut table = InvariantTable::new(TableKind::CPoint);
    insert_point_cells(&mut table, k, &point_numerators(k, h_max), n_window);
    table
}

/// [`point_series_pairs`] for every `k <= k_max`, sharing the power chain.
pub fn point_series_pairs_upto(k_max: u32, n_window: i64, h_max: u32) -> InvariantTable {
    let order = h_max as i64;
    let inv = inverse_discriminant_yq(order);
    let factor = pairs_point_factor(order);
    let mut powers = vec![Series::one(Var::Q, order)];
    for _ in 0..k_max {
        let next = powers.last().expect("nonempty") * &factor;
        powers.push(next);
    }
    let numerators = par::map_slice(&powers, |p| {
        let product = p * &inv;
        (0..=order).map(|h| product.coeff(h - 1)).collect::<Vec<_>>()
    });
    let mut table = InvariantTable::new(TableKind::CPoint);
    for (k, nums) in numerators.iter().enumerate() {
        insert_point_cells(&mut table, k as u32, nums, n_window);
    }
    table
}

fn lookup(table: &InvariantTable, index: [i64; 3]) -> Result<&Rational, KkvError> {
    table.get(&index).ok_or(KkvError::MissingEntry { kind: table.kind(), index: index.to_vec() })
}

/// `e(P^k_n(S,h)) = (-1)^{D-k} sum_{i=0}^{D-k} (-1)^i binom(i+k-1, k-1) C^{k+i}_{n,h}`
/// with `D = n + 2h - 1`.
pub fn euler_pk(table: &InvariantTable, k: u32, n: i64, h: i64) -> Result<Rational, KkvError> {
    assert_eq!(table.kind(), TableKind::CPoint);
    let top = n + 2 * h - 1;
    let k = k as i64;
    if k == 0 {
        return Ok(sign(top) * lookup(table, [0, n, h])?);
    }
    let mut total = Rational::zero();
    for i in 0..=(top - k) {
        let b = binomial(i + k - 1, k - 1);
        total += sign(i) * int(b) * lookup(table, [k + i, n, h])?;
    }
    Ok(sign(top - k) * total)
}

/// Recover `C^k_{n,h}` from Euler characteristics:
/// `C^k = sum_{j=k}^{D} binom(j-1, k-1) (-1)^{D-j} e(P^j_n)` for `k >= 1`, and
/// `C^0 = (-1)^D e(P^0_n)`.
pub fn inverse_euler_pk(euler: &InvariantTable, k: u32, n: i64, h: i64) -> Result<Rational, KkvError> {
    assert_eq!(euler.kind(), TableKind::EulerPk);
    let top = n + 2 * h - 1;
    let k = k as i64;
    if k == 0 {
        return Ok(sign(top) * lookup(euler, [0, n, h])?);
    }
    let mut total = Rational::zero();
    for j in k..=top {
        total += int(binomial(j - 1, k - 1)) * sign(top - j) * lookup(euler, [j, n, h])?;
    }
    Ok(total)
}

/// `e(P^k_n(S,h))` for all `k <= k_max`, `1 - h <= n <= n_max`, `h <= h_max`.
pub fn euler_pk_table(k_max: u32, n_max: i64, h_max: u32) -> Result<InvariantTable, KkvError> {
    let top = (n_max + 2 * h_max as i64 - 1).max(k_max as i64).max(0) as u32;
    let c = point_series_pairs_upto(top, n_max, h_max);
    let mut table = InvariantTable::new(TableKind::EulerPk);
    for k in 0..=k_max {
        for h in 0..=h_max as i64 {
            for n in 1 - h..=n_max {
                table.insert(&[k as i64, n, h], euler_pk(&c, k, n, h)?);
            }
        }
    }
    Ok(table)
}
