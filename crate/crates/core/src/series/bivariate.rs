//! Rational series in two variables, stored as a `u`-Laurent series whose
//! coefficients are truncated `q`-series.

use super::rational::rat;
use super::{QSeries, Rational, Series, SeriesError, Var};
use crate::par;

/// `sum_i rows[i](q) u^{u_min + i}`. The `u`-window is certified through
/// `u_order()`, and each row carries its own certified `q`-order.
#[derive(Clone, PartialEq)]
pub struct BiSeries {
    u_min: i64,
    rows: Vec<QSeries>,
}

impl BiSeries {
    pub fn from_rows(u_min: i64, rows: Vec<QSeries>) -> Self {
        assert!(rows.iter().all(|r| r.var() == Var::Q), "rows must be q-series");
        Self { u_min, rows }
    }

    pub fn one(u_order: i64, q_order: i64) -> Self {
        Self::from_u(&QSeries::one(Var::U, u_order), q_order)
    }

    /// A `q`-series regarded as constant in `u`.
    pub fn from_q(q: &QSeries, u_order: i64) -> Self {
        let mut rows = vec![q.clone()];
        for _ in 1..=u_order.max(0) {
            rows.push(QSeries::zero(Var::Q, q.order()));
        }
        Self::from_rows(0, rows)
    }

    /// A `u`-series regarded as constant in `q`.
    pub fn from_u(u: &QSeries, q_order: i64) -> Self {
        let rows = (u.min_exp()..=u.order())
            .map(|e| QSeries::monomial(Var::Q, 0, u.coeff(e), q_order))
            .collect();
        Self::from_rows(u.min_exp(), rows)
    }

    /// Assemble from `q`-exponent-indexed `u`-series: `sum_j cols[j](u) q^{q_min + j}`.
    pub fn from_columns(q_min: i64, cols: &[QSeries]) -> Self {
        let u_min = cols.iter().map(|c| c.min_exp()).min().unwrap_or(0);
        let u_order = cols.iter().map(|c| c.order()).min().unwrap_or(-1);
        let q_order = q_min + cols.len() as i64 - 1;
        let rows = (u_min..=u_order)
            .map(|ue| Series::from_fn(Var::Q, q_min, q_order, |qe| cols[(qe - q_min) as usize].coeff(ue)))
            .collect();
        Self::from_rows(u_min, rows)
    }

    pub fn u_min(&self) -> i64 {
        self.u_min
    }

    pub fn u_order(&self) -> i64 {
        self.u_min + self.rows.len() as i64 - 1
    }

    /// Smallest certified `q`-order over all rows.
    pub fn q_order(&self) -> i64 {
        self.rows.iter().map(|r| r.order()).min().unwrap_or(i64::MAX)
    }

    /// Coefficient of `u^exp` as a `q`-series. Panics beyond the `u`-order.
    pub fn u_row(&self, exp: i64) -> QSeries {
        assert!(exp <= self.u_order(), "u^{exp} beyond certified u-order {}", self.u_order());
        if exp < self.u_min {
            return QSeries::zero(Var::Q, self.q_order());
        }
        self.rows[(exp - self.u_min) as usize].clone()
    }

    /// Coefficient of `q^exp` as a `u`-series.
    pub fn q_column(&self, exp: i64) -> QSeries {
        Series::from_fn(Var::U, self.u_min, self.u_order(), |ue| self.u_row(ue).coeff(exp))
    }

    pub fn coeff(&self, u_exp: i64, q_exp: i64) -> Rational {
        self.u_row(u_exp).coeff(q_exp)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_rows(self.u_min, self.rows.iter().map(|row| row.scale(r)).collect())
    }

    pub fn shift_u(&self, k: i64) -> Self {
        Self::from_rows(self.u_min + k, self.rows.clone())
    }

    pub fn truncate_u(&self, order: i64) -> Self {
        let keep = (order - self.u_min + 1).clamp(0, self.rows.len() as i64) as usize;
        Self::from_rows(self.u_min, self.rows[..keep].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let u_min = self.u_min.min(other.u_min);
        let u_order = self.u_order().min(other.u_order());
        let q_order = self.q_order().min(other.q_order());
        let rows = (u_min..=u_order)
            .map(|e| {
                let pick = |s: &Self| {
                    if e < s.u_min {
                        QSeries::zero(Var::Q, q_order)
                    } else {
                        s.rows[(e - s.u_min) as usize].clone()
                    }
                };
                &pick(self) + &pick(other)
            })
            .collect();
        Self::from_rows(u_min, rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let u_min = self.u_min + other.u_min;
        let u_order = (self.u_order() + other.u_min).min(other.u_order() + self.u_min);
        let (la, lb) = (self.rows.len(), other.rows.len());
        if u_order < u_min || la == 0 || lb == 0 {
            return Self::from_rows(u_min, Vec::new());
        }
        let len = (u_order - u_min + 1) as usize;
        let rows = par::map_range(len, |i| {
            let lo = i.saturating_sub(lb - 1);
            let hi = i.min(la - 1);
            let mut acc: Option<QSeries> = None;
            for j in lo..=hi {
                let term = &self.rows[j] * &other.rows[i - j];
                acc = Some(match acc {
                    None => term,
                    Some(a) => &a + &term,
                });
            }
            acc.expect("nonempty convolution range")
        });
        Self::from_rows(u_min, rows)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.u_order() - self.u_min, self.q_order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `exp` in the `u`-direction; needs every `u^0`-and-below row absent.
    pub fn exp_u(&self) -> Result<Self, SeriesError> {
        if self.u_min < 1 {
            return Err(SeriesError::ExpDomain);
        }
        let q_order = self.q_order();
        let order = self.u_order();
        let mut f: Vec<QSeries> = vec![QSeries::one(Var::Q, q_order)];
        for n in 1..=order {
            let mut acc = QSeries::zero(Var::Q, q_order);
            for k in self.u_min..=n {
                let a = &self.rows[(k - self.u_min) as usize];
                if a.is_zero() {
                    continue;
                }
                acc = &acc + &(a * &f[(n - k) as usize]).scale(&rat(k));
            }
            f.push(acc.scale(&rat(n).recip()));
        }
        Ok(Self::from_rows(0, f))
    }

    /// `log` in the `u`-direction; needs `u_min == 0` with `u^0` row exactly 1.
    pub fn log_u(&self) -> Result<Self, SeriesError> {
        if self.u_min != 0 || self.rows.is_empty() {
            return Err(SeriesError::LogDomain);
        }
        let q_order = self.q_order();
        if !self.rows[0].agrees_with(&QSeries::one(Var::Q, q_order)) {
            return Err(SeriesError::LogDomain);
        }
        let order = self.u_order();
        let mut g: Vec<QSeries> = vec![QSeries::zero(Var::Q, q_order)];
        for n in 1..=order {
            let mut acc = self.rows[n as usize].scale(&rat(n));
            for k in 1..n {
                acc = &acc - &(&g[k as usize] * &self.rows[(n - k) as usize]).scale(&rat(k));
            }
            g.push(acc.scale(&rat(n).recip()));
        }
        Ok(Self::from_rows(0, g))
    }

    /// First `(u, q)` exponent pair with odd `u` carrying a nonzero coefficient.
    pub fn first_odd_u_term(&self) -> Option<(i64, i64)> {
        (self.u_min..=self.u_order()).filter(|e| e.rem_euclid(2) == 1).find_map(|e| {
            let row = &self.rows[(e - self.u_min) as usize];
            row.terms().next().map(|(qe, _)| (e, qe))
        })
    }

    /// First `(u, q)` where the two disagree on the common window.
    pub fn first_mismatch(&self, other: &Self) -> Option<(i64, i64)> {
        let lo = self.u_min.min(other.u_min);
        let hi = self.u_order().min(other.u_order());
        let q_order = self.q_order().min(other.q_order());
        for e in lo..=hi {
            let a = self.u_row(e).truncate(q_order);
            let b = other.u_row(e).truncate(q_order);
            if let Some(qe) = a.first_mismatch(&b) {
                return Some((e, qe));
            }
        }
        None
    }
}

impl std::fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BiSeries").field("u_min", &self.u_min).field("rows", &self.rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::ratio;
    use super::*;

    #[test]
    fn exp_log_roundtrip() {
        // a = u (1 + q) + u^2 q
        let a = BiSeries::from_rows(
            1,
            vec![
                QSeries::new(Var::Q, 0, vec![rat(1), rat(1), rat(0)]),
                QSeries::new(Var::Q, 0, vec![rat(0), rat(1), rat(0)]),
                QSeries::zero(Var::Q, 2),
                QSeries::zero(Var::Q, 2),
            ],
        );
        let e = a.exp_u().unwrap();
        assert_eq!(e.coeff(0, 0), rat(1));
        assert_eq!(e.coeff(2, 0), ratio(1, 2));
        let back = e.log_u().unwrap();
        assert!(back.first_mismatch(&a).is_none());
        assert!(BiSeries::one(3, 3).exp_u().is_err());
    }

    #[test]
    fn columns_and_rows() {
        let cols = vec![QSeries::new(Var::U, -2, vec![rat(1), rat(0), rat(3)]), QSeries::new(Var::U, 0, vec![rat(5)])];
        let b = BiSeries::from_columns(-1, &cols);
        assert_eq!(b.u_min(), -2);
        assert_eq!(b.u_order(), 0);
        assert_eq!(b.coeff(-2, -1), rat(1));
        assert_eq!(b.coeff(0, 0), rat(5));
        assert_eq!(b.q_column(-1).coeff(0), rat(3));
        let sq = b.mul(&b);
        assert_eq!(sq.coeff(-4, -2), rat(1));
        assert_eq!(sq.u_order(), -2);
    }
}
