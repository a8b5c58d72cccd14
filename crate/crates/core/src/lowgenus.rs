//! Genus `<= 3` Hodge integrals from boundary expressions: the forms `T_0`,
//! `T_1`, the stationary formula `(1/Delta) T_{k_1} ... T_{k_n}`, and the
//! closed forms for `R_{1,h}`, `R_{2,h}`, `R_{3,h}` with every intermediate
//! strata identity checked as a `q`-series identity.

use thiserror::Error;

use crate::kkv::{kkv_R_table, KkvError};
use crate::modforms::{c2, c4, c6, from_c_terms, inverse_discriminant_q, qmod_derive, qmod_expand, QModElement};
use crate::par;
use crate::series::rational::{rat, ratio};
use crate::series::{q_derive, QSeries, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowGenusError {
    #[error("T_{0} is not available: only T_0 and T_1 are supported")]
    UnsupportedT(u32),
    #[error("boundary expressions exist for genus 1, 2, 3 only, not {0}")]
    BadGenus(u32),
    #[error("the two presentations of T_{0} disagree")]
    Inconsistent(u32),
    #[error(transparent)]
    Kkv(#[from] KkvError),
}

fn c_poly(terms: &[((u32, u32, u32), (i64, i64))]) -> QModElement {
    let terms: Vec<_> = terms.iter().map(|&(m, (p, q))| (m, ratio(p, q))).collect();
    from_c_terms(&terms)
}

/// The form whose `q d/dq` image is `T_k`: `C_2` and `(2/3) C_2^2 - (1/3) C_4`.
fn t_primitive(k: u32) -> Result<QModElement, LowGenusError> {
    match k {
        0 => Ok(c2()),
        1 => Ok(c_poly(&[((2, 0, 0), (2, 3)), ((0, 1, 0), (-1, 3))])),
        _ => Err(LowGenusError::UnsupportedT(k)),
    }
}

/// `T_k` as a polynomial in `C_2, C_4, C_6`.
fn t_closed(k: u32) -> Result<QModElement, LowGenusError> {
    match k {
        0 => Ok(c_poly(&[((2, 0, 0), (-2, 1)), ((0, 1, 0), (10, 1))])),
        1 => Ok(c_poly(&[((3, 0, 0), (-8, 3)), ((1, 1, 0), (16, 1)), ((0, 0, 1), (-7, 1))])),
        _ => Err(LowGenusError::UnsupportedT(k)),
    }
}

/// `T_0 = -2 C_2^2 + 10 C_4` and `T_1 = -(8/3) C_2^3 + 16 C_2 C_4 - 7 C_6`,
/// after checking each against its `q d/dq` presentation.
pub fn t_form(k: u32) -> Result<QModElement, LowGenusError> {
    let closed = t_closed(k)?;
    if qmod_derive(&t_primitive(k)?) != closed {
        return Err(LowGenusError::Inconsistent(k));
    }
    Ok(closed)
}

/// `(1/Delta(q)) prod_i T_{k_i}` through `q^{h_max - 1}`.
pub fn stationary_series(ks: &[u32], h_max: u32) -> Result<QSeries, LowGenusError> {
    let order = h_max as i64 - 1;
    let mut product = QModElement::one();
    for &k in ks {
        product = product.mul(&t_form(k)?);
    }
    Ok(&qmod_expand(&product, order + 1) * &inverse_discriminant_q(order))
}

/// One named series identity and where it first fails, if anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub first_mismatch: Option<i64>,
}

impl IdentityCheck {
    fn compare(name: &'static str, lhs: &QSeries, rhs: &QSeries) -> Self {
        Self { name, first_mismatch: lhs.first_mismatch(rhs) }
    }

    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// The series pieces shared by the identity checks, through `q^order`.
struct Pieces {
    order: i64,
    inv_delta: QSeries,
}

impl Pieces {
    fn new(order: i64) -> Self {
        Self { order, inv_delta: inverse_discriminant_q(order) }
    }

    fn expand(&self, m: &QModElement) -> QSeries {
        qmod_expand(m, self.order + 1)
    }

    /// `m(q) / Delta(q)`.
    fn over_delta(&self, m: &QModElement) -> QSeries {
        &self.expand(m) * &self.inv_delta
    }

    /// `(q d/dq)^n (1/Delta)`.
    fn derived_inv_delta(&self, n: u32) -> QSeries {
        (0..n).fold(self.inv_delta.clone(), |s, _| q_derive(&s))
    }

    /// `T_k` as a series: `q d/dq` of its primitive's expansion.
    fn t_series(&self, k: u32) -> QSeries {
        q_derive(&self.expand(&t_primitive(k).expect("k <= 1")))
    }

    /// The three genus-3 strata integrals, before weighting.
    fn genus3_strata(&self) -> [QSeries; 3] {
        let t0_over = &self.t_series(0) * &self.inv_delta;
        [
            self.derived_inv_delta(3).scale(&ratio(1, 6)),
            q_derive(&t0_over).scale(&rat(12)),
            (&self.t_series(1) * &self.inv_delta).scale(&rat(12)),
        ]
    }

    /// The two genus-2 strata integrals.
    fn genus2_strata(&self) -> [QSeries; 2] {
        [
            self.derived_inv_delta(2).scale(&ratio(1, 240)),
            (&self.t_series(0) * &self.inv_delta).scale(&ratio(1, 10)),
        ]
    }

    fn genus1(&self) -> QSeries {
        self.derived_inv_delta(1).scale(&ratio(-1, 12))
    }

    fn genus3(&self) -> QSeries {
        let [a, b, c] = self.genus3_strata();
        let sum = &(&a.scale(&ratio(1, 2)) + &b.scale(&ratio(3, 10))) + &c.scale(&rat(2));
        sum.scale(&ratio(-1, 504))
    }
}

/// The closed-form numerator of `R_{g,h} = [q^{h-1}] (numerator / Delta)`.
pub fn boundary_closed_form(genus: u32) -> Result<QModElement, LowGenusError> {
    match genus {
        1 => Ok(c2().scale(&rat(-2))),
        2 => Ok(c_poly(&[((2, 0, 0), (2, 1)), ((0, 1, 0), (2, 1))])),
        3 => Ok(c_poly(&[((3, 0, 0), (-4, 3)), ((1, 1, 0), (-4, 1)), ((0, 0, 1), (-2, 1))])),
        _ => Err(LowGenusError::BadGenus(genus)),
    }
}

fn genus_checks(p: &Pieces, genus: u32) -> Vec<IdentityCheck> {
    match genus {
        1 => vec![IdentityCheck::compare("-1/12 q d/dq(1/Delta) = -2C2/Delta", &p.genus1(), &p.over_delta(&c2().scale(&rat(-2))))],
        2 => {
            let [a, b] = p.genus2_strata();
            vec![
                IdentityCheck::compare(
                    "1/240 (q d/dq)^2(1/Delta) = (11/5 C2^2 + C4)/Delta",
                    &a,
                    &p.over_delta(&c_poly(&[((2, 0, 0), (11, 5)), ((0, 1, 0), (1, 1))])),
                ),
                IdentityCheck::compare(
                    "T0/(10 Delta) = (-1/5 C2^2 + C4)/Delta",
                    &b,
                    &p.over_delta(&c_poly(&[((2, 0, 0), (-1, 5)), ((0, 1, 0), (1, 1))])),
                ),
            ]
        }
        3 => {
            let [a, b, c] = p.genus3_strata();
            vec![
                IdentityCheck::compare(
                    "1/6 (q d/dq)^3(1/Delta) = (1760 C2^3 + 2400 C2C4 + 840 C6)/Delta",
                    &a,
                    &p.over_delta(&c_poly(&[((3, 0, 0), (1760, 1)), ((1, 1, 0), (2400, 1)), ((0, 0, 1), (840, 1))])),
                ),
                IdentityCheck::compare(
                    "12 q d/dq(T0/Delta) = (-480 C2^3 + 1440 C2C4 + 2520 C6)/Delta",
                    &b,
                    &p.over_delta(&c_poly(&[((3, 0, 0), (-480, 1)), ((1, 1, 0), (1440, 1)), ((0, 0, 1), (2520, 1))])),
                ),
                IdentityCheck::compare(
                    "12 T1/Delta = (-32 C2^3 + 192 C2C4 - 84 C6)/Delta",
                    &c,
                    &p.over_delta(&c_poly(&[((3, 0, 0), (-32, 1)), ((1, 1, 0), (192, 1)), ((0, 0, 1), (-84, 1))])),
                ),
            ]
        }
        _ => Vec::new(),
    }
}

/// The assembled boundary series for `genus` from its strata.
fn assembled(p: &Pieces, genus: u32) -> QSeries {
    match genus {
        1 => p.genus1(),
        2 => {
            let [a, b] = p.genus2_strata();
            &a + &b
        }
        _ => p.genus3(),
    }
}

/// The differentiation rules, the two presentations of each `T_k`, and the
/// genus 2 and 3 strata identities, through `q^{q_order}`.
pub fn appendix_identities(q_order: i64) -> Vec<IdentityCheck> {
    let p = Pieces::new(q_order);
    let rule = |name, base: QModElement, image: QModElement| {
        IdentityCheck::compare(name, &q_derive(&qmod_expand(&base, q_order)), &qmod_expand(&image, q_order))
    };
    let mut out = vec![
        rule("q d/dq C2 = -2C2^2 + 10C4", c2(), c_poly(&[((2, 0, 0), (-2, 1)), ((0, 1, 0), (10, 1))])),
        rule("q d/dq C4 = -8C2C4 + 21C6", c4(), c_poly(&[((1, 1, 0), (-8, 1)), ((0, 0, 1), (21, 1))])),
        rule("q d/dq C6 = -12C2C6 + 160/7 C4^2", c6(), c_poly(&[((1, 0, 1), (-12, 1)), ((0, 2, 0), (160, 7))])),
        IdentityCheck::compare(
            "q d/dq(1/Delta) = 24C2/Delta",
            &p.derived_inv_delta(1),
            &p.over_delta(&c2().scale(&rat(24))),
        ),
    ];
    for (k, name) in [(0, "T0 = q d/dq C2 = -2C2^2 + 10C4"), (1, "T1 = q d/dq(2/3 C2^2 - 1/3 C4) = -8/3 C2^3 + 16C2C4 - 7C6")] {
        let closed = t_closed(k).expect("k <= 1");
        let mut check = IdentityCheck::compare(name, &p.t_series(k), &qmod_expand(&closed, q_order));
        if qmod_derive(&t_primitive(k).expect("k <= 1")) != closed {
            check.first_mismatch = Some(0);
        }
        out.push(check);
    }
    out.extend(genus_checks(&p, 2));
    out.extend(genus_checks(&p, 3));
    out
}

/// The three closed forms `R_{g,h} = [q^{h-1}] numerator / Delta` for
/// `g = 1, 2, 3`, as series identities against the assembled strata.
pub fn closed_form_identities(q_order: i64) -> Vec<IdentityCheck> {
    let p = Pieces::new(q_order);
    [(1, "R_1 = -2C2/Delta"), (2, "R_2 = (2C2^2 + 2C4)/Delta"), (3, "R_3 = -(4/3 C2^3 + 4C2C4 + 2C6)/Delta")]
        .into_iter()
        .map(|(g, name)| {
            let closed = boundary_closed_form(g).expect("genus in 1..=3");
            IdentityCheck::compare(name, &assembled(&p, g), &p.over_delta(&closed))
        })
        .collect()
}

/// A genus-`g` boundary computation compared with the Hodge table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryReport {
    pub genus: u32,
    /// Numerator over `Delta(q)`.
    pub closed_form: QModElement,
    /// `[q^{h-1}] closed_form / Delta = R_{genus,h}` for every `h <= h_max`.
    pub matches_kkv: bool,
    pub intermediate_checks: Vec<(String, bool)>,
}

/// Assemble `R_{genus,h}` from strata integrals, check each step, and
/// compare with the exponential-formula table for `h <= h_max`.
pub fn boundary_r(genus: u32, h_max: u32) -> Result<BoundaryReport, LowGenusError> {
    let closed_form = boundary_closed_form(genus)?;
    let order = h_max as i64 - 1;
    let p = Pieces::new(order);
    let series = p.over_delta(&closed_form);
    let mut intermediate_checks: Vec<(String, bool)> =
        genus_checks(&p, genus).into_iter().map(|c| (c.name.to_string(), c.holds())).collect();
    let assembled_ok = assembled(&p, genus).agrees_with(&series);
    intermediate_checks.push(("strata sum equals the closed form".to_string(), assembled_ok));
    let table = kkv_R_table(genus, h_max)?;
    let matches_kkv = (0..=h_max as i64).all(|h| {
        let expected: Rational = series.coeff(h - 1);
        table.get(&[genus as i64, h]) == Some(&expected)
    });
    Ok(BoundaryReport { genus, closed_form, matches_kkv, intermediate_checks })
}

/// [`boundary_r`] for genus 1, 2 and 3.
pub fn boundary_reports(h_max: u32) -> Result<Vec<BoundaryReport>, LowGenusError> {
    par::map_range(3, |i| boundary_r(i as u32 + 1, h_max)).into_iter().collect()
}
