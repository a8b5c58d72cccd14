//! The quasimodular ring `Q[E2, E4, E6]`: expansion, derivation and
//! recognition of `q`-series by exact linear algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::linsolve::{solve_unique, SolveError};
use super::{c_scale, eisenstein_series, from_c_terms, ModFormError};
use crate::par;
use crate::series::rational::{format_rational, parse_rational, rat};
use crate::series::{QSeries, Rational, SeriesError, Var};

/// Exponents `(a, b, c)` of `E2^a E4^b E6^c`.
pub type Monomial = (u32, u32, u32);

pub fn monomial_weight((a, b, c): Monomial) -> u32 {
    2 * a + 4 * b + 6 * c
}

/// All monomials of weight `<= max_weight`, ordered by weight, then exponents.
pub fn monomial_basis(max_weight: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for c in 0..=max_weight / 6 {
        for b in 0..=(max_weight - 6 * c) / 4 {
            for a in 0..=(max_weight - 6 * c - 4 * b) / 2 {
                out.push((a, b, c));
            }
        }
    }
    out.sort_by_key(|&m| (monomial_weight(m), m));
    out
}

/// `sum coeff * E2^a E4^b E6^c` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QModElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl QModElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), Rational::one())
    }

    pub fn e2() -> Self {
        Self::monomial((1, 0, 0), Rational::one())
    }

    pub fn e4() -> Self {
        Self::monomial((0, 1, 0), Rational::one())
    }

    pub fn e6() -> Self {
        Self::monomial((0, 0, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Self::from_terms([(m, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|&m| monomial_weight(m)).max()
    }

    /// The common weight if every monomial has the same weight.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let w = self.max_weight()?;
        self.terms.keys().all(|&m| monomial_weight(m) == w).then_some(w)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c * r)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1, c1), x) in &self.terms {
            for (&(a2, b2, c2), y) in &other.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Coefficients in the rescaled basis `C2^a C4^b C6^c`.
    pub fn c_basis_terms(&self) -> BTreeMap<Monomial, Rational> {
        let (s1, s2, s3) = (c_scale(1), c_scale(2), c_scale(3));
        self.terms
            .iter()
            .map(|(&(a, b, c), coeff)| {
                let denom = num_traits::pow(s1.clone(), a as usize)
                    * num_traits::pow(s2.clone(), b as usize)
                    * num_traits::pow(s3.clone(), c as usize);
                ((a, b, c), coeff / denom)
            })
            .collect()
    }

    /// Human-readable presentation in the `C`-basis, e.g. `-2*C2^2 + 10*C4`.
    pub fn display_c_basis(&self) -> String {
        let terms = self.c_basis_terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((a, b, c), coeff) in terms.iter().rev() {
            let mut factors = Vec::new();
            for (name, e) in [("C2", a), ("C4", b), ("C6", c)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let c_text = if coeff.is_integer() { coeff.numer().to_string() } else { coeff.to_string() };
            parts.push(if factors.is_empty() { c_text } else { format!("{c_text}*{}", factors.join("*")) });
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    /// One monomial per line, `E2^a*E4^b*E6^c: p/q`.
    pub fn to_text(&self) -> String {
        self.terms
            .iter()
            .map(|((a, b, c), coeff)| format!("E2^{a}*E4^{b}*E6^{c}: {}\n", format_rational(coeff)))
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<Self, SeriesError> {
        let mut out = Self::zero();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = || SeriesError::Parse(format!("line {}: expected `E2^a*E4^b*E6^c: p/q`", lineno + 1));
            let (mono, value) = line.split_once(':').ok_or_else(err)?;
            let exps: Vec<&str> = mono.trim().split('*').collect();
            if exps.len() != 3 {
                return Err(err());
            }
            let mut e = [0u32; 3];
            for (slot, (part, name)) in e.iter_mut().zip(exps.iter().zip(["E2^", "E4^", "E6^"])) {
                *slot = part.strip_prefix(name).and_then(|s| s.parse().ok()).ok_or_else(err)?;
            }
            let m = (e[0], e[1], e[2]);
            if out.terms.contains_key(&m) {
                return Err(SeriesError::Parse(format!("line {}: repeated monomial", lineno + 1)));
            }
            out.add_term(m, parse_rational(value.trim())?);
        }
        Ok(out)
    }
}

impl fmt::Debug for QModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMod[{}]", self.display_c_basis())
    }
}

/// Powers `g^0 .. g^n` of a `q`-series.
fn powers(g: &QSeries, n: u32, order: i64) -> Vec<QSeries> {
    let mut out = vec![QSeries::one(Var::Q, order)];
    for _ in 0..n {
        let next = out.last().expect("nonempty") * g;
        out.push(next);
    }
    out
}

struct Expander {
    p2: Vec<QSeries>,
    p4: Vec<QSeries>,
    p6: Vec<QSeries>,
}

impl Expander {
    fn new(monomials: &[Monomial], order: i64) -> Self {
        let max = |f: fn(&Monomial) -> u32| monomials.iter().map(f).max().unwrap_or(0);
        Self {
            p2: powers(&eisenstein_series(2, order), max(|m| m.0), order),
            p4: powers(&eisenstein_series(4, order), max(|m| m.1), order),
            p6: powers(&eisenstein_series(6, order), max(|m| m.2), order),
        }
    }

    fn expand(&self, (a, b, c): Monomial) -> QSeries {
        &(&self.p2[a as usize] * &self.p4[b as usize]) * &self.p6[c as usize]
    }
}

/// `q`-expansion through `q^order`.
pub fn qmod_expand(m: &QModElement, order: i64) -> QSeries {
    let monomials: Vec<Monomial> = m.terms.keys().copied().collect();
    let ex = Expander::new(&monomials, order);
    let parts = par::map_slice(&monomials, |&mono| ex.expand(mono).scale(&m.terms[&mono]));
    parts.iter().fold(QSeries::zero(Var::Q, order), |acc, p| &acc + p)
}

/// Images of `E2, E4, E6` under `q d/dq`, obtained from the rules for the
/// rescaled generators `C_{2g} = c_scale(g) E_{2g}`.
fn generator_derivatives() -> [QModElement; 3] {
    let c = |a, b, c, v: Rational| ((a, b, c), v);
    let d_c2 = from_c_terms(&[c(2, 0, 0, rat(-2)), c(0, 1, 0, rat(10))]);
    let d_c4 = from_c_terms(&[c(1, 1, 0, rat(-8)), c(0, 0, 1, rat(21))]);
    let d_c6 = from_c_terms(&[c(1, 0, 1, rat(-12)), c(0, 2, 0, Rational::new(160.into(), 7.into()))]);
    [
        d_c2.scale(&c_scale(1).recip()),
        d_c4.scale(&c_scale(2).recip()),
        d_c6.scale(&c_scale(3).recip()),
    ]
}

/// The derivation `q d/dq`, extended from the generators by Leibniz.
pub fn qmod_derive(m: &QModElement) -> QModElement {
    let [d2, d4, d6] = generator_derivatives();
    let mut out = QModElement::zero();
    for (&(a, b, c), coeff) in &m.terms {
        if a > 0 {
            out = out.add(&d2.mul(&QModElement::monomial((a - 1, b, c), coeff * rat(a as i64))));
        }
        if b > 0 {
            out = out.add(&d4.mul(&QModElement::monomial((a, b - 1, c), coeff * rat(b as i64))));
        }
        if c > 0 {
            out = out.add(&d6.mul(&QModElement::monomial((a, b, c - 1), coeff * rat(c as i64))));
        }
    }
    out
}

/// Extra coefficients required beyond the basis size.
pub const RECOGNITION_MARGIN: i64 = 5;

/// Find the unique element of weight `<= max_weight` whose expansion matches
/// `f` through its certified order.
pub fn qmod_recognize(f: &QSeries, max_weight: u32) -> Result<QModElement, ModFormError> {
    if f.min_exp() < 0 && !f.is_zero() {
        return Err(ModFormError::HasPole(f.min_exp()));
    }
    let basis = monomial_basis(max_weight);
    let need = basis.len() as i64 + RECOGNITION_MARGIN;
    let have = f.order();
    if have < need {
        return Err(ModFormError::InsufficientPrecision { have, need, basis: basis.len() });
    }
    let ex = Expander::new(&basis, have);
    let columns = par::map_slice(&basis, |&m| ex.expand(m));

    let rows: Vec<Vec<Rational>> =
        (0..=need).map(|k| columns.iter().map(|col| col.coeff(k)).collect()).collect();
    let rhs: Vec<Rational> = (0..=need).map(|k| f.coeff(k)).collect();
    let solution = match solve_unique(&rows, &rhs) {
        Ok(x) => x,
        Err(SolveError::Inconsistent { row }) => {
            return Err(ModFormError::NotQuasimodular { max_weight, exponent: row as i64 });
        }
        Err(SolveError::Underdetermined { .. }) => {
            return Err(ModFormError::InsufficientPrecision { have, need: have + 1, basis: basis.len() });
        }
    };

    let element = QModElement::from_terms(basis.iter().copied().zip(solution));
    let fitted = columns
        .iter()
        .zip(basis.iter())
        .fold(QSeries::zero(Var::Q, have), |acc, (col, m)| &acc + &col.scale(&element.coeff(*m)));
    if let Some(exponent) = fitted.first_mismatch(f) {
        return Err(ModFormError::NotQuasimodular { max_weight, exponent });
    }
    Ok(element)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::{c2, c4, c6};
    use crate::series::q_derive;
    use crate::series::rational::{factorial, int, ratio};

    fn t0_series(order: i64) -> QSeries {
        QSeries::from_fn(Var::Q, 0, order, |n| {
            int(crate::series::rational::divisor_power_sum(n as u64, 1)) * rat(n)
        })
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(monomial_basis(0), vec![(0, 0, 0)]);
        assert_eq!(monomial_basis(4).len(), 4);
        assert_eq!(monomial_basis(12).len(), 23);
    }

    #[test]
    fn expansion_examples() {
        assert!(qmod_expand(&QModElement::one(), 5).agrees_with(&QSeries::one(Var::Q, 5)));
        let t0 = QModElement::e4().sub(&QModElement::e2().pow(2)).scale(&ratio(1, 288));
        let s = qmod_expand(&t0, 6);
        assert_eq!((1..=4).map(|k| s.coeff(k)).collect::<Vec<_>>(), vec![rat(1), rat(6), rat(12), rat(28)]);
        assert!(s.agrees_with(&t0_series(6)));
        let prod = qmod_expand(&QModElement::e2().mul(&QModElement::e4()), 8);
        assert!(prod.agrees_with(&(&eisenstein_series(2, 8) * &eisenstein_series(4, 8))));
    }

    #[test]
    fn derive_examples() {
        assert!(qmod_derive(&QModElement::one()).is_zero());
        let t0 = c2().pow(2).scale(&rat(-2)).add(&c4().scale(&rat(10)));
        assert_eq!(qmod_derive(&c2()), t0);
        assert_eq!(qmod_derive(&c2().pow(2)), c2().scale(&rat(2)).mul(&t0));
        assert_eq!(
            qmod_derive(&c6()),
            c2().mul(&c6()).scale(&rat(-12)).add(&c4().pow(2).scale(&ratio(160, 7)))
        );
        // Ramanujan's form of the E2 rule.
        assert_eq!(
            qmod_derive(&QModElement::e2()),
            QModElement::e2().pow(2).sub(&QModElement::e4()).scale(&ratio(1, 12))
        );
    }

    #[test]
    fn derive_commutes_with_expansion() {
        for m in monomial_basis(12) {
            let x = QModElement::monomial(m, rat(1));
            let lhs = qmod_expand(&qmod_derive(&x), 30);
            let rhs = q_derive(&qmod_expand(&x, 30));
            assert_eq!(lhs.first_mismatch(&rhs), None, "{m:?}");
            assert_eq!(qmod_derive(&x).homogeneous_weight().unwrap_or(monomial_weight(m) + 2), monomial_weight(m) + 2);
        }
    }

    #[test]
    fn recognize_examples() {
        let one = qmod_recognize(&QSeries::one(Var::Q, 10), 0).unwrap();
        assert_eq!(one, QModElement::one());
        let t0 = qmod_recognize(&t0_series(20), 4).unwrap();
        assert_eq!(t0, QModElement::e4().sub(&QModElement::e2().pow(2)).scale(&ratio(1, 288)));
        assert_eq!(t0.display_c_basis(), "-2*C2^2 + 10*C4");

        let exp_q = QSeries::from_fn(Var::Q, 0, 40, |k| int(factorial(k as u64)).recip());
        assert!(matches!(qmod_recognize(&exp_q, 12), Err(ModFormError::NotQuasimodular { .. })));
        assert!(matches!(qmod_recognize(&t0_series(8), 4), Err(ModFormError::InsufficientPrecision { .. })));
        let polar = QSeries::monomial(Var::Q, -1, rat(1), 30);
        assert_eq!(qmod_recognize(&polar, 4), Err(ModFormError::HasPole(-1)));
    }

    #[test]
    fn text_roundtrip() {
        let x = QModElement::e2().pow(2).scale(&ratio(-1, 288)).add(&QModElement::e4().scale(&ratio(1, 288)));
        let text = x.to_text();
        assert_eq!(text, "E2^0*E4^1*E6^0: 1/288\nE2^2*E4^0*E6^0: -1/288\n");
        assert_eq!(QModElement::parse_text(&text).unwrap(), x);
        assert!(QModElement::parse_text("E2^1: 1/2").is_err());
        assert!(QModElement::parse_text("E2^0*E4^0*E6^0: 1\nE2^0*E4^0*E6^0: 1").is_err());
        assert_eq!(QModElement::parse_text("").unwrap(), QModElement::zero());
    }
}
