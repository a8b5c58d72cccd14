//! Laurent polynomials in `y` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rational, rat, Rational};
use super::Coeff;

/// `sum c_n y^n` over finitely many `n`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct YLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl YLaurent {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut p = Self::new();
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `y^d + y^(-d)` (or `2` when `d == 0`).
    pub fn symmetric_power_sum(d: i64) -> Self {
        Self::from_terms([(d, rat(1)), (-d, rat(1))])
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The involution `y -> 1/y`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// The substitution `y -> -y`.
    pub fn negate_variable(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Value at `y = 1`.
    pub fn eval_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(y.clone(), *e as usize)
            } else {
                num_traits::pow(y.recip(), (-e) as usize)
            };
            total += c * p;
        }
        total
    }

    /// If the polynomial is a single monomial `c y^e` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }
}

impl Coeff for YLaurent {
    fn ring_zero() -> Self {
        Self::new()
    }

    fn ring_one() -> Self {
        Self::constant(Rational::one())
    }

    fn is_ring_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        out
    }

    fn times(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    fn negate(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::new();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    /// Units are the nonzero monomials.
    fn try_inv(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(-e, c.recip()))
    }
}

impl fmt::Debug for YLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(e, c)| format!("({})y^{e}", format_rational(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_stored_zeros() {
        let p = YLaurent::from_terms([(1, rat(2)), (1, rat(-2)), (0, rat(0))]);
        assert!(p.is_zero());
        assert_eq!(p.min_degree(), None);
    }

    #[test]
    fn involutions() {
        let p = YLaurent::from_terms([(-1, rat(3)), (2, rat(5))]);
        assert_eq!(p.invert_variable(), YLaurent::from_terms([(1, rat(3)), (-2, rat(5))]));
        assert_eq!(p.negate_variable(), YLaurent::from_terms([(-1, rat(-3)), (2, rat(5))]));
        assert!(!p.is_symmetric());
        assert!(YLaurent::symmetric_power_sum(3).is_symmetric());
    }

    #[test]
    fn units_are_monomials() {
        let m = YLaurent::monomial(-2, rat(4));
        assert_eq!(m.times(&m.try_inv().unwrap()), YLaurent::ring_one());
        assert!(YLaurent::symmetric_power_sum(1).try_inv().is_none());
        assert!(YLaurent::new().try_inv().is_none());
    }

    #[test]
    fn evaluation() {
        let z = YLaurent::from_terms([(1, rat(1)), (0, rat(-2)), (-1, rat(1))]);
        assert_eq!(z.eval_one(), rat(0));
        assert_eq!(z.eval(&rat(2)), super::super::rational::ratio(1, 2));
    }
}
