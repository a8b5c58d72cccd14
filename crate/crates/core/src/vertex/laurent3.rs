//! Integer Laurent polynomials in `t1, t2, t3` divided by a power of `(1 - t3)`.

use std::collections::BTreeMap;
use std::fmt;

/// Exponent triple `(a, b, c)` of `t1^a t2^b t3^c`.
pub type Exps = (i64, i64, i64);

/// `numerator / (1 - t3)^e`, kept with `e` minimal.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent3 {
    terms: BTreeMap<Exps, i64>,
    e: u32,
}

impl Laurent3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), 1)
    }

    pub fn monomial(m: Exps, c: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// `1 / (1 - t3)`.
    pub fn inv_one_minus_t3() -> Self {
        Self { terms: BTreeMap::from([((0, 0, 0), 1)]), e: 1 }
    }

    fn add_term(&mut self, m: Exps, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(m).or_insert(0);
        *slot = slot.checked_add(c).expect("Laurent3 coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    /// The denominator exponent `e`.
    pub fn denominator_exponent(&self) -> u32 {
        self.e
    }

    pub fn numerator_terms(&self) -> impl Iterator<Item = (Exps, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, m: Exps) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn times_one_minus_t3(&self) -> BTreeMap<Exps, i64> {
        let mut out = Self { terms: self.terms.clone(), e: 0 };
        for (&(a, b, c), &v) in &self.terms {
            out.add_term((a, b, c + 1), -v);
        }
        out.terms
    }

    fn with_exponent(&self, e: u32) -> BTreeMap<Exps, i64> {
        assert!(e >= self.e);
        let mut terms = self.terms.clone();
        for _ in self.e..e {
            terms = Self { terms, e: 0 }.times_one_minus_t3();
        }
        terms
    }

    /// Cancel common factors of `(1 - t3)` between numerator and denominator.
    fn reduced(mut self) -> Self {
        while self.e > 0 {
            // Divisible iff every (a, b) slice sums to zero at t3 = 1; the
            // quotient's slice is then the prefix sum in c.
            let mut slices: BTreeMap<(i64, i64), Vec<(i64, i64)>> = BTreeMap::new();
            for (&(a, b, c), &v) in &self.terms {
                slices.entry((a, b)).or_default().push((c, v));
            }
            if slices.values().any(|s| s.iter().map(|(_, v)| v).sum::<i64>() != 0) {
                break;
            }
            let mut quotient = Self::zero();
            for ((a, b), slice) in slices {
                let mut running = 0;
                let mut prev: Option<i64> = None;
                for (c, v) in slice {
                    if let Some(p) = prev {
                        for cc in p..c {
                            quotient.add_term((a, b, cc), running);
                        }
                    }
                    running += v;
                    prev = Some(c);
                }
            }
            self = Self { terms: quotient.terms, e: self.e - 1 };
        }
        if self.terms.is_empty() {
            self.e = 0;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.e.max(other.e);
        let mut out = Self { terms: self.with_exponent(e), e };
        for (m, c) in other.with_exponent(e) {
            out.add_term(m, c);
        }
        out.reduced()
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(), e: self.e }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self { terms: BTreeMap::new(), e: self.e + other.e };
        for (&(a1, b1, c1), &x) in &self.terms {
            for (&(a2, b2, c2), &y) in &other.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), x.checked_mul(y).expect("Laurent3 overflow"));
            }
        }
        out.reduced()
    }

    /// Multiply by `t1^a t2^b t3^c`.
    pub fn shift(&self, (a, b, c): Exps) -> Self {
        Self { terms: self.terms.iter().map(|(&(x, y, z), v)| ((x + a, y + b, z + c), *v)).collect(), e: self.e }
    }

    /// Invert all three variables. `1/(1 - 1/t3) = -t3/(1 - t3)`, so
    /// `N/(1-t3)^e` maps to `N(1/t) (-t3)^e / (1-t3)^e`.
    pub fn bar(&self) -> Self {
        let sign = if self.e.is_multiple_of(2) { 1 } else { -1 };
        let e = self.e as i64;
        Self { terms: self.terms.iter().map(|(&(a, b, c), v)| ((-a, -b, -c + e), sign * v)).collect(), e: self.e }
            .reduced()
    }

    /// Swap `t1` and `t2`.
    pub fn swap_t1_t2(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b, c), v)| ((b, a, c), *v)).collect(), e: self.e }
    }
}

impl fmt::Debug for Laurent3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b, c), v)| format!("{v}*t1^{a}*t2^{b}*t3^{c}")).collect();
        let num = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.e == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / (1-t3)^{}", self.e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_cancels() {
        // (1 - t3) / (1 - t3) = 1
        let p = Laurent3::from_terms([((0, 0, 0), 1), ((0, 0, 1), -1)]);
        assert_eq!(p.mul(&Laurent3::inv_one_minus_t3()), Laurent3::one());
        // (1 - t3^3) / (1 - t3) = 1 + t3 + t3^2
        let q = Laurent3::from_terms([((0, 0, 0), 1), ((0, 0, 3), -1)]);
        let r = q.mul(&Laurent3::inv_one_minus_t3());
        assert_eq!(r, Laurent3::from_terms([((0, 0, 0), 1), ((0, 0, 1), 1), ((0, 0, 2), 1)]));
        // t1 / (1 - t3) stays put.
        let s = Laurent3::monomial((1, 0, 0), 1).mul(&Laurent3::inv_one_minus_t3());
        assert_eq!(s.denominator_exponent(), 1);
    }

    #[test]
    fn bar_of_geometric() {
        // bar(1/(1-t3)) = -t3/(1-t3), and the two sum to 1.
        let g = Laurent3::inv_one_minus_t3();
        let b = g.bar();
        assert_eq!(b, Laurent3::monomial((0, 0, 1), -1).mul(&g));
        assert_eq!(g.add(&b), Laurent3::one());
        assert_eq!(b.bar(), g);
    }

    #[test]
    fn add_aligns_denominators() {
        let g = Laurent3::inv_one_minus_t3();
        let sum = g.add(&Laurent3::monomial((0, 0, -1), 1));
        assert_eq!(sum.denominator_exponent(), 1);
        assert_eq!(sum.sub(&g), Laurent3::monomial((0, 0, -1), 1));
    }
}
