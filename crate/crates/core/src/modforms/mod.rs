//! Bernoulli numbers, Eisenstein series, the discriminant in one and two
//! variables, and the quasimodular ring.

mod linsolve;
mod qmod;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::series::rational::{binomial, divisor_power_sum, factorial, int, rat, ratio};
use crate::series::{factor_power, weighted_product, Coeff, QSeries, Rational, Series, Var, YLaurent};

pub use linsolve::{solve_unique, SolveError};
pub use qmod::{monomial_basis, monomial_weight, RECOGNITION_MARGIN, qmod_derive, qmod_expand, qmod_recognize, Monomial, QModElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModFormError {
    #[error("Eisenstein index must be a positive even integer, got {0}")]
    BadEisensteinIndex(u32),
    #[error("series is not quasimodular of weight <= {max_weight} (inconsistent at q^{exponent})")]
    NotQuasimodular { max_weight: u32, exponent: i64 },
    #[error("window through q^{have} is too short; need q^{need} for {basis} basis monomials")]
    InsufficientPrecision { have: i64, need: i64, basis: usize },
    #[error("series has a pole (min exponent {0}); divide out by Delta first")]
    HasPole(i64),
    #[error("c_form needs g >= 1")]
    BadGenus,
}

/// `B_0, ..., B_n` from `sum_{k=0}^{m} binom(m+1, k) B_k = 0`. This is the
/// convention with `B_1 = -1/2` and `B_2 = 1/6`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(rat(1));
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += int(binomial(m as i64 + 1, k as i64)) * bk;
        }
        b.push(-acc / rat(m as i64 + 1));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

/// Index `2n` of an Eisenstein series `E_{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinSpec(u32);

impl EisensteinSpec {
    pub fn new(index: u32) -> Result<Self, ModFormError> {
        if index == 0 || index % 2 == 1 {
            return Err(ModFormError::BadEisensteinIndex(index));
        }
        Ok(Self(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// `E_{2n}(q) = 1 - (4n / B_{2n}) sum_{m >= 1} sigma_{2n-1}(m) q^m` through `q^order`.
pub fn eisenstein(spec: EisensteinSpec, order: i64) -> QSeries {
    let k = spec.0 as usize;
    let factor = -(rat(2 * k as i64) / bernoulli(k));
    Series::from_fn(Var::Q, 0, order, |m| {
        if m == 0 {
            return rat(1);
        }
        &factor * int(divisor_power_sum(m as u64, spec.0 - 1))
    })
}

/// Shorthand for [`eisenstein`] with a known-good index.
pub fn eisenstein_series(index: u32, order: i64) -> QSeries {
    eisenstein(EisensteinSpec::new(index).expect("even positive index"), order)
}

/// `Delta(q) = q prod (1 - q^n)^24` through `q^order`.
pub fn discriminant_q(order: i64) -> QSeries {
    weighted_product(Var::Q, |_| 24, order - 1).shift(1)
}

/// `1/Delta(q)` through `q^order`, from the product with exponent `-24`.
pub fn inverse_discriminant_q(order: i64) -> QSeries {
    weighted_product(Var::Q, |_| -24, order + 1).shift(-1)
}

/// `prod_{n >= 1} (1-q^n)^a (1-y q^n)^b (1-q^n/y)^b` through `q^order`.
pub fn yq_product(a: i64, b: i64, order: i64) -> Series<YLaurent> {
    let y = YLaurent::monomial(1, rat(1));
    let y_inv = YLaurent::monomial(-1, rat(1));
    let one = YLaurent::ring_one();
    let mut acc = Series::one(Var::Q, order);
    for n in 1..=order.max(0) {
        acc = &acc * &factor_power(Var::Q, &one, n, a, order);
        acc = &acc * &factor_power(Var::Q, &y, n, b, order);
        acc = &acc * &factor_power(Var::Q, &y_inv, n, b, order);
    }
    acc
}

/// `Delta(y, q) = q prod (1-q^n)^20 (1-y q^n)^2 (1-q^n/y)^2` through `q^order`.
pub fn discriminant_yq(order: i64) -> Series<YLaurent> {
    yq_product(20, 2, order - 1).shift(1)
}

/// `1/Delta(y, q)` through `q^order`, as the product with negated exponents.
pub fn inverse_discriminant_yq(order: i64) -> Series<YLaurent> {
    yq_product(-20, -2, order + 1).shift(-1)
}

/// `-B_{2g} / (2g (2g)!)`, the factor with `C_{2g} = factor * E_{2g}`.
pub fn c_scale(g: u32) -> Rational {
    let k = 2 * g as usize;
    -(bernoulli(k) / int(BigInt::from(k as u64) * factorial(k as u64)))
}

/// `C_{2g}` as a `q`-series and as an element of `Q[E2, E4, E6]`.
pub fn c_form(g: u32, order: i64) -> Result<(QSeries, QModElement), ModFormError> {
    if g == 0 {
        return Err(ModFormError::BadGenus);
    }
    let scale = c_scale(g);
    let series = eisenstein_series(2 * g, order).scale(&scale);
    let element = match g {
        1 => QModElement::e2().scale(&scale),
        2 => QModElement::e4().scale(&scale),
        3 => QModElement::e6().scale(&scale),
        _ => {
            // E_{2g} is a modular form of weight 2g; read it off the basis.
            let basis_len = monomial_basis(2 * g).len() as i64;
            let e = eisenstein_series(2 * g, basis_len + 5);
            qmod_recognize(&e, 2 * g)?.scale(&scale)
        }
    };
    Ok((series, element))
}

/// Convenience constructors for the scaled generators.
pub fn c2() -> QModElement {
    QModElement::e2().scale(&c_scale(1))
}

pub fn c4() -> QModElement {
    QModElement::e4().scale(&c_scale(2))
}

pub fn c6() -> QModElement {
    QModElement::e6().scale(&c_scale(3))
}

/// `sum coeff * C2^a C4^b C6^c`.
pub fn from_c_terms(terms: &[((u32, u32, u32), Rational)]) -> QModElement {
    let (g2, g4, g6) = (c2(), c4(), c6());
    let mut acc = QModElement::zero();
    for ((a, b, c), coeff) in terms {
        let m = g2.pow(*a).mul(&g4.pow(*b)).mul(&g6.pow(*c));
        acc = acc.add(&m.scale(coeff));
    }
    acc
}

/// `-1/24`, the `q^0` coefficient of `C_2`. Handy in tests.
pub fn c2_constant() -> Rational {
    ratio(-1, 24)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, upto: i64) -> Vec<Rational> {
        (s.min_exp()..=upto).map(|k| s.coeff(k)).collect()
    }

    /// Naive product oracle: expand `prod (1-q^n)^e` by repeated multiplication
    /// with `(1 - q^n)` or the geometric series, truncated at `order`.
    fn product_oracle(e: i64, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order + 1];
        c[0] = 1;
        for n in 1..=order {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    for k in (n..=order).rev() {
                        c[k] -= c[k - n];
                    }
                } else {
                    for k in n..=order {
                        c[k] += c[k - n];
                    }
                }
            }
        }
        c
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(6), ratio(1, 42));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn eisenstein_coefficients() {
        assert_eq!(ints(&eisenstein_series(2, 3), 3), vec![rat(1), rat(-24), rat(-72), rat(-96)]);
        assert_eq!(ints(&eisenstein_series(4, 2), 2), vec![rat(1), rat(240), rat(2160)]);
        assert_eq!(ints(&eisenstein_series(6, 2), 2), vec![rat(1), rat(-504), rat(-16632)]);
        for k in [2, 4, 6, 8, 10, 12] {
            assert_eq!(eisenstein_series(k, 0).coeff(0), rat(1));
        }
        assert!(EisensteinSpec::new(3).is_err());
        assert!(EisensteinSpec::new(0).is_err());
    }

    #[test]
    fn discriminant_matches_convolution_oracle() {
        let order = 12;
        let d = discriminant_q(order);
        let oracle = product_oracle(24, order as usize - 1);
        assert_eq!(d.min_exp(), 1);
        assert_eq!(d.order(), order);
        for k in 1..=order {
            assert_eq!(d.coeff(k), rat(oracle[k as usize - 1]), "q^{k}");
        }
        assert_eq!(d.coeff(2), rat(-24));
        assert_eq!(d.coeff(3), rat(252));

        let inv = inverse_discriminant_q(order);
        let oracle = product_oracle(-24, order as usize + 1);
        for k in -1..=order {
            assert_eq!(inv.coeff(k), rat(oracle[(k + 1) as usize]));
        }
        assert_eq!(ints(&inv, 2), vec![rat(1), rat(24), rat(324), rat(3200)]);
        assert!(d.inv().unwrap().agrees_with(&inv));
        assert!((&d * &inv).agrees_with(&QSeries::one(Var::Q, order - 1)));
    }

    #[test]
    fn weighted_product_inverse_pairs() {
        let a = weighted_product(Var::Q, |n| (n % 5) as i64 - 2, 15);
        let b = weighted_product(Var::Q, |n| 2 - (n % 5) as i64, 15);
        assert!((&a * &b).agrees_with(&QSeries::one(Var::Q, 15)));
        let oracle = product_oracle(-24, 6);
        let p = weighted_product(Var::Q, |_| -24, 6);
        assert_eq!(ints(&p, 3), oracle[..4].iter().map(|&v| rat(v)).collect::<Vec<_>>());
    }

    #[test]
    fn two_variable_discriminant() {
        let order = 8;
        let d = discriminant_yq(order);
        let d1 = discriminant_q(order);
        for k in d.min_exp()..=order {
            let c = d.coeff(k);
            assert!(c.is_symmetric(), "q^{k}");
            assert_eq!(c.eval_one(), d1.coeff(k), "q^{k}");
        }
        let inv = inverse_discriminant_yq(order);
        assert_eq!(inv.coeff(-1), YLaurent::constant(rat(1)));
        assert_eq!(inv.coeff(0), YLaurent::from_terms([(0, rat(20)), (1, rat(2)), (-1, rat(2))]));
        let via_inv = d.inv().unwrap();
        assert_eq!(via_inv.first_mismatch(&inv), None);
    }

    #[test]
    fn c_forms() {
        let (s, e) = c_form(1, 3).unwrap();
        assert_eq!(ints(&s, 3), vec![ratio(-1, 24), rat(1), rat(3), rat(4)]);
        assert_eq!(e, QModElement::e2().scale(&ratio(-1, 24)));
        assert_eq!(c_scale(2), ratio(1, 2880));
        assert_eq!(c_scale(3), ratio(-1, 181440));
        for g in 1..=6 {
            let (s, e) = c_form(g, 20).unwrap();
            assert!(qmod_expand(&e, 20).agrees_with(&s), "g = {g}");
        }
        assert_eq!(c_form(0, 3), Err(ModFormError::BadGenus));
    }
}
