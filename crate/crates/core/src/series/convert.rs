//! Basis changes for symmetric Laurent polynomials in `y`, and the
//! trigonometric substitution `y = -e^{iu}` carried out over the rationals.
//!
//! A polynomial invariant under `y <-> 1/y` is a polynomial in
//! `w = y + 1/y`, hence also in `z = y - 2 + 1/y = w - 2`. Under
//! `y = -e^{iu}` we get `w = -2 cos u = s^2 - 2` with `s = 2 sin(u/2)`, so the
//! substitution never needs the imaginary unit.

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::{binomial, factorial, int, rat, Rational};
use super::{QSeries, Series, SeriesError, Var, YLaurent};

/// Coefficients `b_j` with `p = sum_j b_j (y + 1/y)^j`.
pub fn symmetric_to_w(p: &YLaurent) -> Result<Vec<Rational>, SeriesError> {
    if !p.is_symmetric() {
        return Err(SeriesError::Asymmetric);
    }
    let top = p.max_degree().unwrap_or(0).max(0);
    let mut rest = p.clone();
    let mut out = vec![Rational::zero(); top as usize + 1];
    for j in (0..=top).rev() {
        let lead = rest.coeff(j);
        if lead.is_zero() {
            continue;
        }
        out[j as usize] = lead.clone();
        // w^j = sum_i binom(j, i) y^{j - 2i}
        for i in 0..=j {
            rest.add_term(j - 2 * i, -(&lead * int(binomial(j, i))));
        }
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

/// Coefficients `a_g` with `p = sum_g a_g (y - 2 + 1/y)^g`.
pub fn symmetric_to_z(p: &YLaurent) -> Result<Vec<Rational>, SeriesError> {
    let w = symmetric_to_w(p)?;
    // w^j = (z + 2)^j = sum_g binom(j, g) 2^{j-g} z^g
    let mut z = vec![Rational::zero(); w.len()];
    for (j, b) in w.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        for (g, slot) in z.iter_mut().enumerate().take(j + 1) {
            let c = binomial(j as i64, g as i64) * BigInt::from(2).pow((j - g) as u32);
            *slot += b * int(c);
        }
    }
    Ok(z)
}

/// Expand `sum_g a_g (y - 2 + 1/y)^g` back into a Laurent polynomial.
pub fn from_z_basis(a: &[Rational]) -> YLaurent {
    use super::Coeff;
    let z = YLaurent::from_terms([(1, rat(1)), (0, rat(-2)), (-1, rat(1))]);
    let mut acc = YLaurent::new();
    for c in a.iter().rev() {
        acc = acc.times(&z).plus(&YLaurent::constant(c.clone()));
    }
    acc
}

/// `2 sin(u/2)` through `u^order`, from the sine Taylor series.
pub fn two_sine_half(order: i64) -> QSeries {
    Series::from_fn(Var::U, 0, order, |k| {
        if k % 2 == 0 {
            return Rational::zero();
        }
        // 2 (-1)^j (u/2)^{2j+1} / (2j+1)!
        let j = (k - 1) / 2;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        rat(2 * sign) / int(factorial(k as u64) * BigInt::from(2).pow(k as u32))
    })
}

/// `S(u) = sin(u/2) / (u/2)` through `u^order`.
pub fn sine_half_scaled(order: i64) -> QSeries {
    two_sine_half(order + 1).shift(-1)
}

/// `s^2 = (2 sin(u/2))^2` through `u^order`.
pub fn s_squared(order: i64) -> QSeries {
    let s = two_sine_half(order - 1);
    (&s * &s).truncate(order)
}

/// The even `u`-series obtained from a symmetric `p(y)` by `y = -e^{iu}`,
/// certified through `u^order`.
pub fn trig_substitute(p: &YLaurent, order: i64) -> Result<QSeries, SeriesError> {
    let w_coeffs = symmetric_to_w(p)?;
    let s2 = s_squared(order);
    let w = &s2 - &QSeries::monomial(Var::U, 0, rat(2), order);
    let mut acc = QSeries::zero(Var::U, order);
    for b in w_coeffs.iter().rev() {
        acc = &(&acc * &w) + &QSeries::monomial(Var::U, 0, b.clone(), order);
    }
    Ok(acc.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::super::rational::ratio;
    use super::*;

    fn y_sym(d: i64) -> YLaurent {
        YLaurent::symmetric_power_sum(d)
    }

    #[test]
    fn z_basis_examples() {
        assert_eq!(symmetric_to_z(&y_sym(1)).unwrap(), vec![rat(2), rat(1)]);
        assert_eq!(symmetric_to_z(&y_sym(2)).unwrap(), vec![rat(2), rat(4), rat(1)]);
        assert_eq!(symmetric_to_z(&YLaurent::constant(rat(5))).unwrap(), vec![rat(5)]);
        assert_eq!(symmetric_to_z(&YLaurent::new()).unwrap(), vec![rat(0)]);
        let asym = YLaurent::monomial(1, rat(1));
        assert_eq!(symmetric_to_z(&asym), Err(SeriesError::Asymmetric));
    }

    #[test]
    fn sine_series() {
        let s = two_sine_half(5);
        assert_eq!(s.coeff(1), rat(1));
        assert_eq!(s.coeff(3), ratio(-1, 24));
        assert_eq!(s.coeff(5), ratio(1, 1920));
        let big_s = sine_half_scaled(4);
        assert_eq!(big_s.coeff(0), rat(1));
        assert_eq!(big_s.coeff(2), ratio(-1, 24));
        assert_eq!(big_s.order(), 4);
    }

    #[test]
    fn trig_substitute_examples() {
        let t = trig_substitute(&y_sym(1), 6).unwrap();
        assert_eq!(t.coeff(0), rat(-2));
        assert_eq!(t.coeff(2), rat(1));
        assert_eq!(t.coeff(4), ratio(-1, 12));
        assert_eq!(t.coeff(6), ratio(1, 360));
        assert_eq!(t.order(), 6);
        let c = trig_substitute(&YLaurent::constant(ratio(3, 7)), 4).unwrap();
        assert!(c.agrees_with(&QSeries::monomial(Var::U, 0, ratio(3, 7), 4)));
        let z = YLaurent::from_terms([(1, rat(1)), (0, rat(-2)), (-1, rat(1))]);
        let t = trig_substitute(&z, 4).unwrap();
        assert_eq!(t.coeff(0), rat(-4));
        assert_eq!(t.coeff(2), rat(1));
        assert_eq!(t.coeff(4), ratio(-1, 12));
        assert!(trig_substitute(&YLaurent::monomial(2, rat(1)), 4).is_err());
    }
}
