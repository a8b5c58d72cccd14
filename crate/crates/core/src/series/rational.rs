//! Exact rational numbers and the small integer helpers used to build
//! coefficients (factorials, binomials, divisor sums).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Coeff, SeriesError};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` reduced. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Serialize as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(int(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of `r`, if it is an integer that fits in an `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient for integer `n` (any sign) and `k`; zero for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc / factorial(k as u64)
}

/// `sum_{d | m} d^power`.
pub fn divisor_power_sum(m: u64, power: u32) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            total += BigInt::from(d).pow(power);
            let e = m / d;
            if e != d {
                total += BigInt::from(e).pow(power);
            }
        }
        d += 1;
    }
    total
}

/// All positive divisors of `m`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

impl Coeff for Rational {
    fn ring_zero() -> Self {
        Zero::zero()
    }

    fn ring_one() -> Self {
        One::one()
    }

    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negate(&self) -> Self {
        -self
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }

    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(24)), "24/1");
        assert_eq!(parse_rational("24").unwrap(), rat(24));
        assert_eq!(parse_rational(" -3/2 ").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(2, 5), BigInt::zero());
    }

    #[test]
    fn divisor_sums() {
        let s1: Vec<_> = (1..=6).map(|m| divisor_power_sum(m, 1)).collect();
        let want: Vec<BigInt> = [1, 3, 4, 7, 6, 12].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(s1, want);
        assert_eq!(divisor_power_sum(2, 3), BigInt::from(9));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
