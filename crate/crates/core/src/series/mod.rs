//! Truncated Laurent series with explicit precision bookkeeping.
//!
//! A [`Series`] stores the dense coefficient window `min_exp..=order`.
//! Everything below `min_exp` is known to vanish, everything above `order`
//! is unknown. Every operation reports the largest exponent it can certify
//! and reading past it panics (or errors through [`Series::try_coeff`]).

mod bivariate;
mod convert;
pub mod rational;
mod text;
mod ylaurent;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::par;
pub use bivariate::BiSeries;
pub use convert::{
    from_z_basis, s_squared, sine_half_scaled, symmetric_to_w, symmetric_to_z, trig_substitute,
    two_sine_half,
};
pub use rational::Rational;
pub use text::{format_series, parse_series};
pub use ylaurent::YLaurent;

use rational::rat;

/// Coefficient ring a series can be built over.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn try_inv(&self) -> Option<Self>;
}

/// Symbolic name of the series variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    U,
    Y,
    T3,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::U => "u",
            Var::Y => "y",
            Var::T3 => "t3",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("leading coefficient is not a unit")]
    NonUnitLeading,
    #[error("exp needs a series without constant or polar part")]
    ExpDomain,
    #[error("log needs a series with leading term 1")]
    LogDomain,
    #[error("input is not invariant under y <-> 1/y")]
    Asymmetric,
    #[error("coefficient of {var}^{exp} requested beyond certified order {order}")]
    BeyondOrder { var: Var, exp: i64, order: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Truncated Laurent series `sum_{k >= min_exp} c_k x^k`, known through `order`.
///
/// Invariants: the leading stored coefficient is nonzero (or the window is
/// empty) and `order = min_exp + coeffs.len() - 1 >= min_exp - 1`.
#[derive(Clone, PartialEq)]
pub struct Series<C> {
    var: Var,
    min_exp: i64,
    coeffs: Vec<C>,
}

pub type QSeries = Series<Rational>;

impl<C: Coeff> Series<C> {
    /// Build from the dense window starting at `min_exp`. Leading zeros are
    /// absorbed into `min_exp`; the order is `min_exp + coeffs.len() - 1`.
    pub fn new(var: Var, min_exp: i64, coeffs: Vec<C>) -> Self {
        let mut s = Self { var, min_exp, coeffs };
        s.normalize();
        s
    }

    /// The zero series certified through `order`.
    pub fn zero(var: Var, order: i64) -> Self {
        Self { var, min_exp: order + 1, coeffs: Vec::new() }
    }

    pub fn one(var: Var, order: i64) -> Self {
        Self::monomial(var, 0, C::ring_one(), order)
    }

    /// `c x^exp` certified through `order`.
    pub fn monomial(var: Var, exp: i64, c: C, order: i64) -> Self {
        if exp > order {
            return Self::zero(var, order);
        }
        let mut coeffs = vec![C::ring_zero(); (order - exp + 1) as usize];
        coeffs[0] = c;
        Self::new(var, exp, coeffs)
    }

    /// Dense window from a closure over exponents `min_exp..=order`.
    pub fn from_fn(var: Var, min_exp: i64, order: i64, f: impl Fn(i64) -> C + Sync + Send) -> Self {
        let len = (order - min_exp + 1).max(0) as usize;
        let coeffs = par::map_range(len, |i| f(min_exp + i as i64));
        Self::new(var, min_exp, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_ring_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Largest exponent whose coefficient is certified.
    pub fn order(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients of the window `min_exp..=order`.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `x^exp`. Panics beyond the certified order.
    pub fn coeff(&self, exp: i64) -> C {
        match self.try_coeff(exp) {
            Ok(c) => c,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_coeff(&self, exp: i64) -> Result<C, SeriesError> {
        if exp > self.order() {
            return Err(SeriesError::BeyondOrder { var: self.var, exp, order: self.order() });
        }
        if exp < self.min_exp {
            return Ok(C::ring_zero());
        }
        Ok(self.coeffs[(exp - self.min_exp) as usize].clone())
    }

    /// Nonzero terms `(exp, coeff)` in the certified window.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let m = self.min_exp;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_ring_zero()).map(move |(i, c)| (m + i as i64, c))
    }

    /// Forget everything above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        if order < self.min_exp {
            return Self::zero(self.var, order);
        }
        let keep = (order - self.min_exp + 1) as usize;
        Self::new(self.var, self.min_exp, self.coeffs[..keep].to_vec())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { var: self.var, min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.var, self.min_exp, self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        Self::new(self.var, self.min_exp, self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(self.var, self.min_exp, self.coeffs.iter().map(f).collect())
    }

    fn check_var(&self, other: &Self) -> Result<(), SeriesError> {
        if self.var != other.var {
            Err(SeriesError::VarMismatch(self.var, other.var))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        Ok(self.combine(other, |a, b| a.plus(b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        Ok(self.combine(other, |a, b| a.minus(b)))
    }

    fn combine(&self, other: &Self, op: impl Fn(&C, &C) -> C) -> Self {
        let order = self.order().min(other.order());
        let min_exp = self.min_exp.min(other.min_exp).min(order + 1);
        let zero = C::ring_zero();
        let coeffs = (min_exp..=order)
            .map(|k| {
                let a = self.get(k).unwrap_or(&zero);
                let b = other.get(k).unwrap_or(&zero);
                op(a, b)
            })
            .collect();
        Self::new(self.var, min_exp, coeffs)
    }

    fn get(&self, exp: i64) -> Option<&C> {
        if exp < self.min_exp {
            return None;
        }
        self.coeffs.get((exp - self.min_exp) as usize)
    }

    /// Cauchy product. The result is certified through
    /// `min(a.order + b.min_exp, b.order + a.min_exp)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let min_exp = self.min_exp + other.min_exp;
        let order = (self.order() + other.min_exp).min(other.order() + self.min_exp);
        if order < min_exp {
            return Ok(Self::zero(self.var, order));
        }
        let (la, lb) = (self.coeffs.len(), other.coeffs.len());
        let len = (order - min_exp + 1) as usize;
        let coeffs = par::map_range(len, |i| {
            let lo = i.saturating_sub(lb - 1);
            let hi = i.min(la - 1);
            let mut acc = C::ring_zero();
            for j in lo..=hi {
                let (x, y) = (&self.coeffs[j], &other.coeffs[i - j]);
                if !x.is_ring_zero() && !y.is_ring_zero() {
                    acc = acc.plus(&x.times(y));
                }
            }
            acc
        });
        Ok(Self::new(self.var, min_exp, coeffs))
    }

    /// Multiplicative inverse; requires the leading coefficient to be a unit.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::NonUnitLeading)?;
        let lead_inv = lead.try_inv().ok_or(SeriesError::NonUnitLeading)?;
        let n = self.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = C::ring_zero();
            for j in 1..=k {
                let (a, b) = (&self.coeffs[j], &out[k - j]);
                if !a.is_ring_zero() && !b.is_ring_zero() {
                    acc = acc.plus(&a.times(b));
                }
            }
            out.push(acc.times(&lead_inv).negate());
        }
        Ok(Self::new(self.var, -self.min_exp, out))
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.var, self.order() - self.min_exp);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal exponential; needs `min_exp >= 1`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.min_exp < 1 {
            return Err(SeriesError::ExpDomain);
        }
        let order = self.order();
        // f_0 = 1, n f_n = sum_{k=1}^n k a_k f_{n-k}
        let mut f: Vec<C> = vec![C::ring_one()];
        for n in 1..=order {
            let mut acc = C::ring_zero();
            for k in 1..=n {
                let a = match self.get(k) {
                    Some(a) if !a.is_ring_zero() => a,
                    _ => continue,
                };
                let prev = &f[(n - k) as usize];
                if !prev.is_ring_zero() {
                    acc = acc.plus(&a.times(prev).scale(&rat(k)));
                }
            }
            f.push(acc.scale(&rat(n).recip()));
        }
        Ok(Self::new(self.var, 0, f))
    }

    /// Formal logarithm; needs leading term exactly `1 * x^0`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.min_exp != 0 || self.coeffs[0] != C::ring_one() {
            return Err(SeriesError::LogDomain);
        }
        let order = self.order();
        // n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}
        let mut g: Vec<C> = vec![C::ring_zero()];
        for n in 1..=order {
            let mut acc = self.coeffs[n as usize].scale(&rat(n));
            for k in 1..n {
                let (gk, fk) = (&g[k as usize], &self.coeffs[(n - k) as usize]);
                if !gk.is_ring_zero() && !fk.is_ring_zero() {
                    acc = acc.minus(&gk.times(fk).scale(&rat(k)));
                }
            }
            g.push(acc.scale(&rat(n).recip()));
        }
        Ok(Self::new(self.var, 0, g))
    }

    /// The operator `x d/dx`: the coefficient of `x^k` is multiplied by `k`.
    pub fn x_derive(&self) -> Self {
        let m = self.min_exp;
        Self::new(
            self.var,
            m,
            self.coeffs.iter().enumerate().map(|(i, c)| c.scale(&rat(m + i as i64))).collect(),
        )
    }

    /// Substitute `x -> x^k` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1);
        let order = self.order() * k + (k - 1);
        let min_exp = self.min_exp * k;
        let coeffs = (min_exp..=order)
            .map(|e| if e % k == 0 { self.get(e / k).cloned().unwrap_or_else(C::ring_zero) } else { C::ring_zero() })
            .collect();
        Self::new(self.var, min_exp, coeffs)
    }

    /// First exponent in the common certified window where the two series
    /// differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let order = self.order().min(other.order());
        let start = self.min_exp.min(other.min_exp);
        let zero = C::ring_zero();
        (start..=order).find(|&k| self.get(k).unwrap_or(&zero) != other.get(k).unwrap_or(&zero))
    }

    /// Equality on the common certified window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.var == other.var && self.first_mismatch(other).is_none()
    }
}

/// `q d/dq`.
pub fn q_derive<C: Coeff>(a: &Series<C>) -> Series<C> {
    a.x_derive()
}

/// `prod_{n >= 1} (1 - x^n)^{e(n)}` through `order`.
pub fn weighted_product(var: Var, exponent: impl Fn(u64) -> i64, order: i64) -> QSeries {
    let mut acc = QSeries::one(var, order);
    for n in 1..=order.max(0) {
        let e = exponent(n as u64);
        if e != 0 {
            acc = &acc * &factor_power(var, &Rational::from_integer(1.into()), n, e, order);
        }
    }
    acc
}

/// `(1 - c x^step)^e` through `order` for any integer `e`.
pub fn factor_power<C: Coeff>(var: Var, c: &C, step: i64, e: i64, order: i64) -> Series<C> {
    assert!(step >= 1);
    let mut coeffs = vec![C::ring_zero(); order.max(-1) as usize + 1];
    if order < 0 {
        return Series::zero(var, order);
    }
    // (1 - c x^step)^e = sum_j binom(e, j) (-c)^j x^{step j}
    let neg_c = c.negate();
    let mut power = C::ring_one();
    let mut j = 0i64;
    while step * j <= order {
        let b = rational::binomial(e, j);
        coeffs[(step * j) as usize] = power.scale(&Rational::from_integer(b));
        power = power.times(&neg_c);
        j += 1;
    }
    Series::new(var, 0, coeffs)
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        self.try_add(rhs).expect("series add")
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        self.try_sub(rhs).expect("series sub")
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        self.try_mul(rhs).expect("series mul")
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.map_coeffs(|c| c.negate())
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}; {}..={}](", self.var, self.min_exp, self.order())?;
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}*{}^{e}", self.var)?;
        }
        write!(f, ")")
    }
}
