//! Truncated formal power series in `t`.
//!
//! Coefficients live in one of two rings: [`Rational`] or [`Poly`] (the latter
//! carries a symbolic `x`, as in the expansion of `(1+t)^x`). A series stores
//! its truncation order `T` explicitly; binary operations truncate to the
//! smaller of the two orders rather than erroring.

use std::ops::Sub;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::numeric::{factorial, format_rational, rat_int, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion needs a constant term that is a unit of the coefficient ring.
    #[error("series is not invertible: constant term is not a unit")]
    NonUnitConstantTerm,
    /// Composition `outer(inner)` needs `inner` to vanish at `t = 0`.
    #[error("series composition requires the inner series to have zero constant term")]
    NonzeroInnerConstant,
}

/// Coefficient ring of a [`Series`]: exact rationals or polynomials in `x`.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug + Zero + One + Sub<Output = Self> {
    /// Multiplicative inverse, when the element is a unit of the ring.
    /// For polynomials only nonzero constants are units.
    fn try_inv(&self) -> Option<Self>;

    /// JSON form used by the series serialization.
    fn coeff_json(&self) -> Value;
}

impl Coefficient for Rational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn coeff_json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl Coefficient for Poly {
    fn try_inv(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => Some(Poly::constant(self.coeff(0).recip())),
            _ => None,
        }
    }

    fn coeff_json(&self) -> Value {
        Value::Array(self.coeff_strings().into_iter().map(Value::String).collect())
    }
}

/// Formal power series truncated at order `T`: coefficients of `t^0 ..= t^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<C: Coefficient> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Series<C> {
    /// Builds a series from coefficients of `t^0 ..= t^T`; `coeffs` must be
    /// non-empty (order 0 is the minimum).
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        Series { coeffs }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(C::one(), order)
    }

    /// The series `t`, truncated to `order`.
    pub fn t(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    /// Truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^m` for `m <= T`.
    pub fn coeff(&self, m: usize) -> &C {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Drops coefficients above `order` (never extends).
    pub fn truncate(&self, order: usize) -> Series<C> {
        let keep = order.min(self.order());
        Series { coeffs: self.coeffs[..=keep].to_vec() }
    }

    pub fn add(&self, rhs: &Series<C>) -> Series<C> {
        let t = self.order().min(rhs.order());
        let coeffs = (0..=t)
            .map(|m| self.coeffs[m].clone() + rhs.coeffs[m].clone())
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, rhs: &Series<C>) -> Series<C> {
        let t = self.order().min(rhs.order());
        let coeffs = (0..=t)
            .map(|m| self.coeffs[m].clone() - rhs.coeffs[m].clone())
            .collect();
        Series { coeffs }
    }

    /// Cauchy product truncated to the smaller operand order.
    pub fn mul(&self, rhs: &Series<C>) -> Series<C> {
        let t = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); t + 1];
        for i in 0..=t {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(t - i) {
                let term = self.coeffs[i].clone() * rhs.coeffs[j].clone();
                coeffs[i + j] = coeffs[i + j].clone() + term;
            }
        }
        Series { coeffs }
    }

    pub fn scale(&self, c: &C) -> Series<C> {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Series { coeffs }
    }

    /// Multiplicative inverse up to the truncation order.
    ///
    /// Uses the standard recurrence `b_0 = a_0^{-1}`,
    /// `b_m = -a_0^{-1} * sum_{j=1..m} a_j b_{m-j}`.
    pub fn inv(&self) -> Result<Series<C>, SeriesError> {
        let a0_inv = self.coeffs[0].try_inv().ok_or(SeriesError::NonUnitConstantTerm)?;
        let t = self.order();
        let mut out = vec![C::zero(); t + 1];
        out[0] = a0_inv.clone();
        for m in 1..=t {
            let mut acc = C::zero();
            for j in 1..=m {
                acc = acc + self.coeffs[j].clone() * out[m - j].clone();
            }
            out[m] = C::zero() - a0_inv.clone() * acc;
        }
        Ok(Series { coeffs: out })
    }

    /// Composition `self(inner)`, requiring `inner(0) = 0`; Horner-style
    /// accumulation in the series ring, truncated to the smaller order.
    pub fn compose(&self, inner: &Series<C>) -> Result<Series<C>, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let t = self.order().min(inner.order());
        let inner = inner.truncate(t);
        let mut acc = Series::constant(self.coeffs[t].clone(), t);
        for i in (0..t).rev() {
            acc = acc.mul(&inner).add(&Series::constant(self.coeffs[i].clone(), t));
        }
        Ok(acc)
    }

    /// `self^k` at the original order; `k = 0` gives the one series.
    pub fn pow(&self, k: u32) -> Series<C> {
        let mut acc = Series::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `{"order": T, "coeffs": [...]}` with ring-specific coefficient encoding.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": Value::Array(self.coeffs.iter().map(|c| c.coeff_json()).collect()),
        })
    }
}

impl Series<Rational> {
    /// Reinterprets rational coefficients as constant polynomials, moving the
    /// series into the `Poly` coefficient ring.
    pub fn lift_to_poly(&self) -> Series<Poly> {
        Series {
            coeffs: self.coeffs.iter().map(|c| Poly::constant(c.clone())).collect(),
        }
    }
}

/// `(1+t)^lambda = sum_m binom(lambda, m) t^m`, truncated at `order`.
pub fn binomial_series(lambda: &Rational, order: usize) -> Series<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for m in 1..=order {
        // binom(lambda, m) = binom(lambda, m-1) * (lambda - m + 1) / m
        c = c * (lambda - rat_int(m as i64 - 1)) / rat_int(m as i64);
        coeffs.push(c.clone());
    }
    Series { coeffs }
}

/// `(1+t)^x` with symbolic `x`: the `t^m` coefficient is the polynomial
/// `binom(x, m) = (x)_m / m!`.
pub fn binomial_series_symbolic(order: usize) -> Series<Poly> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut falling = Poly::one();
    coeffs.push(falling.clone());
    for m in 1..=order {
        falling = &falling * &Poly::linear(rat_int(-(m as i64 - 1)), Rational::one());
        let m_fact = Rational::from_integer(factorial(m));
        coeffs.push(falling.scale(&m_fact.recip()));
    }
    Series { coeffs }
}

/// `e^t - 1 = sum_{l>=1} t^l / l!`, the substitution series with zero
/// constant term.
pub fn exp_minus_one(order: usize) -> Series<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rational::zero());
    let mut inv_fact = Rational::one();
    for l in 1..=order {
        inv_fact /= rat_int(l as i64);
        coeffs.push(inv_fact.clone());
    }
    Series { coeffs }
}

/// `e^{xt}` with symbolic `x`: the `t^m` coefficient is `x^m / m!`.
pub fn exp_xt_symbolic(order: usize) -> Series<Poly> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut inv_fact = Rational::one();
    coeffs.push(Poly::one());
    for m in 1..=order {
        inv_fact /= rat_int(m as i64);
        coeffs.push(Poly::monomial(m).scale(&inv_fact));
    }
    Series { coeffs }
}
