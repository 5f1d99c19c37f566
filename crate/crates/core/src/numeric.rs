//! Exact rational scalars and dense univariate polynomials over them.
//!
//! Every quantity in this crate is an arbitrary-precision rational or a
//! polynomial with rational coefficients; nothing is ever rounded.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator. Equality is structural.
pub type Rational = num_rational::BigRational;

/// Shorthand for `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for the integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical string form: `"a/b"` in lowest terms, or `"a"` when `b = 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"a/b"` or `"a"`; the result is normalized to lowest terms with a
/// positive denominator. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Generalized binomial coefficient `r(r-1)...(r-m+1) / m!` with an arbitrary
/// rational upper argument. `binomial_general(r, 0) = 1`.
pub fn binomial_general(r: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= r - rat_int(i as i64);
        acc /= rat_int(i as i64 + 1);
    }
    acc
}

/// Falling factorial `(x)_n = x(x-1)...(x-n+1)` as a polynomial of degree `n`.
pub fn falling_factorial_poly(n: usize) -> Poly {
    let mut acc = Poly::one();
    for i in 0..n {
        acc = &acc * &Poly::linear(rat_int(-(i as i64)), Rational::one());
    }
    acc
}

/// Rising factorial `x(x+1)...(x+n-1)`, equal to `(-1)^n (-x)_n`.
pub fn rising_factorial_poly(n: usize) -> Poly {
    let mut acc = Poly::one();
    for i in 0..n {
        acc = &acc * &Poly::linear(rat_int(i as i64), Rational::one());
    }
    acc
}

/// Dense univariate polynomial over [`Rational`].
///
/// Coefficients are stored lowest degree first with no trailing zero; the zero
/// polynomial is the empty sequence, so `degree` is `None` for it.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Builds a polynomial from coefficients (index `i` = coefficient of `x^i`),
    /// trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `a + b*x`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![a, b])
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = Rational::one();
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// The shifted polynomial `q(x) = p(x + c)`, expanded exactly.
    pub fn shift(&self, c: &Rational) -> Poly {
        let base = Poly::linear(c.clone(), Rational::one());
        let mut acc = Poly::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * &base) + &Poly::constant(coeff.clone());
        }
        acc
    }

    /// The rescaled polynomial `q(x) = p(s * x)`.
    pub fn scale_arg(&self, s: &Rational) -> Poly {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let scaled = c * &power;
                power *= s;
                scaled
            })
            .collect();
        Poly::new(coeffs)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Poly::new(coeffs)
    }

    /// Coefficients as canonical rational strings, lowest degree first.
    /// The zero polynomial renders as `["0"]`.
    pub fn coeff_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.coeff_strings().join(", "))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                _ if !unit_coeff => write!(f, "*x{}", Exponent(i))?,
                _ => write!(f, "x{}", Exponent(i))?,
            }
        }
        Ok(())
    }
}

struct Exponent(usize);

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 1 {
            Ok(())
        } else {
            write!(f, "^{}", self.0)
        }
    }
}
