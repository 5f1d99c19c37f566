//! Boole polynomials of both kinds and arbitrary positive order, plus the
//! Changhee specialization at `lambda = 1`.
//!
//! Two independent construction routes are kept side by side:
//!
//! * [`boole_polys_gf`] extracts coefficients from the defining generating
//!   function built out of binomial series in `t`;
//! * [`boole_polys_euler`] expands through Stirling numbers of the first kind
//!   and Euler polynomials of the same order.
//!
//! The routes share no code beyond the scalar types, so their agreement is a
//! meaningful check and the verification layer exercises both.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::sync::Mutex;
use thiserror::Error;

use crate::comb::stirling_table;
use crate::euler::euler_polys;
use crate::numeric::{factorial, Poly, Rational};
use crate::series::{binomial_series, binomial_series_symbolic, Series};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BooleError {
    #[error("the Stirling-Euler expansion needs a nonzero lambda")]
    ZeroLambda,
    #[error("index {n} exceeds the computed range {max_n}")]
    IndexOutOfRange { n: usize, max_n: usize },
}

/// First kind is generated by `(2 / (1 + (1+t)^lambda))^k (1+t)^x` with the
/// `2^k` normalization divided out; second kind carries an extra
/// `(1+t)^{lambda k}` factor, which shifts the argument by `lambda` per order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BooleKind {
    First,
    Second,
}

impl BooleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BooleKind::First => "first",
            BooleKind::Second => "second",
        }
    }
}

/// Parameters that select one polynomial family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleParams {
    pub lambda: Rational,
    pub kind: BooleKind,
    pub order_k: usize,
}

impl BooleParams {
    pub fn new(lambda: Rational, kind: BooleKind, order_k: usize) -> Self {
        assert!(order_k >= 1, "order must be positive");
        BooleParams {
            lambda,
            kind,
            order_k,
        }
    }
}

/// Polynomials `n = 0, ..., max_n` of one family, in the variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct BooleSequence {
    params: BooleParams,
    max_n: usize,
    polys: Vec<Poly>,
}

impl BooleSequence {
    pub fn params(&self) -> &BooleParams {
        &self.params
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn poly(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn value(&self, n: usize, x: &Rational) -> Result<Rational, BooleError> {
        if n > self.max_n {
            return Err(BooleError::IndexOutOfRange {
                n,
                max_n: self.max_n,
            });
        }
        Ok(self.polys[n].eval(x))
    }
}

fn compute_gf(params: &BooleParams, max_n: usize) -> BooleSequence {
    let one_plus = binomial_series(&params.lambda, max_n);
    let denom = one_plus.add(&Series::one(max_n));
    let inv = denom.inv().expect("1 + (1+t)^lambda has constant term 2");
    let core = match params.kind {
        BooleKind::First => inv.pow(params.order_k as u32),
        BooleKind::Second => one_plus.mul(&inv).pow(params.order_k as u32),
    };
    let product = core.lift_to_poly().mul(&binomial_series_symbolic(max_n));
    let polys = (0..=max_n)
        .map(|n| product.coeff(n).scale(&Rational::from_integer(factorial(n))))
        .collect();
    BooleSequence {
        params: params.clone(),
        max_n,
        polys,
    }
}

fn compute_euler(params: &BooleParams, max_n: usize) -> Result<BooleSequence, BooleError> {
    if params.lambda.is_zero() {
        return Err(BooleError::ZeroLambda);
    }
    let k = params.order_k;
    let euler = euler_polys(k, max_n);
    let s1 = stirling_table(crate::comb::StirlingKind::FirstSigned, max_n);
    let lambda_inv = params.lambda.clone().recip();
    // argument x/lambda for the first kind, -x/lambda with alternating signs
    // for the second
    let arg_scale = match params.kind {
        BooleKind::First => lambda_inv,
        BooleKind::Second => -lambda_inv,
    };
    let two_pow_k = Rational::from_integer(BigInt::one() << k);
    let mut polys = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut acc = Poly::zero();
        let mut lambda_pow = Rational::one();
        for l in 0..=n {
            let s = Rational::from_integer(s1.value(n, l).expect("l <= n <= max_n"));
            let sign = match params.kind {
                BooleKind::First => Rational::one(),
                BooleKind::Second => {
                    if l % 2 == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    }
                }
            };
            let term = euler
                .poly(l)
                .scale_arg(&arg_scale)
                .scale(&(s * sign * lambda_pow.clone()));
            acc = &acc + &term;
            lambda_pow *= params.lambda.clone();
        }
        polys.push(acc.scale(&two_pow_k.clone().recip()));
    }
    Ok(BooleSequence {
        params: params.clone(),
        max_n,
        polys,
    })
}

static GF_CACHE: Lazy<Mutex<HashMap<BooleParams, Arc<BooleSequence>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static EULER_CACHE: Lazy<Mutex<HashMap<BooleParams, Arc<BooleSequence>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Generating-function route, memoized per parameter set. Accepts any
/// rational `lambda`, including zero.
pub fn boole_polys_gf(params: &BooleParams, max_n: usize) -> Arc<BooleSequence> {
    let mut cache = GF_CACHE.lock().unwrap();
    let entry = cache
        .entry(params.clone())
        .or_insert_with(|| Arc::new(compute_gf(params, max_n)));
    if entry.max_n < max_n {
        *entry = Arc::new(compute_gf(params, max_n));
    }
    Arc::clone(entry)
}

/// Stirling-Euler route, memoized separately from the generating-function
/// route so the two stay independent cross-checks of each other.
pub fn boole_polys_euler(
    params: &BooleParams,
    max_n: usize,
) -> Result<Arc<BooleSequence>, BooleError> {
    if params.lambda.is_zero() {
        return Err(BooleError::ZeroLambda);
    }
    let mut cache = EULER_CACHE.lock().unwrap();
    let entry = match cache.entry(params.clone()) {
        std::collections::hash_map::Entry::Occupied(e) => {
            let e = e.into_mut();
            if e.max_n < max_n {
                *e = Arc::new(compute_euler(params, max_n)?);
            }
            e
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(Arc::new(compute_euler(params, max_n)?))
        }
    };
    Ok(Arc::clone(entry))
}

/// Changhee polynomial `Ch_n(x)`: twice the first-kind polynomial at
/// `lambda = 1`, order 1.
pub fn changhee_poly(n: usize) -> Poly {
    let params = BooleParams::new(Rational::one(), BooleKind::First, 1);
    boole_polys_gf(&params, n)
        .poly(n)
        .scale(&Rational::from_integer(2.into()))
}
