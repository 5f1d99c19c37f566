//! Fixed-precision p-adic integer arithmetic and truncated alternating sums.
//!
//! Residues are carried modulo `p^M` for an odd prime `p` in native words;
//! `u128` intermediates keep every product exact. The truncated sums
//! `S_N(f) = sum_{y < p^N} f(y) (-1)^y` approximate the alternating signed
//! integral: `S_{N+1} = S_N (mod p^N)` whenever `f` has p-integral
//! coefficients, so a residue at level `N` pins the limit to `N` digits.
//!
//! [`witt_check`] compares such a truncated sum (a `k`-fold one for order-`k`
//! families) against the exact polynomial value embedded mod `p^M`, reporting
//! the two residues and whether they agree at the requested level.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::sync::Mutex;
use thiserror::Error;

use crate::boole::{boole_polys_gf, BooleKind, BooleParams};
use crate::numeric::{format_rational, Poly, Rational};

/// Cap on the notional term count `p^{N k}` of a truncated sum, overridable
/// through the `BOOLE_TERM_BUDGET` environment variable.
pub const DEFAULT_TERM_BUDGET: u128 = 10_000_000;
pub const TERM_BUDGET_ENV: &str = "BOOLE_TERM_BUDGET";

/// Current term budget: the environment override when it parses as an
/// unsigned integer, the default otherwise.
pub fn term_budget() -> u128 {
    std::env::var(TERM_BUDGET_ENV)
        .ok()
        .and_then(|raw| raw.trim().parse::<u128>().ok())
        .unwrap_or(DEFAULT_TERM_BUDGET)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("p = {0} exceeds the supported range (p < 2^31)")]
    PrimeTooLarge(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("p^M does not fit the working word: p = {p}, M = {precision}")]
    ModulusOverflow { p: u64, precision: u32 },
    #[error("denominator of {value} is not a unit mod {p}")]
    DenominatorNotUnit { value: String, p: u64 },
    #[error("residue {residue} is not invertible mod {modulus}")]
    NotInvertible { residue: u64, modulus: u64 },
    #[error("truncated sum needs {needed} terms but the budget is {budget}; raise {TERM_BUDGET_ENV} to allow it")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("congruence level N = {level} exceeds the working precision M = {precision}")]
    LevelExceedsPrecision { level: u32, precision: u32 },
    #[error("slack {slack} exceeds the congruence level N = {level}")]
    SlackExceedsLevel { slack: u32, level: u32 },
}

/// Modulus `p^M` together with its parts. Copyable so residues can carry it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    precision: u32,
    modulus: u64,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self, PadicError> {
        if p >= 1 << 31 {
            return Err(PadicError::PrimeTooLarge(p));
        }
        if !is_odd_prime(p) {
            return Err(PadicError::NotOddPrime(p));
        }
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let modulus = p
            .checked_pow(precision)
            .filter(|m| *m < 1 << 63)
            .ok_or(PadicError::ModulusOverflow { p, precision })?;
        Ok(PadicContext {
            p,
            precision,
            modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p^level` for `level <= precision`.
    pub fn level_modulus(&self, level: u32) -> u64 {
        assert!(level <= self.precision);
        self.p.pow(level)
    }

    pub fn from_residue(&self, residue: u64) -> PadicInt {
        PadicInt {
            residue: residue % self.modulus,
            ctx: *self,
        }
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }
}

fn inv_mod(a: u64, modulus: u64) -> Option<u64> {
    let (mut r0, mut r1) = (modulus as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(modulus as i128) as u64)
}

/// Residue mod `p^M`, tied to its context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicInt {
    residue: u64,
    ctx: PadicContext,
}

impl PadicInt {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    /// Multiplicative inverse; fails exactly when `p` divides the residue.
    pub fn inv(&self) -> Result<PadicInt, PadicError> {
        let inv = inv_mod(self.residue, self.ctx.modulus).ok_or(PadicError::NotInvertible {
            residue: self.residue,
            modulus: self.ctx.modulus,
        })?;
        Ok(self.ctx.from_residue(inv))
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mixed p-adic contexts");
        self.ctx
            .from_residue((self.residue + rhs.residue) % self.ctx.modulus)
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mixed p-adic contexts");
        self.ctx
            .from_residue((self.residue + self.ctx.modulus - rhs.residue) % self.ctx.modulus)
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mixed p-adic contexts");
        self.ctx.from_residue(self.ctx.mul_raw(self.residue, rhs.residue))
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        self.ctx
            .from_residue((self.ctx.modulus - self.residue) % self.ctx.modulus)
    }
}

/// Reduction of a rational with p-coprime denominator into the context.
pub fn embed_rational(r: &Rational, ctx: &PadicContext) -> Result<PadicInt, PadicError> {
    let p = BigInt::from(ctx.p);
    if r.denom().mod_floor(&p).is_zero() {
        return Err(PadicError::DenominatorNotUnit {
            value: format_rational(r),
            p: ctx.p,
        });
    }
    let modulus = BigInt::from(ctx.modulus);
    let num = r
        .numer()
        .mod_floor(&modulus)
        .to_u64()
        .expect("mod_floor result fits the modulus");
    let den = r
        .denom()
        .mod_floor(&modulus)
        .to_u64()
        .expect("mod_floor result fits the modulus");
    let den_inv = inv_mod(den, ctx.modulus).ok_or(PadicError::DenominatorNotUnit {
        value: format_rational(r),
        p: ctx.p,
    })?;
    Ok(ctx.from_residue(ctx.mul_raw(num, den_inv)))
}

fn embed_poly(f: &Poly, ctx: &PadicContext) -> Result<Vec<u64>, PadicError> {
    f.coeffs()
        .iter()
        .map(|c| embed_rational(c, ctx).map(|v| v.residue))
        .collect()
}

fn eval_residue(coeffs: &[u64], at: u64, ctx: &PadicContext) -> u64 {
    let mut acc = 0u64;
    for c in coeffs.iter().rev() {
        acc = (ctx.mul_raw(acc, at) + c) % ctx.modulus;
    }
    acc
}

/// Signed weight distribution of the sum variable `s = y_1 + ... + y_k`:
/// entry `s` holds `sum (-1)^{y_1 + ... + y_k}` over all `k`-tuples below
/// `p^level` with that total, reduced mod `p^M`. Built by convolving the
/// one-variable alternating weights `k - 1` times; cached per shape.
fn signed_distribution(ctx: &PadicContext, level: u32, k: usize) -> Arc<Vec<u64>> {
    static CACHE: Lazy<Mutex<HashMap<(u64, u64, u32, usize), Arc<Vec<u64>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (ctx.p, ctx.modulus, level, k);
    let mut cache = CACHE.lock().unwrap();
    if let Some(hit) = cache.get(&key) {
        return Arc::clone(hit);
    }
    let span = ctx.p.pow(level) as usize;
    let minus_one = ctx.modulus - 1;
    let base: Vec<u64> = (0..span)
        .map(|y| if y % 2 == 0 { 1 } else { minus_one })
        .collect();
    let mut dist = base.clone();
    for _ in 1..k {
        let mut next = vec![0u64; dist.len() + span - 1];
        for (i, wi) in dist.iter().enumerate() {
            if *wi == 0 {
                continue;
            }
            for (j, wj) in base.iter().enumerate() {
                let cell = &mut next[i + j];
                *cell = (*cell + ctx.mul_raw(*wi, *wj)) % ctx.modulus;
            }
        }
        dist = next;
    }
    let dist = Arc::new(dist);
    cache.insert(key, Arc::clone(&dist));
    dist
}

/// Truncated alternating sum `sum_{y < p^level} f(y) (-1)^y` mod `p^M`.
pub fn fermionic_sum(f: &Poly, ctx: &PadicContext, level: u32) -> Result<u64, PadicError> {
    fermionic_sum_multi(f, 1, ctx, level)
}

/// `k`-fold truncated alternating sum of `g(y_1 + ... + y_k)` over all
/// `k`-tuples below `p^level`, using the cached weight distribution so the
/// work grows with `k * p^level` rather than `p^{level k}`. The notional
/// term count `p^{level k}` is still charged against the budget.
pub fn fermionic_sum_multi(
    g: &Poly,
    k: usize,
    ctx: &PadicContext,
    level: u32,
) -> Result<u64, PadicError> {
    fermionic_sum_multi_with_budget(g, k, ctx, level, term_budget())
}

pub fn fermionic_sum_multi_with_budget(
    g: &Poly,
    k: usize,
    ctx: &PadicContext,
    level: u32,
    budget: u128,
) -> Result<u64, PadicError> {
    assert!(k >= 1, "at least one summation variable");
    let needed = level
        .checked_mul(k as u32)
        .and_then(|e| (ctx.p as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(PadicError::BudgetExceeded { needed, budget });
    }
    let coeffs = embed_poly(g, ctx)?;
    let dist = signed_distribution(ctx, level, k);
    let mut acc = 0u64;
    for (s, w) in dist.iter().enumerate() {
        if *w == 0 {
            continue;
        }
        let value = eval_residue(&coeffs, s as u64 % ctx.modulus, ctx);
        acc = (acc + ctx.mul_raw(*w, value)) % ctx.modulus;
    }
    Ok(acc)
}

/// One congruence comparison between the truncated-sum route and the exact
/// polynomial route. `lhs_residue` and `rhs_residue` are mod `p^M`;
/// `modulus` is `p^{N - slack}`, the level at which `agree` is judged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub p: u64,
    #[serde(rename = "M")]
    pub precision: u32,
    #[serde(rename = "N")]
    pub level: u32,
    pub n: usize,
    pub k: usize,
    pub kind: BooleKind,
    pub lambda: String,
    pub x: String,
    pub lhs_residue: u64,
    pub rhs_residue: u64,
    pub modulus: u64,
    pub agree: bool,
}

/// Compares the `k`-fold truncated sum of the factorial integrand against
/// the exact polynomial value.
///
/// The integrand in the total `s` of the summation variables is
/// `(x + lambda s)_n` for the first kind and `(x - lambda s)_n` for the
/// second; its truncated `k`-fold sum converges to `2^k` times polynomial
/// `n` of the matching family, so the residues must agree mod
/// `p^{level - slack}`.
#[allow(clippy::too_many_arguments)]
pub fn witt_check(
    kind: BooleKind,
    order_k: usize,
    n: usize,
    lambda: &Rational,
    x: &Rational,
    ctx: &PadicContext,
    level: u32,
    slack: u32,
) -> Result<CongruenceReport, PadicError> {
    if level > ctx.precision {
        return Err(PadicError::LevelExceedsPrecision {
            level,
            precision: ctx.precision,
        });
    }
    if slack > level {
        return Err(PadicError::SlackExceedsLevel { slack, level });
    }
    let slope = match kind {
        BooleKind::First => lambda.clone(),
        BooleKind::Second => -lambda.clone(),
    };
    let mut integrand = Poly::one();
    for i in 0..n {
        let constant = x - Rational::from_integer(BigInt::from(i));
        integrand = &integrand * &Poly::linear(constant, slope.clone());
    }
    let lhs = fermionic_sum_multi(&integrand, order_k, ctx, level)?;

    let params = BooleParams::new(lambda.clone(), kind, order_k);
    let two_pow_k = Rational::from_integer(BigInt::one() << order_k);
    let exact = boole_polys_gf(&params, n).poly(n).eval(x) * two_pow_k;
    let rhs = embed_rational(&exact, ctx)?.residue();

    let check_modulus = ctx.level_modulus(level - slack);
    let agree = lhs % check_modulus == rhs % check_modulus;
    Ok(CongruenceReport {
        p: ctx.p,
        precision: ctx.precision,
        level,
        n,
        k: order_k,
        kind,
        lambda: format_rational(lambda),
        x: format_rational(x),
        lhs_residue: lhs,
        rhs_residue: rhs,
        modulus: check_modulus,
        agree,
    })
}
