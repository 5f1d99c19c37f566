//! Stirling numbers of both kinds and the unsigned first-kind brackets.
//!
//! Triangles are filled by the classical recurrences and memoized; an
//! independent generating-function extraction (`stirling2_via_series`) exists
//! purely to cross-check the second-kind recurrence.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;
use thiserror::Error;

use crate::numeric::factorial;
use crate::series::exp_minus_one;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("Stirling index out of range: l = {l} exceeds n = {n}")]
    IndexOutOfRange { n: usize, l: usize },
}

/// Which triangle a [`StirlingTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    /// Signed first kind: coefficients of `(x)_n` in the monomial basis.
    FirstSigned,
    /// Unsigned first kind: coefficients of the rising factorial.
    FirstUnsigned,
    /// Second kind: inverse basis change to the signed first kind.
    Second,
}

impl StirlingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StirlingKind::FirstSigned => "s1",
            StirlingKind::FirstUnsigned => "s1u",
            StirlingKind::Second => "s2",
        }
    }
}

/// Triangular table of Stirling numbers for `0 <= l <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    max_n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Fills the triangle by recurrence, starting from `values(0,0) = 1`.
    pub fn build(kind: StirlingKind, max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        let zero = BigInt::zero();
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::zero(); n + 1];
            for (l, cell) in row.iter_mut().enumerate() {
                let from_lower = if l > 0 { prev[l - 1].clone() } else { BigInt::zero() };
                let prev_same = prev.get(l).unwrap_or(&zero);
                *cell = match kind {
                    // S1(n, l) = S1(n-1, l-1) - (n-1) S1(n-1, l)
                    StirlingKind::FirstSigned => {
                        from_lower - BigInt::from(n - 1) * prev_same
                    }
                    // c(n, l) = c(n-1, l-1) + (n-1) c(n-1, l)
                    StirlingKind::FirstUnsigned => {
                        from_lower + BigInt::from(n - 1) * prev_same
                    }
                    // S2(n, l) = S2(n-1, l-1) + l S2(n-1, l)
                    StirlingKind::Second => from_lower + BigInt::from(l) * prev_same,
                };
            }
            rows.push(row);
        }
        StirlingTable { kind, max_n, rows }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn value(&self, n: usize, l: usize) -> Result<BigInt, CombError> {
        if l > n || n > self.max_n {
            return Err(CombError::IndexOutOfRange { n, l });
        }
        Ok(self.rows[n][l].clone())
    }

    /// CSV triangle: header plus `n,l,value` rows in lexicographic `(n, l)` order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,l,value\n");
        for n in 0..=self.max_n {
            for l in 0..=n {
                let _ = writeln!(out, "{n},{l},{}", self.rows[n][l]);
            }
        }
        out
    }
}

static TABLES: Lazy<Mutex<HashMap<StirlingKind, Arc<StirlingTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Memoized table for `kind`, grown to cover `max_n` on demand.
pub fn stirling_table(kind: StirlingKind, max_n: usize) -> Arc<StirlingTable> {
    let mut tables = TABLES.lock().unwrap();
    let entry = tables.entry(kind);
    let table = entry.or_insert_with(|| Arc::new(StirlingTable::build(kind, max_n)));
    if table.max_n < max_n {
        *table = Arc::new(StirlingTable::build(kind, max_n));
    }
    Arc::clone(table)
}

/// Signed Stirling number of the first kind `S1(n, l)`: the coefficient of
/// `x^l` in the falling factorial `(x)_n`.
pub fn stirling1(n: usize, l: usize) -> Result<BigInt, CombError> {
    stirling_table(StirlingKind::FirstSigned, n).value(n, l)
}

/// Stirling number of the second kind `S2(n, l)`.
pub fn stirling2(n: usize, l: usize) -> Result<BigInt, CombError> {
    stirling_table(StirlingKind::Second, n).value(n, l)
}

/// Unsigned first kind `(-1)^{n-l} S1(n, l)`: the coefficient of `x^l` in the
/// rising factorial.
pub fn stirling1_unsigned(n: usize, l: usize) -> Result<BigInt, CombError> {
    stirling_table(StirlingKind::FirstUnsigned, n).value(n, l)
}

/// Independent route to `S2(n, l)`: extracts `(n!/l!) [t^n] (e^t - 1)^l`.
/// Exists as a cross-check oracle for the recurrence table.
pub fn stirling2_via_series(n: usize, l: usize) -> Result<BigInt, CombError> {
    if l > n {
        return Err(CombError::IndexOutOfRange { n, l });
    }
    let coeff = exp_minus_one(n).pow(l as u32).coeff(n).clone();
    let value = coeff * crate::numeric::Rational::from_integer(factorial(n))
        / crate::numeric::Rational::from_integer(factorial(l));
    debug_assert!(value.is_integer());
    Ok(value.to_integer())
}
