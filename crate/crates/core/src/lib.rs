//! Exact computation of Boole, Changhee and higher-order Euler polynomial
//! sequences over arbitrary-precision rationals, with symbolic and p-adic
//! verification of the identities relating them.
//!
//! Everything is exact: polynomial coefficients are big rationals, formal
//! power series are truncated but never rounded, and the p-adic layer works
//! in residues mod `p^M`. The [`verify`] module runs the identity suite;
//! [`boole`] and [`euler`] hold the polynomial families themselves, each
//! constructed by two independent routes that the tests play against each
//! other.

pub mod boole;
pub mod comb;
pub mod euler;
pub mod numeric;
pub mod padic;
pub mod series;
pub mod verify;

pub use boole::{
    boole_polys_euler, boole_polys_gf, changhee_poly, BooleError, BooleKind, BooleParams,
    BooleSequence,
};
pub use comb::{
    stirling1, stirling1_unsigned, stirling2, stirling2_via_series, stirling_table, CombError,
    StirlingKind, StirlingTable,
};
pub use euler::{euler_polys, euler_value, fermionic_moment, integrate_poly, EulerSequence};
pub use numeric::{format_rational, parse_rational, Poly, Rational};
pub use padic::{
    embed_rational, fermionic_sum, fermionic_sum_multi, term_budget, witt_check, CongruenceReport,
    PadicContext, PadicError, PadicInt,
};
pub use series::{binomial_series, binomial_series_symbolic, exp_minus_one, Series, SeriesError};
pub use verify::{
    verify_all, verify_identity, CaseStatus, IdentityId, VerificationCase, VerificationReport,
    VerifyConfig,
};
