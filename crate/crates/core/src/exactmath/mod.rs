//! Exact rational and integer linear algebra.
//!
//! Everything here is arbitrary precision. Boundary operators live in
//! [`IntMatrix`] and are diagonalised by [`smith_normal_form`]; linear
//! inequality systems `a·x ≥ b` over the rationals are decided by the exact
//! simplex routine [`feasible_weak`], with [`fourier_motzkin_feasible`] kept
//! as an independent second decider for small systems.

mod fourier_motzkin;
mod matrix;
mod simplex;
mod snf;

pub use fourier_motzkin::{fourier_motzkin_feasible, FM_MAX_VARS};
pub use matrix::{dot, is_zero_vector, primitive_integer_vector, IntMatrix, RationalMatrix};
pub use simplex::{feasible_weak, satisfies_weak};
pub use snf::{kernel_rank, smith_normal_form, smith_normal_form_verbose, SnfCertificate, SnfResult};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Dense vector of rationals.
pub type RationalVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(xs: &[i64]) -> RationalVector {
    xs.iter().map(|&x| rat(x)).collect()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed: std::result::Result<Rational, _> = t.parse();
    match parsed {
        Ok(r) => Ok(r),
        Err(_) => Err(Error::invalid(format!("malformed rational {s:?}"))),
    }
}

/// Canonical `"p/q"` rendering (`"p"` when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}
