//! Exact arithmetic: rationals, prime fields, dense polynomials, truncated
//! series, integer matrices and real root isolation.

mod field;
pub mod gcd;
pub mod linalg;
mod matrix;
mod poly;
mod prime;
mod roots;
mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use field::{Field, Ring, Rationals};
pub use matrix::IntMatrix;
pub use poly::UniPoly;
pub use prime::{is_prime_u64, PrimeField, PrimeFieldElem, DEFAULT_PRIME, NTT_PRIMES};
pub use roots::{
    count_real_roots, default_width, largest_real_root, simplest_rational_between,
    RationalInterval,
};
pub use series::TruncatedSeries;

/// Rational polynomial, the common case.
pub type QPoly = UniPoly<Rationals>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("the zero polynomial has no roots to isolate")]
    ZeroPolynomial,
    #[error("series is not invertible (zero constant term)")]
    NonInvertibleSeries,
    #[error("{0} is not an odd prime below 2^62")]
    BadModulus(u64),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// `p/q` as a rational; panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    let err = || ExactError::Parse(s.to_string());
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d == BigInt::from(0) {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{ip}{fp}");
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let d = BigInt::from(10u32).pow(fp.len() as u32);
        return Ok(BigRational::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
