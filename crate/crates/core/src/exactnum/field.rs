//! Coefficient rings used throughout the crate.
//!
//! Elements are plain values; the ring object carries whatever context the
//! arithmetic needs (nothing for the rationals, the modulus and Montgomery
//! constants for a prime field). Polynomial kernels live on [`Field`] so
//! that each coefficient domain can swap in a faster algorithm.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{gcd, poly};

/// A commutative ring with identity.
pub trait Ring: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A field, plus the dense-polynomial kernels specialised per field.
///
/// Polynomial slices are little-endian coefficient lists without trailing
/// zeros; the empty slice is the zero polynomial.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Image of a rational number, or `None` when its denominator is not
    /// invertible in this field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn poly_mul(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        poly::schoolbook_mul(self, a, b)
    }

    /// Quotient and remainder; `b` must be nonzero.
    fn poly_divrem(
        &self,
        a: &[Self::Elem],
        b: &[Self::Elem],
    ) -> (Vec<Self::Elem>, Vec<Self::Elem>) {
        poly::schoolbook_divrem(self, a, b)
    }

    /// `a / b` when `b` divides `a`; `b` must be nonzero.
    fn poly_div_exact(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        let (q, r) = self.poly_divrem(a, b);
        r.is_empty().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    fn poly_gcd(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        poly::euclid_gcd(self, a, b)
    }
}

/// The field of rational numbers over arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }

    // Products and exact quotients run on primitive integer parts, so each
    // output coefficient is normalised once.
    fn poly_mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let (ca, pa) = gcd::split_content(a);
        let (cb, pb) = gcd::split_content(b);
        let c = ca * cb;
        gcd::int_mul(&pa, &pb).into_iter().map(|x| &c * x).collect()
    }

    fn poly_div_exact(&self, a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
        if a.is_empty() {
            return Some(Vec::new());
        }
        let (ca, pa) = gcd::split_content(a);
        let (cb, pb) = gcd::split_content(b);
        let c = ca / cb;
        let q = gcd::exact_quotient(&pa, &pb)?;
        Some(q.into_iter().map(|x| &c * x).collect())
    }

    fn poly_gcd(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        gcd::rational_gcd(a, b)
    }
}

/// Sign of a rational as -1, 0, 1.
pub(crate) fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
