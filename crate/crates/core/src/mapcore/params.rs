use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exactnum::{Field, QPoly, UniPoly};

use super::MapError;

/// The polynomial `F(z) = a_0 + a_1 z + ... + a_n z^n` that selects a map
/// of the family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapParams {
    a: Vec<BigRational>,
}

impl MapParams {
    /// Coefficients `a_0..a_n`, lowest degree first. Requires `n >= 2` and
    /// `a_n != 0`.
    pub fn new(a: Vec<BigRational>) -> Result<Self, MapError> {
        if a.len() < 3 {
            return Err(MapError::InvalidParams(format!(
                "need degree n >= 2, got {} coefficients",
                a.len()
            )));
        }
        if a.last().unwrap().is_zero() {
            return Err(MapError::InvalidParams("leading coefficient a_n is zero".into()));
        }
        Ok(MapParams { a })
    }

    pub fn from_i64s(a: &[i64]) -> Result<Self, MapError> {
        Self::new(a.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    /// `a_j`, with `a_j = 0` for `j > n`.
    pub fn a(&self, j: usize) -> BigRational {
        self.a.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.a
    }

    pub fn f_poly(&self) -> QPoly {
        UniPoly::from_rationals(&self.a)
    }

    pub fn eval_f(&self, z: &BigRational) -> BigRational {
        self.f_poly().eval(z)
    }

    /// Same polynomial with `a_j` replaced.
    pub fn with_coeff(&self, j: usize, v: BigRational) -> Result<Self, MapError> {
        let mut a = self.a.clone();
        a[j] = v;
        Self::new(a)
    }

    /// Coefficients reduced into `field`; fails if a denominator vanishes.
    pub fn coeffs_in<F: Field>(&self, field: &F) -> Result<Vec<F::Elem>, MapError> {
        self.a
            .iter()
            .map(|c| field.from_rational(c).ok_or(MapError::BadReduction))
            .collect()
    }
}
