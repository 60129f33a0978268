//! Power series known modulo `s^order`.

use super::field::Field;
use super::poly::{trim, UniPoly};
use super::ExactError;

/// A power series `sum c_i s^i` whose coefficients are known below `order`.
///
/// Results of arithmetic carry the largest order that the inputs determine,
/// so precision loss is tracked rather than silently ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
    order: usize,
}

impl<F: Field> TruncatedSeries<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>, order: usize) -> Self {
        coeffs.truncate(order);
        trim(&field, &mut coeffs);
        TruncatedSeries { field, coeffs, order }
    }

    pub fn from_poly(p: &UniPoly<F>, order: usize) -> Self {
        Self::new(p.field().clone(), p.coeffs().to_vec(), order)
    }

    pub fn constant(field: F, c: F::Elem, order: usize) -> Self {
        Self::new(field, vec![c], order)
    }

    pub fn zero(field: F, order: usize) -> Self {
        Self::new(field, Vec::new(), order)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        assert!(i < self.order, "coefficient {i} beyond known order {}", self.order);
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the lowest known nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn to_poly(&self) -> UniPoly<F> {
        UniPoly::new(self.field.clone(), self.coeffs.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.field.clone(), self.coeffs.clone(), order.min(self.order))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let order = self.order.min(other.order);
        let v = (0..order.min(self.coeffs.len().max(other.coeffs.len())))
            .map(|i| f.add(&self.get(i), &other.get(i)))
            .collect();
        Self::new(f.clone(), v, order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect(), self.order)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|x| f.mul(x, c)).collect(), self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.order);
        let vb = other.valuation().unwrap_or(other.order);
        let order = (self.order + vb).min(other.order + va);
        let prod = self.field.poly_mul(&self.coeffs, &other.coeffs);
        Self::new(self.field.clone(), prod, order)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let f = &self.field;
        if self.order == 0 || self.coeffs.is_empty() || f.is_zero(&self.coeffs[0]) {
            return Err(ExactError::NonInvertibleSeries);
        }
        let c0inv = f.inv(&self.coeffs[0]).expect("nonzero");
        let n = self.order;
        let mut out = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for k in 1..n {
            let mut acc = f.zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = f.add(&acc, &f.mul(&self.coeffs[j], &out[k - j]));
            }
            out.push(f.neg(&f.mul(&acc, &c0inv)));
        }
        Ok(Self::new(f.clone(), out, n))
    }

    /// `self / other`, allowing `other` to have positive valuation as long
    /// as `self` vanishes to at least the same order.
    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        let v = other.valuation().ok_or(ExactError::NonInvertibleSeries)?;
        let num = self.shift_down(v)?;
        let den = other.shift_down(v)?;
        Ok(num.mul(&den.inverse()?))
    }

    /// Division by `s^k`; fails if a known coefficient below `k` is nonzero.
    pub fn shift_down(&self, k: usize) -> Result<Self, ExactError> {
        if self.valuation().is_some_and(|v| v < k) {
            return Err(ExactError::NonInvertibleSeries);
        }
        let v = self.coeffs.iter().skip(k).cloned().collect();
        Ok(Self::new(self.field.clone(), v, self.order.saturating_sub(k)))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.field.clone(), v, self.order + k)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Self::new(f.clone(), v, self.order.saturating_sub(1))
    }

    fn get(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }
}
