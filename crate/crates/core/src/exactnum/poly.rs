//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Field, Ring};

pub(crate) fn trim<F: Ring>(f: &F, v: &mut Vec<F::Elem>) {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
}

pub(crate) fn schoolbook_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub(crate) fn schoolbook_divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = f.inv(b.last().unwrap()).expect("leading coefficient is nonzero");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![f.zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let c = f.mul(&rem[k + db], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, bj));
        }
        quo[k] = c;
    }
    rem.truncate(db);
    trim(f, &mut rem);
    trim(f, &mut quo);
    (quo, rem)
}

pub(crate) fn make_monic<F: Field>(f: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    if let Some(lc) = v.last().cloned() {
        let inv = f.inv(&lc).expect("nonzero leading coefficient");
        for c in v.iter_mut() {
            *c = f.mul(c, &inv);
        }
    }
    v
}

pub(crate) fn euclid_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let (_, r) = f.poly_divrem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    make_monic(f, a)
}

/// A dense polynomial with coefficients stored lowest degree first.
///
/// The coefficient vector never has trailing zeros, so structural equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        trim(&field, &mut coeffs);
        UniPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let c = field.one();
        UniPoly { field, coeffs: vec![c] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut v = vec![field.zero(); k];
        v.push(c);
        Self::new(field, v)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    pub fn from_i64s(field: F, cs: &[i64]) -> Self {
        let v = cs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, v)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field.clone(), coeffs: v }
    }

    /// Division by `x^k`, discarding the low coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        let v = self.coeffs.iter().skip(k).cloned().collect();
        UniPoly { field: self.field.clone(), coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let (q, r) = self.field.poly_divrem(&self.coeffs, &d.coeffs);
        (
            UniPoly { field: self.field.clone(), coeffs: q },
            UniPoly { field: self.field.clone(), coeffs: r },
        )
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let q = self.field.poly_div_exact(&self.coeffs, &d.coeffs)?;
        Some(UniPoly { field: self.field.clone(), coeffs: q })
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.divrem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        UniPoly {
            field: self.field.clone(),
            coeffs: self.field.poly_gcd(&self.coeffs, &other.coeffs),
        }
    }

    pub fn monic(&self) -> Self {
        UniPoly {
            field: self.field.clone(),
            coeffs: make_monic(&self.field, self.coeffs.clone()),
        }
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
        Self::new(f.clone(), v)
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(self.field.clone(), c.clone());
        }
        acc
    }

    /// Reduce coefficients into another field.
    pub fn map_field<G: Field>(&self, g: G, conv: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        let v = self.coeffs.iter().map(conv).collect();
        UniPoly::new(g, v)
    }
}

impl UniPoly<super::Rationals> {
    pub fn from_bigints(cs: &[BigInt]) -> Self {
        let v = cs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        UniPoly::new(super::Rationals, v)
    }

    pub fn from_rationals(cs: &[BigRational]) -> Self {
        UniPoly::new(super::Rationals, cs.to_vec())
    }

    /// Integer coefficients, if all coefficients are integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "UniPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for UniPoly<super::Rationals> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{One, Signed, Zero};
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(fm, "-")?;
                }
            } else {
                write!(fm, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(fm, "{a}")?;
                if i > 0 {
                    write!(fm, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(fm, "x")?,
                _ => write!(fm, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect();
        UniPoly::new(f.clone(), v)
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        UniPoly::new(f.clone(), v)
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        UniPoly {
            field: self.field.clone(),
            coeffs: self.field.poly_mul(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        let f = &self.field;
        UniPoly { field: f.clone(), coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: UniPoly<F>) -> UniPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
