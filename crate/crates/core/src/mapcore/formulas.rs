//! Homogeneous components of `k` and `k^{-1}`, written once over any ring
//! so that points, polynomial arcs and truncated germs share one formula.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{Field, Rationals, Ring, TruncatedSeries, UniPoly};

use super::{MapError, MapParams, PointImage, ProjPoint};

/// Polynomials over a field, viewed as a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field>(pub F);

impl<F: Field> Ring for PolyRing<F> {
    type Elem = UniPoly<F>;
    fn zero(&self) -> UniPoly<F> {
        UniPoly::zero(self.0.clone())
    }
    fn one(&self) -> UniPoly<F> {
        UniPoly::one(self.0.clone())
    }
    fn is_zero(&self, a: &UniPoly<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a + b
    }
    fn sub(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a - b
    }
    fn mul(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        if a.degree() == Some(0) {
            return b.scale(&a.coeffs()[0]);
        }
        if b.degree() == Some(0) {
            return a.scale(&b.coeffs()[0]);
        }
        a * b
    }
    fn neg(&self, a: &UniPoly<F>) -> UniPoly<F> {
        -a
    }
    fn from_i64(&self, v: i64) -> UniPoly<F> {
        UniPoly::constant(self.0.clone(), self.0.from_i64(v))
    }
}

/// Truncation order used for constants, which are known exactly.
pub const EXACT_ORDER: usize = usize::MAX / 4;

/// Power series known modulo `s^order`, viewed as a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRing<F: Field> {
    pub field: F,
    pub order: usize,
}

impl<F: Field> Ring for SeriesRing<F> {
    type Elem = TruncatedSeries<F>;
    fn zero(&self) -> TruncatedSeries<F> {
        TruncatedSeries::zero(self.field.clone(), self.order)
    }
    fn one(&self) -> TruncatedSeries<F> {
        TruncatedSeries::constant(self.field.clone(), self.field.one(), EXACT_ORDER)
    }
    fn is_zero(&self, a: &TruncatedSeries<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &TruncatedSeries<F>, b: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        a.add(b)
    }
    fn sub(&self, a: &TruncatedSeries<F>, b: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        a.sub(b)
    }
    fn mul(&self, a: &TruncatedSeries<F>, b: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        a.mul(b)
    }
    fn neg(&self, a: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        a.neg()
    }
    fn from_i64(&self, v: i64) -> TruncatedSeries<F> {
        TruncatedSeries::constant(self.field.clone(), self.field.from_i64(v), EXACT_ORDER)
    }
}

/// `(k_0, k_1, k_2)` with `P = x_0(x_1-x_0)`, `V = x_0^2 - x_0 x_1 - x_1 x_2`:
///
/// ```text
/// k_0 = x_2 P^n
/// k_1 = P^{n-1} (x_1-x_0)^2 (x_0+x_2) + x_2 * sum_j a_j V^j P^{n-j}
/// k_2 = x_2 V P^{n-1}
/// ```
///
/// `a` holds the coefficients of `F` already embedded in the ring.
pub fn k_components<R: Ring>(r: &R, a: &[R::Elem], x: &[R::Elem; 3]) -> [R::Elem; 3] {
    let n = a.len() - 1;
    let [x0, x1, x2] = x;
    let d = r.sub(x1, x0);
    let p = r.mul(x0, &d);
    let v = r.sub(&r.mul(x0, &r.sub(x0, x1)), &r.mul(x1, x2));
    let mut ppow = vec![r.one()];
    for i in 0..n {
        let next = r.mul(&ppow[i], &p);
        ppow.push(next);
    }
    let mut s = a[n].clone();
    for j in (0..n).rev() {
        s = r.add(&r.mul(&s, &v), &r.mul(&a[j], &ppow[n - j]));
    }
    let k0 = r.mul(x2, &ppow[n]);
    let head = r.mul(&r.mul(&ppow[n - 1], &r.mul(&d, &d)), &r.add(x0, x2));
    let k1 = r.add(&head, &r.mul(x2, &s));
    let k2 = r.mul(&r.mul(x2, &v), &ppow[n - 1]);
    [k0, k1, k2]
}

/// Components of `k^{-1}`, with `G = sum_j a_j x_2^j x_0^{n-j}` and
/// `U = x_0^{n-1}(x_0+x_1) - G`:
///
/// ```text
/// k^{-1}_0 = x_0^n x_2 U
/// k^{-1}_1 = U^2 (x_0 + x_2)
/// k^{-1}_2 = x_0^{n-1} x_2 (x_2 x_0^n - (x_0 + x_2) U)
/// ```
pub fn k_inv_components<R: Ring>(r: &R, a: &[R::Elem], x: &[R::Elem; 3]) -> [R::Elem; 3] {
    let n = a.len() - 1;
    let [x0, x1, x2] = x;
    let mut x0pow = vec![r.one()];
    for i in 0..n {
        let next = r.mul(&x0pow[i], x0);
        x0pow.push(next);
    }
    let mut g = a[n].clone();
    for j in (0..n).rev() {
        g = r.add(&r.mul(&g, x2), &r.mul(&a[j], &x0pow[n - j]));
    }
    let u = r.sub(&r.mul(&x0pow[n - 1], &r.add(x0, x1)), &g);
    let s = r.add(x0, x2);
    let c0 = r.mul(&r.mul(&x0pow[n], x2), &u);
    let c1 = r.mul(&r.mul(&u, &u), &s);
    let inner = r.sub(&r.mul(x2, &x0pow[n]), &r.mul(&s, &u));
    let c2 = r.mul(&r.mul(&x0pow[n - 1], x2), &inner);
    [c0, c1, c2]
}

fn image(c: [BigRational; 3]) -> PointImage {
    match ProjPoint::new(c) {
        Ok(p) => PointImage::Point(p),
        Err(_) => PointImage::Indeterminate,
    }
}

/// `k(p)`.
pub fn eval_k(params: &MapParams, p: &ProjPoint) -> PointImage {
    image(k_components(&Rationals, params.coeffs(), &p.rational_coords()))
}

/// `k^{-1}(p)`.
pub fn eval_k_inv(params: &MapParams, p: &ProjPoint) -> PointImage {
    image(k_inv_components(&Rationals, params.coeffs(), &p.rational_coords()))
}

/// `i(x, y) = (1 - x - (x-1)/y, -y - 1 - y/(x-1))`.
pub fn involution_i(
    x: &BigRational,
    y: &BigRational,
) -> Result<(BigRational, BigRational), MapError> {
    let one = BigRational::one();
    let xm1 = x - &one;
    if y.is_zero() || xm1.is_zero() {
        return Err(MapError::Domain);
    }
    let nx = &one - x - &xm1 / y;
    let ny = -y - &one - y / &xm1;
    Ok((nx, ny))
}

/// `j_F(x, y) = (-x + F(y), y)`.
pub fn involution_j(params: &MapParams, x: &BigRational, y: &BigRational) -> (BigRational, BigRational) {
    (-x + params.eval_f(y), y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn components_have_degree_2n_plus_1() {
        let params = MapParams::from_i64s(&[5, 0, 1]).unwrap();
        let ring = PolyRing(Rationals);
        let a: Vec<_> = params.coeffs().iter().map(|c| UniPoly::constant(Rationals, c.clone())).collect();
        let line = [
            UniPoly::from_i64s(Rationals, &[1, 1]),
            UniPoly::from_i64s(Rationals, &[2, 3]),
            UniPoly::from_i64s(Rationals, &[5, 2]),
        ];
        for c in k_components(&ring, &a, &line) {
            assert_eq!(c.degree(), Some(5));
        }
        for c in k_inv_components(&ring, &a, &line) {
            assert_eq!(c.degree(), Some(5));
        }
    }

    #[test]
    fn indeterminacy_points() {
        let params = MapParams::from_i64s(&[2, 1, 1, 1]).unwrap();
        for p in [(0, 1, 0), (0, 0, 1), (1, 1, 0)] {
            let pt = ProjPoint::from_i64(p.0, p.1, p.2).unwrap();
            assert_eq!(eval_k(&params, &pt), PointImage::Indeterminate);
        }
        let pt = ProjPoint::from_i64(3, 1, 7).unwrap();
        assert!(matches!(eval_k(&params, &pt), PointImage::Point(_)));
    }

    #[test]
    fn curve_c4_collapses() {
        let params = MapParams::new(vec![rat(7, 3), rat(1, 1), rat(-2, 1)]).unwrap();
        let pt = ProjPoint::from_i64(2, 1, 2).unwrap();
        let expect = ProjPoint::new([rat(1, 1), rat(4, 3), rat(0, 1)]).unwrap();
        assert_eq!(eval_k(&params, &pt), PointImage::Point(expect));
    }

    #[test]
    fn involutions_reject_their_poles() {
        assert_eq!(involution_i(&rat(1, 1), &rat(2, 1)), Err(MapError::Domain));
        assert_eq!(involution_i(&rat(3, 1), &rat(0, 1)), Err(MapError::Domain));
    }
}
