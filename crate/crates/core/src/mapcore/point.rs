use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MapError;

/// A point of the projective plane with coprime integer coordinates whose
/// first nonzero entry is positive, so that equal points compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    c: [BigInt; 3],
}

impl ProjPoint {
    pub fn new(coords: [BigRational; 3]) -> Result<Self, MapError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(MapError::ZeroPoint);
        }
        let l = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = coords.map(|c| c.numer() * (&l / c.denom()));
        Ok(Self::from_ints(ints))
    }

    fn from_ints(mut c: [BigInt; 3]) -> Self {
        let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let first = c.iter().find(|x| !x.is_zero()).expect("nonzero point");
        let scale = if first.sign() == Sign::Minus { -g } else { g };
        for x in c.iter_mut() {
            *x = &*x / &scale;
        }
        ProjPoint { c }
    }

    pub fn from_bigints(c: [BigInt; 3]) -> Result<Self, MapError> {
        if c.iter().all(|x| x.is_zero()) {
            return Err(MapError::ZeroPoint);
        }
        Ok(Self::from_ints(c))
    }

    pub fn from_i64(x0: i64, x1: i64, x2: i64) -> Result<Self, MapError> {
        Self::from_bigints([x0.into(), x1.into(), x2.into()])
    }

    /// `[1 : x : y]`.
    pub fn affine(x: &BigRational, y: &BigRational) -> Self {
        Self::new([BigRational::one(), x.clone(), y.clone()]).expect("affine point is nonzero")
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.c
    }

    pub fn rational_coords(&self) -> [BigRational; 3] {
        self.c.clone().map(BigRational::from_integer)
    }

    /// `(x_1/x_0, x_2/x_0)` when `x_0 != 0`.
    pub fn to_affine(&self) -> Option<(BigRational, BigRational)> {
        if self.c[0].is_zero() {
            return None;
        }
        Some((
            BigRational::new(self.c[1].clone(), self.c[0].clone()),
            BigRational::new(self.c[2].clone(), self.c[0].clone()),
        ))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.c[0], self.c[1], self.c[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of applying the map at a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointImage {
    Point(ProjPoint),
    Indeterminate,
}

impl PointImage {
    pub fn point(&self) -> Option<&ProjPoint> {
        match self {
            PointImage::Point(p) => Some(p),
            PointImage::Indeterminate => None,
        }
    }
}

impl fmt::Display for PointImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointImage::Point(p) => write!(f, "{p}"),
            PointImage::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Named points that recur in the family.
pub mod special {
    use super::ProjPoint;

    /// `[0:1:0]`
    pub fn e1() -> ProjPoint {
        ProjPoint::from_i64(0, 1, 0).unwrap()
    }
    /// `[0:0:1]`
    pub fn e2() -> ProjPoint {
        ProjPoint::from_i64(0, 0, 1).unwrap()
    }
    /// `[1:1:0]`
    pub fn e01() -> ProjPoint {
        ProjPoint::from_i64(1, 1, 0).unwrap()
    }
}
