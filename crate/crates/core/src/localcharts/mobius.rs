use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LocalError;
use crate::exactnum::{format_rational, linalg};

/// `u -> (a u + b) / (c u + d)`, stored as `[[a, b], [c, d]]` and compared up
/// to scale.
#[derive(Clone, Debug)]
pub struct MobiusMap {
    m: [[BigRational; 2]; 2],
}

impl MobiusMap {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self, LocalError> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(LocalError::DegenerateSamples);
        }
        Ok(MobiusMap { m: [[a, b], [c, d]] }.normalized())
    }

    pub fn identity() -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        MobiusMap { m: [[o.clone(), z.clone()], [z, o]] }
    }

    /// Scaled so that the first nonzero entry in reading order is 1.
    fn normalized(self) -> Self {
        let [[a, b], [c, d]] = self.m;
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).cloned().expect("invertible");
        MobiusMap { m: [[a / &lead, b / &lead], [c / &lead, d / &lead]] }
    }

    pub fn matrix(&self) -> &[[BigRational; 2]; 2] {
        &self.m
    }

    /// `None` at the pole.
    pub fn apply(&self, u: &BigRational) -> Option<BigRational> {
        let [[a, b], [c, d]] = &self.m;
        let den = c * u + d;
        (!den.is_zero()).then(|| (a * u + b) / den)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &MobiusMap) -> MobiusMap {
        let [[a, b], [c, d]] = &self.m;
        let [[e, f], [g, h]] = &first.m;
        MobiusMap {
            m: [[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]],
        }
        .normalized()
    }
}

impl PartialEq for MobiusMap {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl Eq for MobiusMap {}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            format_rational(a),
            format_rational(b),
            format_rational(c),
            format_rational(d)
        )
    }
}

/// The Möbius map through three samples `(u, v)`; `v = None` stands for
/// infinity.
pub fn mobius_reconstruct(samples: &[(BigRational, Option<BigRational>); 3]) -> Result<MobiusMap, LocalError> {
    // a u + b - v c u - v d = 0, or c u + d = 0 at infinity.
    let rows: Vec<Vec<BigRational>> = samples
        .iter()
        .map(|(u, v)| match v {
            Some(v) => vec![u.clone(), BigRational::one(), -(v * u), -v.clone()],
            None => vec![BigRational::zero(), BigRational::zero(), u.clone(), BigRational::one()],
        })
        .collect();
    let null = linalg::nullspace(&rows, 4);
    if null.len() != 1 {
        return Err(LocalError::DegenerateSamples);
    }
    let v = &null[0];
    MobiusMap::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
}
