//! Laurent series in `s` with tracked absolute precision, just enough to
//! take limits of rational functions of an arc parameter at `s = 0`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactnum::{QPoly, Rationals, TruncatedSeries};

#[derive(Clone, Debug)]
pub(crate) enum Laurent {
    /// Zero modulo `s^prec`.
    Zero { prec: i64 },
    /// `s^val * unit`, with `unit(0) != 0`.
    Unit { val: i64, unit: TruncatedSeries<Rationals> },
}

/// Not enough terms to decide; the caller retries with more.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

impl Laurent {
    pub(crate) fn from_poly(p: &QPoly, order: usize) -> Self {
        match p.valuation() {
            None => Laurent::Zero { prec: i64::MAX / 4 },
            Some(v) => {
                let unit = TruncatedSeries::from_poly(&p.shift_down(v), order);
                Laurent::Unit { val: v as i64, unit }
            }
        }
    }

    pub(crate) fn constant(c: &BigRational, order: usize) -> Self {
        if c.is_zero() {
            Laurent::Zero { prec: i64::MAX / 4 }
        } else {
            Laurent::Unit { val: 0, unit: TruncatedSeries::constant(Rationals, c.clone(), order) }
        }
    }

    pub(crate) fn valuation(&self) -> Result<i64, Exhausted> {
        match self {
            Laurent::Unit { val, .. } => Ok(*val),
            Laurent::Zero { .. } => Err(Exhausted),
        }
    }

    fn prec(&self) -> i64 {
        match self {
            Laurent::Zero { prec } => *prec,
            Laurent::Unit { val, unit } => val + unit.order() as i64,
        }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Laurent::Unit { val: a, unit: u }, Laurent::Unit { val: b, unit: w }) => {
                Laurent::Unit { val: a + b, unit: u.mul(w) }
            }
            (Laurent::Zero { prec }, Laurent::Unit { val, .. })
            | (Laurent::Unit { val, .. }, Laurent::Zero { prec }) => {
                Laurent::Zero { prec: prec + val }
            }
            (Laurent::Zero { prec: p }, Laurent::Zero { prec: q }) => Laurent::Zero { prec: p + q },
        }
    }

    pub(crate) fn inv(&self) -> Result<Self, Exhausted> {
        match self {
            Laurent::Unit { val, unit } => Ok(Laurent::Unit {
                val: -val,
                unit: unit.inverse().expect("unit has nonzero constant term"),
            }),
            Laurent::Zero { .. } => Err(Exhausted),
        }
    }

    pub(crate) fn div(&self, other: &Self) -> Result<Self, Exhausted> {
        Ok(self.mul(&other.inv()?))
    }

    pub(crate) fn pow(&self, k: usize) -> Self {
        let order = match self {
            Laurent::Unit { unit, .. } => unit.order(),
            Laurent::Zero { .. } => 1,
        };
        let mut acc = Laurent::constant(&BigRational::from_integer(1.into()), order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        let prec = self.prec().min(other.prec());
        let lo = match (self.valuation(), other.valuation()) {
            (Ok(a), Ok(b)) => a.min(b),
            (Ok(a), Err(_)) | (Err(_), Ok(a)) => a,
            (Err(_), Err(_)) => return Laurent::Zero { prec },
        };
        if lo >= prec {
            return Laurent::Zero { prec };
        }
        let len = (prec - lo) as usize;
        let mut c = vec![BigRational::zero(); len];
        let mut put = |x: &Self, sign: bool| {
            if let Laurent::Unit { val, unit } = x {
                let off = (val - lo) as usize;
                for (i, v) in unit.coeffs().iter().enumerate() {
                    if off + i < len {
                        if sign {
                            c[off + i] += v;
                        } else {
                            c[off + i] -= v;
                        }
                    }
                }
            }
        };
        put(self, true);
        put(other, false);
        match c.iter().position(|v| !v.is_zero()) {
            None => Laurent::Zero { prec },
            Some(k) => {
                let rest = c.split_off(k);
                let order = rest.len();
                Laurent::Unit { val: lo + k as i64, unit: TruncatedSeries::new(Rationals, rest, order) }
            }
        }
    }

    /// Value at `s = 0`: `Ok(None)` for a pole.
    pub(crate) fn limit(&self) -> Result<Option<BigRational>, Exhausted> {
        match self {
            Laurent::Zero { prec } if *prec > 0 => Ok(Some(BigRational::zero())),
            Laurent::Zero { .. } => Err(Exhausted),
            Laurent::Unit { val, .. } if *val > 0 => Ok(Some(BigRational::zero())),
            Laurent::Unit { val, unit } if *val == 0 => Ok(Some(unit.coeff(0))),
            Laurent::Unit { .. } => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn limit_of_ratio() {
        // (2s + s^2) / (s - s^3) -> 2
        let n = QPoly::from_i64s(Rationals, &[0, 2, 1]);
        let d = QPoly::from_i64s(Rationals, &[0, 1, 0, -1]);
        let q = Laurent::from_poly(&n, 8).div(&Laurent::from_poly(&d, 8)).unwrap();
        assert_eq!(q.limit().unwrap(), Some(rat(2, 1)));
    }

    #[test]
    fn cancellation_then_division() {
        // ((1 + 3s^2) - 1) / s^2 -> 3
        let a = Laurent::from_poly(&QPoly::from_i64s(Rationals, &[1, 0, 3]), 8);
        let one = Laurent::constant(&rat(1, 1), 8);
        let s2 = Laurent::from_poly(&QPoly::from_i64s(Rationals, &[0, 0, 1]), 8);
        let q = a.sub(&one).div(&s2).unwrap();
        assert_eq!(q.limit().unwrap(), Some(rat(3, 1)));
        let pole = one.div(&s2).unwrap();
        assert_eq!(pole.limit().unwrap(), None);
    }
}
