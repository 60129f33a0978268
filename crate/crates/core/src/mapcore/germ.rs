//! Arc germs: arcs known modulo `s^K`, enough to follow base points through
//! infinitely-near points without carrying the full arc.

use num_rational::BigRational;

use crate::exactnum::{Field, Rationals, TruncatedSeries, UniPoly};

use super::formulas::{k_components, k_inv_components, SeriesRing, EXACT_ORDER};
use super::{MapError, MapParams, ParamArc, ProjPoint};

/// An arc germ, normalised so that the first component of valuation zero
/// is identically one. Germs that differ by a unit factor are the same
/// germ, so this form is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcGerm<F: Field> {
    c: [TruncatedSeries<F>; 3],
}

impl<F: Field> ArcGerm<F> {
    /// Divides out the common power of `s` and normalises. Fails with
    /// `ArcCollapse` when all known coefficients vanish.
    pub fn new(c: [TruncatedSeries<F>; 3]) -> Result<Self, MapError> {
        let v = c
            .iter()
            .filter_map(|p| p.valuation())
            .min()
            .ok_or(MapError::ArcCollapse)?;
        let c = c.map(|p| p.shift_down(v).expect("valuation is at least v"));
        let pivot = c
            .iter()
            .position(|p| p.valuation() == Some(0))
            .expect("some component has valuation zero after the shift");
        let inv = c[pivot].inverse().expect("unit");
        let c = c.map(|p| p.mul(&inv));
        if c.iter().any(|p| p.order() == 0) {
            return Err(MapError::PrecisionExhausted);
        }
        Ok(ArcGerm { c })
    }

    pub fn from_arc(arc: &ParamArc<F>, order: usize) -> Result<Self, MapError> {
        Self::new(arc.components().clone().map(|p| TruncatedSeries::from_poly(&p, order)))
    }

    pub fn components(&self) -> &[TruncatedSeries<F>; 3] {
        &self.c
    }

    /// Smallest truncation order among the components.
    pub fn precision(&self) -> usize {
        self.c.iter().map(|p| p.order()).min().unwrap()
    }

    fn embedded(&self, params: &MapParams) -> Result<(SeriesRing<F>, Vec<TruncatedSeries<F>>), MapError> {
        let field = self.c[0].field().clone();
        let a = params
            .coeffs_in(&field)?
            .into_iter()
            .map(|c| TruncatedSeries::constant(field.clone(), c, EXACT_ORDER))
            .collect();
        Ok((SeriesRing { field, order: self.precision() }, a))
    }

    /// Image germ under `k`.
    pub fn push(&self, params: &MapParams) -> Result<Self, MapError> {
        let (ring, a) = self.embedded(params)?;
        Self::new(k_components(&ring, &a, &self.c))
    }

    /// Image germ under `k^{-1}`.
    pub fn pull(&self, params: &MapParams) -> Result<Self, MapError> {
        let (ring, a) = self.embedded(params)?;
        Self::new(k_inv_components(&ring, &a, &self.c))
    }

    /// The germ as a polynomial arc (its truncation).
    pub fn truncation(&self) -> [UniPoly<F>; 3] {
        self.c.clone().map(|p| p.to_poly())
    }
}

impl ArcGerm<Rationals> {
    pub fn base_point(&self) -> ProjPoint {
        let c: [BigRational; 3] = self.c.clone().map(|p| p.coeff(0));
        ProjPoint::new(c).expect("normalised germ has a unit component")
    }
}
