use crate::exactnum::{Field, Rationals, UniPoly};

use super::formulas::{k_components, k_inv_components, PolyRing};
use super::{MapError, MapParams, ProjPoint};

/// A parametrised curve `s -> [X_0(s) : X_1(s) : X_2(s)]` with coprime
/// components, scaled so the first nonzero component is monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamArc<F: Field> {
    c: [UniPoly<F>; 3],
}

impl<F: Field> ParamArc<F> {
    /// Clears the common factor of the components and normalises.
    pub fn new(c: [UniPoly<F>; 3]) -> Result<Self, MapError> {
        if c.iter().all(|p| p.is_zero()) {
            return Err(MapError::ArcCollapse);
        }
        let mut g = c[0].gcd(&c[1]);
        if g.degree() != Some(0) {
            g = g.gcd(&c[2]);
        }
        let mut c = if g.degree() == Some(0) {
            c
        } else {
            c.map(|p| p.div_exact(&g).expect("gcd divides every component"))
        };
        let lead = c.iter().find(|p| !p.is_zero()).unwrap().leading().unwrap().clone();
        let field = c[0].field().clone();
        let inv = field.inv(&lead).expect("nonzero leading coefficient");
        if !field.is_one(&inv) {
            c = c.map(|p| p.scale(&inv));
        }
        Ok(ParamArc { c })
    }

    /// The line through two points given by coordinate vectors.
    pub fn line(field: F, p: &[F::Elem; 3], q: &[F::Elem; 3]) -> Result<Self, MapError> {
        let c = [0, 1, 2].map(|i| UniPoly::new(field.clone(), vec![p[i].clone(), q[i].clone()]));
        Self::new(c)
    }

    pub fn components(&self) -> &[UniPoly<F>; 3] {
        &self.c
    }

    pub fn field(&self) -> &F {
        self.c[0].field()
    }

    /// Largest component degree.
    pub fn degree(&self) -> usize {
        self.c.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    fn embedded_coeffs(&self, params: &MapParams) -> Result<Vec<UniPoly<F>>, MapError> {
        let field = self.field().clone();
        Ok(params
            .coeffs_in(&field)?
            .into_iter()
            .map(|c| UniPoly::constant(field.clone(), c))
            .collect())
    }
}

impl ParamArc<Rationals> {
    /// The point at `s = 0`.
    pub fn base_point(&self) -> ProjPoint {
        ProjPoint::new(self.c.clone().map(|p| p.coeff(0)))
            .expect("coprime components do not all vanish at s = 0")
    }
}

/// Image of an arc under `k`, with the common factor removed.
pub fn push_arc<F: Field>(params: &MapParams, arc: &ParamArc<F>) -> Result<ParamArc<F>, MapError> {
    let ring = PolyRing(arc.field().clone());
    let a = arc.embedded_coeffs(params)?;
    ParamArc::new(k_components(&ring, &a, &arc.c))
}

/// Image of an arc under `k^{-1}`.
pub fn pull_arc<F: Field>(params: &MapParams, arc: &ParamArc<F>) -> Result<ParamArc<F>, MapError> {
    let ring = PolyRing(arc.field().clone());
    let a = arc.embedded_coeffs(params)?;
    ParamArc::new(k_inv_components(&ring, &a, &arc.c))
}
