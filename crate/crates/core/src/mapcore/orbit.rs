use crate::exactnum::Rationals;

use super::germ::ArcGerm;
use super::{eval_k, push_arc, MapError, MapParams, ParamArc, PointImage, ProjPoint};

/// Default truncation order for germ orbits.
pub const DEFAULT_GERM_ORDER: usize = 64;

/// `k(p), k^2(p), ...` for `steps` steps, stopping after the first
/// indeterminate image.
pub fn orbit_point(params: &MapParams, p: &ProjPoint, steps: usize) -> Vec<PointImage> {
    let mut out = Vec::with_capacity(steps);
    let mut cur = p.clone();
    for _ in 0..steps {
        let img = eval_k(params, &cur);
        out.push(img.clone());
        match img {
            PointImage::Point(q) => cur = q,
            PointImage::Indeterminate => break,
        }
    }
    out
}

/// One step of an arc orbit: the transported germ and its base point.
#[derive(Clone, Debug)]
pub struct ArcStep {
    pub germ: ArcGerm<Rationals>,
    pub base: ProjPoint,
}

/// Iterates `k` on the germ of `arc` at `s = 0`; entry `i` of the result is
/// iterate `i + 1`. Base points of the iterates follow the orbit through
/// infinitely-near points, which a bare point orbit cannot do.
pub fn orbit_arc(
    params: &MapParams,
    arc: &ParamArc<Rationals>,
    steps: usize,
) -> Result<Vec<ArcStep>, MapError> {
    orbit_arc_with_order(params, arc, steps, DEFAULT_GERM_ORDER)
}

pub fn orbit_arc_with_order(
    params: &MapParams,
    arc: &ParamArc<Rationals>,
    steps: usize,
    order: usize,
) -> Result<Vec<ArcStep>, MapError> {
    let mut germ = ArcGerm::from_arc(arc, order)?;
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        germ = germ.push(params)?;
        out.push(ArcStep { base: germ.base_point(), germ: germ.clone() });
    }
    Ok(out)
}

/// Same orbit computed with full polynomial arcs; exact but expensive, used
/// to cross-check the germ version on short orbits.
pub fn orbit_arc_full(
    params: &MapParams,
    arc: &ParamArc<Rationals>,
    steps: usize,
) -> Result<Vec<(ParamArc<Rationals>, ProjPoint)>, MapError> {
    let mut cur = arc.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        cur = push_arc(params, &cur)?;
        out.push((cur.clone(), cur.base_point()));
    }
    Ok(out)
}
