//! Local coordinates on the exceptional fibers over `e_1` and `e_2`, and
//! the maps `k` and `k^{-1}` induces between them.
//!
//! A fiber chart is an arc family `s -> chart(s, u)`; the image of the point
//! `u` is read off from the Laurent expansion of the pushed (or pulled) arc.

mod chart;
mod coeffs;
mod laurent;
mod mobius;

use num_rational::BigRational;
use thiserror::Error;

use crate::exactnum::format_rational;
use crate::mapcore::MapError;

pub use chart::{chart_limit, follow_orbit, ChartKind, ChartRegistry, ChartSpec, Direction};
pub use coeffs::{
    coeff_c, coeff_d, coeff_gamma, d_polynomial, ep_ip_sequence, gamma_polynomial, orbit_condition_odd,
    top_prefix, PointSequences,
};
pub use mobius::{mobius_reconstruct, MobiusMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("index {j} outside 0..={n}")]
    Index { j: usize, n: usize },
    #[error("prefix is empty or starts with zero")]
    ZeroPrefix,
    #[error("coefficient is not affine in u with slope -1/p_0^2")]
    NotAffine,
    #[error("the fiber tower is only built for odd n (got n = {0})")]
    EvenDegree(usize),
    #[error("ep_{0} != ip_{0}: the tower stops at this index")]
    SequenceBlocked(usize),
    #[error("u = {} is a pole of the chart map", format_rational(.0))]
    PoleAtU(BigRational),
    #[error("the arc through u = {} lies on a contracted curve", format_rational(.0))]
    Contracted(BigRational),
    #[error("no registered chart contains the limit point {0}")]
    AmbiguousTarget(String),
    #[error("samples do not determine a unique Möbius map")]
    DegenerateSamples,
    #[error("series precision exhausted")]
    PrecisionExhausted,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Image chart and Möbius map of `chart` under `k` (or `k^{-1}`), from the
/// first three sample points `u = 1, 2, 3, ...` that land in one chart.
pub fn fiber_map(
    registry: &ChartRegistry,
    chart: &ChartSpec,
    direction: Direction,
) -> Result<(String, MobiusMap), LocalError> {
    let mut by_target: Vec<(String, Vec<(BigRational, Option<BigRational>)>)> = Vec::new();
    for k in 1..=12i64 {
        let u = BigRational::from_integer(k.into());
        let (name, v) = match chart_limit(registry, chart, &u, direction) {
            Ok(hit) => hit,
            Err(LocalError::PoleAtU(_) | LocalError::Contracted(_) | LocalError::AmbiguousTarget(_)) => continue,
            Err(e) => return Err(e),
        };
        let slot = match by_target.iter().position(|(t, _)| *t == name) {
            Some(i) => i,
            None => {
                by_target.push((name, Vec::new()));
                by_target.len() - 1
            }
        };
        let (name, samples) = &mut by_target[slot];
        samples.push((u, Some(v)));
        if samples.len() == 3 {
            let s: [_; 3] = samples.clone().try_into().expect("three samples");
            return Ok((name.clone(), mobius_reconstruct(&s)?));
        }
    }
    Err(LocalError::DegenerateSamples)
}
