//! The maps `k_F`: point evaluation, the two involutions, pushforward of
//! parametrised arcs, degree sequences and orbits.

mod arc;
pub mod curves;
mod degseq;
mod formulas;
mod germ;
mod orbit;
mod params;
mod point;

use thiserror::Error;

pub use arc::{pull_arc, push_arc, ParamArc};
pub use degseq::{
    default_mode, degree_sequence, degree_sequence_report, growth_ratios, recurrence_residuals,
    ArithMode, DegreeReport, EXACT_DEFAULT_MAX_ITERS, MAX_ATTEMPTS,
};
pub use formulas::{
    eval_k, eval_k_inv, involution_i, involution_j, k_components, k_inv_components, PolyRing,
    SeriesRing, EXACT_ORDER,
};
pub use germ::ArcGerm;
pub use orbit::{
    orbit_arc, orbit_arc_full, orbit_arc_with_order, orbit_point, ArcStep, DEFAULT_GERM_ORDER,
};
pub use params::MapParams;
pub use point::{special, PointImage, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("all three coordinates are zero")]
    ZeroPoint,
    #[error("point outside the domain of the involution")]
    Domain,
    #[error("arc collapses: every image component vanishes identically")]
    ArcCollapse,
    #[error("a coefficient denominator vanishes modulo the chosen prime")]
    BadReduction,
    #[error("germ precision exhausted; increase the truncation order")]
    PrecisionExhausted,
    #[error("random lines kept disagreeing after {attempts} attempts")]
    GenericityFailure { attempts: usize },
}
