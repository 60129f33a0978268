//! Degree growth of the birational plane maps `k_F = j_F ∘ i`.

pub mod exactnum;
pub mod mapcore;
pub mod linsys;
pub mod classify;
pub mod picard;
pub mod localcharts;
