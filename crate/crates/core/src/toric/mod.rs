//! Smooth complete toric manifolds: fans, intersection numbers and orbit scores.

mod engine;
mod fan;
pub(crate) mod linalg;
mod threshold;

pub use engine::{intersection_number, Intersector, ToricClass};
pub use fan::Fan;
pub use threshold::{
    is_ample, is_nef, subvariety_score, toric_c_constant, toric_gamma, toric_seshadri_t,
    SubvarietyScore, ToricThreshold,
};
