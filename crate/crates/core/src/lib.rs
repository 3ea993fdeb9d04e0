//! Models and simulators for millimeter-wave cellular access: directional
//! range and coverage, beam-sweep cell discovery, and joint association
//! and beam selection.
//!
//! Everything is generic over the float type; the `*F64` and `*F32`
//! aliases below pin the common choices.

pub mod cells;
pub mod discovery;
pub mod error;
pub mod geometry;
pub mod model;
pub mod scalar;
pub mod sim;

pub use error::{Error, Result};
pub use model::Mode;

pub type RadioParamsF64 = model::RadioParams<f64>;
pub type RadioParamsF32 = model::RadioParams<f32>;
pub type BeamF64 = model::Beam<f64>;
pub type BeamF32 = model::Beam<f32>;
pub type PointF64 = geometry::Point<f64>;
pub type PointF32 = geometry::Point<f32>;
pub type DiscoveryModelF64 = discovery::DiscoveryModel<f64>;
pub type DiscoveryModelF32 = discovery::DiscoveryModel<f32>;
pub type SimConfigF64 = sim::SimConfig<f64>;
pub type SimConfigF32 = sim::SimConfig<f32>;
pub type ProblemF64 = cells::CellFormationProblem<f64>;
pub type ProblemF32 = cells::CellFormationProblem<f32>;
pub type SolutionF64 = cells::Solution<f64>;
pub type SolutionF32 = cells::Solution<f32>;
