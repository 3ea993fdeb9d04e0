//! Monte Carlo engines for coverage and directional discovery around a
//! typical UE at the origin.

pub mod coverage;
pub mod discovery;
pub mod field;
pub mod window;

pub use coverage::{closed_form_coverage, mc_coverage, min_density_for_coverage, CoverageEstimate};
pub use discovery::{mc_discovery, sweep_order, DiscoveryEstimate};
pub use field::{sample_los_field, trial_rng, SimConfig};
pub use window::SimWindow;
