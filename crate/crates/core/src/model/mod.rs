//! Physical-layer primitives: units, antenna pattern, path loss and range.

pub mod antenna;
pub mod propagation;
pub mod radio;
pub mod units;

pub use antenna::{angular_distance, main_lobe_gain, sector_count, sector_gain, wrap_angle, Beam};
pub use propagation::{link_directivity, max_range, path_gain, range_gain};
pub use radio::{Mode, RadioParams};
pub use units::{db_to_linear, dbm_to_mw, linear_to_db, mw_to_dbm, SPEED_OF_LIGHT};
