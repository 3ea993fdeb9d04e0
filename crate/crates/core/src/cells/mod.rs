//! Joint user association, resource sharing and beam selection.

mod beams;
mod brute;
mod gains;
mod matrix;
mod metrics;
mod problem;
mod solution;
mod solver;
mod sweep;
mod topology;

pub use beams::{covering_arc, fit_beams, fit_bs_beams, fit_ue_beams, FIT_SLACK_RAD};
pub use brute::{brute_force, MAX_BRUTE_BS, MAX_BRUTE_UES};
pub use gains::{directivity_gains, rate_matrix, shannon_rate, sinr_matrix, BeamConfig};
pub use matrix::Matrix;
pub use metrics::{equal_share_rates, jain_index, loads, objective, Metrics};
pub use problem::{
    BaseStation, CellFormationProblem, UtilityKind, VirtualBs, DEFAULT_BS_MIN_BEAMWIDTH_DEG, DEFAULT_SIDELOBE_GAIN,
    DEFAULT_UE_MIN_BEAMWIDTH_DEG,
};
pub use solution::{evaluate_association, received_power_matrix, Association, Solution, RATE_FLOOR};
pub use solver::{check_feasible, greedy_association, solve, solve_with_starts, SolverParams};
pub use sweep::{mode_sweep, SweepCell};
pub use topology::{Topology, MIN_BS_DISTANCE_M};
