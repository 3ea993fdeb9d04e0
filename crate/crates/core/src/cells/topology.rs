//! Random deployments for experiments.

use rand::Rng;

use crate::error::{domain, Result};
use crate::geometry::Point;
use crate::model::{Mode, RadioParams};
use crate::scalar::Scalar;
use crate::sim::trial_rng;

use super::problem::{BaseStation, CellFormationProblem};

/// UEs closer than this to any BS are redrawn.
pub const MIN_BS_DISTANCE_M: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Topology<T = f64> {
    pub base_stations: Vec<Point<T>>,
    pub ues: Vec<Point<T>>,
}

impl<T: Scalar> Topology<T> {
    /// Uniform drop of BSs and UEs in a `side` x `side` square.
    pub fn random(seed: u64, n_bs: usize, n_ue: usize, side: T) -> Result<Self> {
        if !(side > T::lit(2.0 * MIN_BS_DISTANCE_M)) || !side.is_finite() {
            return domain("side", side.as_f64(), "finite and > 2 m");
        }
        if n_bs == 0 {
            return Err(crate::Error::InvalidParameter("need at least one base station".into()));
        }
        let mut rng = trial_rng(seed, 0);
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            let x: f64 = rng.random();
            let y: f64 = rng.random();
            Point::new(T::lit(x) * side, T::lit(y) * side)
        };
        let base_stations: Vec<Point<T>> = (0..n_bs).map(|_| draw(&mut rng)).collect();
        let min_d = T::lit(MIN_BS_DISTANCE_M);
        let mut ues = Vec::with_capacity(n_ue);
        while ues.len() < n_ue {
            let p = draw(&mut rng);
            if base_stations.iter().all(|b| b.distance(&p) >= min_d) {
                ues.push(p);
            }
        }
        Ok(Self { base_stations, ues })
    }

    pub fn to_problem(&self, radio: RadioParams<T>, mode: Mode, rf_chains: usize) -> Result<CellFormationProblem<T>> {
        let bss = self
            .base_stations
            .iter()
            .map(|&p| BaseStation::new(p, rf_chains))
            .collect();
        CellFormationProblem::new(radio, bss, self.ues.clone(), mode)
    }
}
