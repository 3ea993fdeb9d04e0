//! Cell formation instance: physical BSs expanded into one virtual BS per
//! RF chain, UEs, and the topology-imposed channel gains and angles.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::model::antenna::check_beamwidth;
use crate::model::{path_gain, Mode, RadioParams};
use crate::scalar::Scalar;

use super::matrix::Matrix;

/// Default narrowest BS beam, 5°.
pub const DEFAULT_BS_MIN_BEAMWIDTH_DEG: f64 = 5.0;
/// Default narrowest UE beam, 10°.
pub const DEFAULT_UE_MIN_BEAMWIDTH_DEG: f64 = 10.0;
/// Side-lobe level used for SINR unless overridden.
pub const DEFAULT_SIDELOBE_GAIN: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UtilityKind {
    /// Σ log r_j (proportional fairness).
    LogSum,
    /// Σ r_j.
    Sum,
}

impl fmt::Display for UtilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UtilityKind::LogSum => "logsum",
            UtilityKind::Sum => "sum",
        })
    }
}

impl FromStr for UtilityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "logsum" | "log" | "log-sum" => Ok(UtilityKind::LogSum),
            "sum" => Ok(UtilityKind::Sum),
            other => Err(Error::InvalidParameter(format!("unknown utility '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseStation<T = f64> {
    pub position: Point<T>,
    pub rf_chains: usize,
}

impl<T: Scalar> BaseStation<T> {
    pub fn new(position: Point<T>, rf_chains: usize) -> Self {
        Self { position, rf_chains }
    }
}

/// One RF chain of a physical BS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VirtualBs {
    pub physical: usize,
    pub chain: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFormationProblem<T = f64> {
    radio: RadioParams<T>,
    mode: Mode,
    utility: UtilityKind,
    base_stations: Vec<BaseStation<T>>,
    ues: Vec<Point<T>>,
    min_rates: Vec<T>,
    bs_min_beamwidth: T,
    ue_min_beamwidth: T,
    /// Multiplier on the path gain, `(physical BS, UE)`.
    shadowing: Option<Matrix<T>>,

    virtual_bs: Vec<VirtualBs>,
    channel: Matrix<T>,
    zeta_b: Matrix<T>,
    zeta_u: Matrix<T>,
}

impl<T: Scalar> CellFormationProblem<T> {
    /// Instance with the default beamwidth limits, zero minimum rates,
    /// logarithmic utility and unit shadowing.
    pub fn new(radio: RadioParams<T>, base_stations: Vec<BaseStation<T>>, ues: Vec<Point<T>>, mode: Mode) -> Result<Self> {
        let n_ues = ues.len();
        let mut problem = Self {
            radio,
            mode,
            utility: UtilityKind::LogSum,
            base_stations,
            ues,
            min_rates: vec![T::zero(); n_ues],
            bs_min_beamwidth: T::lit(DEFAULT_BS_MIN_BEAMWIDTH_DEG.to_radians()),
            ue_min_beamwidth: T::lit(DEFAULT_UE_MIN_BEAMWIDTH_DEG.to_radians()),
            shadowing: None,
            virtual_bs: Vec::new(),
            channel: Matrix::filled(0, 0, T::zero()),
            zeta_b: Matrix::filled(0, 0, T::zero()),
            zeta_u: Matrix::filled(0, 0, T::zero()),
        };
        problem.rebuild()?;
        Ok(problem)
    }

    fn rebuild(&mut self) -> Result<()> {
        if self.base_stations.is_empty() {
            return Err(Error::InvalidParameter("at least one BS is required".into()));
        }
        if self.ues.is_empty() {
            return Err(Error::InvalidParameter("at least one UE is required".into()));
        }
        if let Some(b) = self.base_stations.iter().position(|b| b.rf_chains == 0) {
            return Err(Error::InvalidParameter(format!("BS {b} has no RF chains")));
        }
        if self.min_rates.len() != self.ues.len() {
            return Err(Error::InvalidParameter(format!(
                "{} minimum rates for {} UEs",
                self.min_rates.len(),
                self.ues.len()
            )));
        }
        if let Some(j) = self.min_rates.iter().position(|r| !(*r >= T::zero()) || !r.is_finite()) {
            return Err(Error::InvalidParameter(format!("UE {j} has an invalid minimum rate")));
        }
        check_beamwidth(self.bs_min_beamwidth)?;
        check_beamwidth(self.ue_min_beamwidth)?;
        if let Some(s) = &self.shadowing {
            if s.rows() != self.base_stations.len() || s.cols() != self.ues.len() {
                return Err(Error::InvalidParameter("shadowing matrix must be (BS count) x (UE count)".into()));
            }
            if s.iter().any(|v| !(v > T::zero()) || !v.is_finite()) {
                return Err(Error::InvalidParameter("shadowing multipliers must be positive".into()));
            }
        }

        // Omni operation has one beam per BS whatever the hardware offers.
        let chains = |b: &BaseStation<T>| if self.mode == Mode::Omni { 1 } else { b.rf_chains };
        self.virtual_bs = self
            .base_stations
            .iter()
            .enumerate()
            .flat_map(|(physical, b)| (0..chains(b)).map(move |chain| VirtualBs { physical, chain }))
            .collect();

        let (nb, nu) = (self.virtual_bs.len(), self.ues.len());
        let mut channel = Matrix::filled(nb, nu, T::zero());
        let mut zeta_b = Matrix::filled(nb, nu, T::zero());
        let mut zeta_u = Matrix::filled(nb, nu, T::zero());
        for (i, v) in self.virtual_bs.iter().enumerate() {
            let bs = self.base_stations[v.physical].position;
            for (j, ue) in self.ues.iter().enumerate() {
                let d = bs.distance(ue);
                if !(d > T::zero()) {
                    return Err(Error::InvalidParameter(format!("UE {j} is co-located with BS {}", v.physical)));
                }
                let shadow = self.shadowing.as_ref().map_or(T::one(), |s| s[(v.physical, j)]);
                channel[(i, j)] = path_gain(d, &self.radio)? * shadow;
                zeta_b[(i, j)] = bs.bearing_to(ue);
                zeta_u[(i, j)] = ue.bearing_to(&bs);
            }
        }
        self.channel = channel;
        self.zeta_b = zeta_b;
        self.zeta_u = zeta_u;
        Ok(())
    }

    pub fn with_mode(mut self, mode: Mode) -> Result<Self> {
        self.mode = mode;
        self.rebuild()?;
        Ok(self)
    }

    pub fn with_utility(mut self, utility: UtilityKind) -> Self {
        self.utility = utility;
        self
    }

    pub fn with_min_rates(mut self, min_rates: Vec<T>) -> Result<Self> {
        self.min_rates = min_rates;
        self.rebuild()?;
        Ok(self)
    }

    pub fn with_min_beamwidths(mut self, bs: T, ue: T) -> Result<Self> {
        self.bs_min_beamwidth = bs;
        self.ue_min_beamwidth = ue;
        self.rebuild()?;
        Ok(self)
    }

    /// Same RF-chain count on every BS.
    pub fn with_rf_chains(mut self, chains: usize) -> Result<Self> {
        for b in &mut self.base_stations {
            b.rf_chains = chains;
        }
        self.rebuild()?;
        Ok(self)
    }

    pub fn with_shadowing(mut self, shadowing: Matrix<T>) -> Result<Self> {
        self.shadowing = Some(shadowing);
        self.rebuild()?;
        Ok(self)
    }

    pub fn radio(&self) -> &RadioParams<T> {
        &self.radio
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn utility(&self) -> UtilityKind {
        self.utility
    }

    pub fn base_stations(&self) -> &[BaseStation<T>] {
        &self.base_stations
    }

    pub fn ues(&self) -> &[Point<T>] {
        &self.ues
    }

    pub fn min_rates(&self) -> &[T] {
        &self.min_rates
    }

    pub fn virtual_bs(&self) -> &[VirtualBs] {
        &self.virtual_bs
    }

    pub fn num_virtual_bs(&self) -> usize {
        self.virtual_bs.len()
    }

    pub fn num_ues(&self) -> usize {
        self.ues.len()
    }

    /// Index of RF chain `chain` of physical BS `physical`, if it exists.
    pub fn virtual_index(&self, physical: usize, chain: usize) -> Option<usize> {
        self.virtual_bs
            .iter()
            .position(|v| v.physical == physical && v.chain == chain)
    }

    /// Channel gain `g^c_ij` (path loss times shadowing).
    pub fn channel_gains(&self) -> &Matrix<T> {
        &self.channel
    }

    /// Direction in which virtual BS `i` sees UE `j`.
    pub fn zeta_b(&self) -> &Matrix<T> {
        &self.zeta_b
    }

    /// Direction in which UE `j` sees virtual BS `i`.
    pub fn zeta_u(&self) -> &Matrix<T> {
        &self.zeta_u
    }

    /// BS beamwidth floor after the mode restriction (2π for omni).
    pub fn bs_min_beamwidth(&self) -> T {
        if self.mode.bs_directional() {
            self.bs_min_beamwidth
        } else {
            T::TAU()
        }
    }

    /// UE beamwidth floor after the mode restriction (2π unless fully
    /// directional).
    pub fn ue_min_beamwidth(&self) -> T {
        if self.mode.ue_directional() {
            self.ue_min_beamwidth
        } else {
            T::TAU()
        }
    }

    pub fn sidelobe_gain(&self) -> T {
        self.radio.sidelobe_gain()
    }
}
