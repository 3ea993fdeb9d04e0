use thiserror::Error;

/// Errors raised by the analysis and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the formula it feeds.
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The simulation window clips the disc the estimator needs.
    #[error("window {width} x {height} m cannot contain a disc of radius {radius} m")]
    WindowTooSmall { width: f64, height: f64, radius: f64 },

    /// Minimum-rate guarantees cannot be met for the listed UEs.
    #[error("infeasible problem: minimum rate cannot be met for UE(s) {ues:?}")]
    Infeasible { ues: Vec<usize> },

    /// Logarithmic utility evaluated at a zero rate.
    #[error("UE {ue} has zero rate under logarithmic utility")]
    InfeasibleRate { ue: usize },

    #[error("instance too large for exhaustive search: {virtual_bs} virtual BSs, {ues} UEs (limit {max_bs} x {max_ues})")]
    TooLarge {
        virtual_bs: usize,
        ues: usize,
        max_bs: usize,
        max_ues: usize,
    },

    #[error("simulation produced no usable sample: {0}")]
    NoSamples(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(name: &'static str, value: f64, expected: &'static str) -> Result<T> {
    Err(Error::Domain {
        name,
        value,
        expected,
    })
}
