//! Distance-dependent path loss and the ranges it implies.

use crate::error::{domain, Result};
use crate::scalar::Scalar;

use super::antenna::main_lobe_gain;
use super::radio::{Mode, RadioParams};

/// Free-space style power law `(λ / 4πd)^α`.
pub fn path_gain<T: Scalar>(distance: T, params: &RadioParams<T>) -> Result<T> {
    if !(distance > T::zero()) || !distance.is_finite() {
        return domain("distance", distance.as_f64(), "> 0");
    }
    let reference = params.wavelength() / (T::lit(4.0) * T::PI());
    Ok((reference / distance).powf(params.pathloss_exponent()))
}

/// Product of the antenna gains a pilot sees on its way to the UE: none for
/// omni, one main lobe for semi-directional, two for fully-directional.
pub fn link_directivity<T: Scalar>(mode: Mode, theta: T, epsilon: T) -> Result<T> {
    let g = match mode {
        Mode::Omni => return Ok(T::one()),
        Mode::Semi | Mode::Fully => main_lobe_gain(theta, epsilon)?,
    };
    Ok(if mode == Mode::Fully { g * g } else { g })
}

/// Largest distance at which a pilot still clears the SNR threshold.
///
/// With `exact` the side-lobe level from `params` enters the main-lobe gain;
/// otherwise it is taken as zero (main-lobe gain `2π/θ`). `theta` is ignored
/// in omni mode.
pub fn max_range<T: Scalar>(params: &RadioParams<T>, mode: Mode, theta: T, exact: bool) -> Result<T> {
    let epsilon = if exact { params.sidelobe_gain() } else { T::zero() };
    let gain = link_directivity(mode, theta, epsilon)?;
    let budget = params.tx_power_mw() * gain / (params.noise_power_mw() * params.snr_threshold());
    let reference = params.wavelength() / (T::lit(4.0) * T::PI());
    Ok(reference * budget.powf(T::one() / params.pathloss_exponent()))
}

/// Range extension factor `10^(G / 10α)` bought by a combined directivity
/// gain of `combined_gain_db`.
pub fn range_gain<T: Scalar>(combined_gain_db: T, alpha: T) -> Result<T> {
    if !(alpha > T::lit(2.0)) {
        return domain("alpha", alpha.as_f64(), "> 2");
    }
    Ok(T::lit(10.0).powf(combined_gain_db / (T::lit(10.0) * alpha)))
}
