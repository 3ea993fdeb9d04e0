//! dB <-> linear conversions. Everything else in the crate works on the
//! linear scale (powers in milliwatts, gains unitless).

use crate::scalar::Scalar;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn db_to_linear<T: Scalar>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

pub fn linear_to_db<T: Scalar>(linear: T) -> T {
    T::lit(10.0) * linear.log10()
}

/// dBm to milliwatts.
pub fn dbm_to_mw<T: Scalar>(dbm: T) -> T {
    db_to_linear(dbm)
}

pub fn mw_to_dbm<T: Scalar>(mw: T) -> T {
    linear_to_db(mw)
}

pub fn wavelength<T: Scalar>(frequency_hz: T) -> T {
    T::lit(SPEED_OF_LIGHT) / frequency_hz
}
