use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

use super::units::{db_to_linear, dbm_to_mw, wavelength};

/// Directionality of the link: neither end, only the BS, or both ends
/// beamform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Omni,
    Semi,
    Fully,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Omni, Mode::Semi, Mode::Fully];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Omni => "omni",
            Mode::Semi => "semi",
            Mode::Fully => "fully",
        }
    }

    pub fn bs_directional(self) -> bool {
        !matches!(self, Mode::Omni)
    }

    pub fn ue_directional(self) -> bool {
        matches!(self, Mode::Fully)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "omni" | "omnidirectional" => Ok(Mode::Omni),
            "semi" | "semi-directional" => Ok(Mode::Semi),
            "fully" | "full" | "fully-directional" => Ok(Mode::Fully),
            other => Err(Error::InvalidParameter(format!("unknown mode '{other}'"))),
        }
    }
}

/// Link-budget inputs. Stored in the units they are usually quoted in;
/// the accessors hand out linear values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams<T = f64> {
    carrier_frequency_hz: T,
    tx_power_dbm: T,
    noise_power_dbm: T,
    snr_threshold_db: T,
    pathloss_exponent: T,
    sidelobe_gain: T,
}

impl<T: Scalar> RadioParams<T> {
    pub fn new(
        carrier_frequency_hz: T,
        tx_power_dbm: T,
        noise_power_dbm: T,
        snr_threshold_db: T,
        pathloss_exponent: T,
        sidelobe_gain: T,
    ) -> Result<Self> {
        if !(carrier_frequency_hz > T::zero()) || !carrier_frequency_hz.is_finite() {
            return domain("carrier_frequency", carrier_frequency_hz.as_f64(), "> 0");
        }
        for (name, v) in [
            ("tx_power_dbm", tx_power_dbm),
            ("noise_power_dbm", noise_power_dbm),
            ("snr_threshold_db", snr_threshold_db),
        ] {
            if !v.is_finite() {
                return domain(name, v.as_f64(), "finite");
            }
        }
        if !(pathloss_exponent > T::lit(2.0)) || !pathloss_exponent.is_finite() {
            return domain("pathloss_exponent", pathloss_exponent.as_f64(), "> 2");
        }
        if !(sidelobe_gain >= T::zero() && sidelobe_gain < T::one()) {
            return domain("sidelobe_gain", sidelobe_gain.as_f64(), "[0, 1)");
        }
        Ok(Self {
            carrier_frequency_hz,
            tx_power_dbm,
            noise_power_dbm,
            snr_threshold_db,
            pathloss_exponent,
            sidelobe_gain,
        })
    }

    /// 28 GHz control channel: 30 dBm pilots, -127 dBm noise (50 kHz),
    /// 0 dB SNR threshold, alpha = 3, ideal sectors (epsilon = 0).
    pub fn control_channel_28ghz() -> Self {
        Self::new(
            T::lit(28e9),
            T::lit(30.0),
            T::lit(-127.0),
            T::zero(),
            T::lit(3.0),
            T::zero(),
        )
        .expect("preset is valid")
    }

    pub fn with_carrier_frequency(self, hz: T) -> Result<Self> {
        Self::new(hz, self.tx_power_dbm, self.noise_power_dbm, self.snr_threshold_db, self.pathloss_exponent, self.sidelobe_gain)
    }

    pub fn with_tx_power_dbm(self, dbm: T) -> Result<Self> {
        Self::new(self.carrier_frequency_hz, dbm, self.noise_power_dbm, self.snr_threshold_db, self.pathloss_exponent, self.sidelobe_gain)
    }

    pub fn with_noise_power_dbm(self, dbm: T) -> Result<Self> {
        Self::new(self.carrier_frequency_hz, self.tx_power_dbm, dbm, self.snr_threshold_db, self.pathloss_exponent, self.sidelobe_gain)
    }

    pub fn with_snr_threshold_db(self, db: T) -> Result<Self> {
        Self::new(self.carrier_frequency_hz, self.tx_power_dbm, self.noise_power_dbm, db, self.pathloss_exponent, self.sidelobe_gain)
    }

    pub fn with_pathloss_exponent(self, alpha: T) -> Result<Self> {
        Self::new(self.carrier_frequency_hz, self.tx_power_dbm, self.noise_power_dbm, self.snr_threshold_db, alpha, self.sidelobe_gain)
    }

    pub fn with_sidelobe_gain(self, epsilon: T) -> Result<Self> {
        Self::new(self.carrier_frequency_hz, self.tx_power_dbm, self.noise_power_dbm, self.snr_threshold_db, self.pathloss_exponent, epsilon)
    }

    pub fn carrier_frequency_hz(&self) -> T {
        self.carrier_frequency_hz
    }

    pub fn tx_power_dbm(&self) -> T {
        self.tx_power_dbm
    }

    pub fn noise_power_dbm(&self) -> T {
        self.noise_power_dbm
    }

    pub fn snr_threshold_db(&self) -> T {
        self.snr_threshold_db
    }

    pub fn pathloss_exponent(&self) -> T {
        self.pathloss_exponent
    }

    pub fn sidelobe_gain(&self) -> T {
        self.sidelobe_gain
    }

    pub fn wavelength(&self) -> T {
        wavelength(self.carrier_frequency_hz)
    }

    /// Transmit power, mW.
    pub fn tx_power_mw(&self) -> T {
        dbm_to_mw(self.tx_power_dbm)
    }

    /// Noise power, mW.
    pub fn noise_power_mw(&self) -> T {
        dbm_to_mw(self.noise_power_dbm)
    }

    pub fn snr_threshold(&self) -> T {
        db_to_linear(self.snr_threshold_db)
    }
}
