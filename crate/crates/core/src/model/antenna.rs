//! Ideal sectored antenna: constant main-lobe gain over the beamwidth and a
//! constant side-lobe level `epsilon` elsewhere, with the main-lobe level set
//! so the pattern radiates the same total power as an isotropic antenna.

use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Wrap an angle into `[0, 2π)`.
pub fn wrap_angle<T: Scalar>(angle: T) -> T {
    let two_pi = T::TAU();
    let mut a = angle % two_pi;
    if a < T::zero() {
        a = a + two_pi;
    }
    // -tiny % 2π + 2π can round up to exactly 2π.
    if a >= two_pi {
        a = T::zero();
    }
    a
}

/// Shortest distance around the circle between two directions, in `[0, π]`.
pub fn angular_distance<T: Scalar>(a: T, b: T) -> T {
    let d = wrap_angle(a - b);
    d.min(T::TAU() - d)
}

/// Number of non-overlapping sectors of width `theta` needed to cover the
/// plane, `ceil(2π / θ)`.
///
/// Beamwidths given in degrees (20°, 60°) do not divide 2π exactly once
/// converted to radians, so quotients within a few ulps of an integer are
/// snapped.
pub fn sector_count<T: Scalar>(theta: T) -> Result<usize> {
    check_beamwidth(theta)?;
    let q = (T::TAU() / theta).as_f64();
    let tol = (64.0 * T::epsilon().as_f64() * q).max(1e-9);
    let snapped = if (q - q.round()).abs() < tol { q.round() } else { q.ceil() };
    Ok(snapped.max(1.0) as usize)
}

pub(crate) fn check_beamwidth<T: Scalar>(theta: T) -> Result<()> {
    if theta > T::zero() && theta <= T::TAU() {
        Ok(())
    } else {
        domain("beamwidth", theta.as_f64(), "(0, 2π]")
    }
}

/// Main-lobe gain `(2π − (2π − θ)ε) / θ`.
pub fn main_lobe_gain<T: Scalar>(theta: T, epsilon: T) -> Result<T> {
    check_beamwidth(theta)?;
    if !(epsilon >= T::zero() && epsilon < T::one()) {
        return domain("epsilon", epsilon.as_f64(), "[0, 1)");
    }
    let two_pi = T::TAU();
    Ok((two_pi - (two_pi - theta) * epsilon) / theta)
}

/// One antenna's main lobe: width and pointing direction (both radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beam<T = f64> {
    beamwidth: T,
    boresight: T,
}

impl<T: Scalar> Beam<T> {
    /// `beamwidth` must lie in `(0, 2π]`; the boresight is wrapped into `[0, 2π)`.
    pub fn new(beamwidth: T, boresight: T) -> Result<Self> {
        check_beamwidth(beamwidth)?;
        if !boresight.is_finite() {
            return domain("boresight", boresight.as_f64(), "finite");
        }
        Ok(Self {
            beamwidth,
            boresight: wrap_angle(boresight),
        })
    }

    pub fn omni() -> Self {
        Self {
            beamwidth: T::TAU(),
            boresight: T::zero(),
        }
    }

    pub fn beamwidth(&self) -> T {
        self.beamwidth
    }

    pub fn boresight(&self) -> T {
        self.boresight
    }

    pub fn is_omni(&self) -> bool {
        self.beamwidth >= T::TAU()
    }

    /// Whether `direction` falls in the main lobe. The edge at exactly θ/2 is
    /// in-lobe.
    pub fn covers(&self, direction: T) -> bool {
        self.is_omni()
            || angular_distance(self.boresight, direction) <= self.beamwidth / T::lit(2.0)
    }

    pub fn main_lobe_gain(&self, epsilon: T) -> Result<T> {
        main_lobe_gain(self.beamwidth, epsilon)
    }
}

/// Gain of `beam` toward `target_angle`: the main-lobe level inside the
/// lobe, `epsilon` outside.
pub fn sector_gain<T: Scalar>(beam: &Beam<T>, epsilon: T, target_angle: T) -> Result<T> {
    let main = beam.main_lobe_gain(epsilon)?;
    Ok(if beam.covers(target_angle) { main } else { epsilon })
}
