use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::scalar::Scalar;

/// Rectangular simulation region centered on the typical UE at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimWindow<T = f64> {
    pub width: T,
    pub height: T,
}

impl<T: Scalar> SimWindow<T> {
    pub fn new(width: T, height: T) -> Result<Self> {
        if !(width > T::zero() && height > T::zero()) || !(width * height).is_finite() {
            return Err(Error::InvalidParameter(format!(
                "window must have positive finite size, got {width} x {height}"
            )));
        }
        Ok(Self { width, height })
    }

    /// Square of side `4·d_max`.
    pub fn around(d_max: T) -> Result<Self> {
        let side = T::lit(4.0) * d_max;
        Self::new(side, side)
    }

    pub fn area(&self) -> T {
        self.width * self.height
    }

    pub fn contains_disc(&self, radius: T) -> bool {
        radius <= self.width.min(self.height) / T::lit(2.0)
    }

    pub fn require_disc(&self, radius: T) -> Result<()> {
        if self.contains_disc(radius) {
            Ok(())
        } else {
            Err(Error::WindowTooSmall {
                width: self.width.as_f64(),
                height: self.height.as_f64(),
                radius: radius.as_f64(),
            })
        }
    }

    /// Map a point of the unit square onto the window.
    pub(crate) fn place(&self, u: f64, v: f64) -> Point<T> {
        let half = T::lit(0.5);
        Point::new(
            (T::lit(u) - half) * self.width,
            (T::lit(v) - half) * self.height,
        )
    }
}
