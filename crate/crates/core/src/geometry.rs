use crate::model::antenna::wrap_angle;
use crate::scalar::Scalar;

/// A point in the plane, meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn distance(&self, other: &Self) -> T {
        (other.x - self.x).hypot(other.y - self.y)
    }

    /// Direction from `self` toward `other`, counter-clockwise from the
    /// positive x axis, in `[0, 2π)`.
    pub fn bearing_to(&self, other: &Self) -> T {
        wrap_angle((other.y - self.y).atan2(other.x - self.x))
    }
}
