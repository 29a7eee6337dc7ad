//! Numeric scalar abstraction shared by the real and complex linear algebra.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar the numeric modules are generic over (`f32` or `f64`).
pub trait Scalar: RealField + Copy + FromPrimitive + ToPrimitive + Default {
    /// Distance from 1 to the next representable value.
    fn machine_epsilon() -> Self;

    /// Converts an `f64` literal into this scalar.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count into this scalar.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Lossy conversion back to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// A requested tolerance, floored at 64 ulp around 1 so that tight
    /// `f64` tolerances stay meaningful for `f32`.
    fn tol(requested: f64) -> Self {
        let floor = Self::machine_epsilon() * Self::of(64.0);
        let t = Self::of(requested);
        if t < floor {
            floor
        } else {
            t
        }
    }
}

impl Scalar for f32 {
    fn machine_epsilon() -> Self {
        f32::EPSILON
    }
}

impl Scalar for f64 {
    fn machine_epsilon() -> Self {
        f64::EPSILON
    }
}
