//! Worked examples: spin-½ orbits, EPR correlations, CHSH, Cox's
//! conditionality example, 1-D Lorentz boosts and the translation generator.

pub mod chsh;
pub mod cox;
pub mod epr;
pub mod lorentz;
pub mod naturalness;
pub mod spin;
pub mod translation;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::quantum::HermitianOperator;
use crate::scalar::Scalar;

/// Unit vector in three dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction<T> {
    components: [T; 3],
}

impl<T: Scalar> Direction<T> {
    pub fn new(components: [T; 3]) -> Result<Self> {
        let norm = components.iter().fold(T::zero(), |a, x| a + *x * *x).sqrt();
        if (norm - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::input("Direction::new", format!("direction has norm {norm}, expected 1")));
        }
        Ok(Direction { components })
    }

    /// Direction in the x-z plane at angle `u` (radians) from the z axis.
    pub fn planar(u: T) -> Self {
        Direction { components: [u.sin(), T::zero(), u.cos()] }
    }

    pub fn components(&self) -> [T; 3] {
        self.components
    }

    pub fn dot(&self, other: &Direction<T>) -> T {
        (0..3).fold(T::zero(), |a, i| a + self.components[i] * other.components[i])
    }

    /// Angle in `[0, π]`.
    pub fn angle_to(&self, other: &Direction<T>) -> T {
        self.dot(other).max(-T::one()).min(T::one()).acos()
    }
}

/// Spin operator `σ·d` with eigenvalues `±1`.
pub fn spin_operator<T: Scalar>(d: &Direction<T>) -> HermitianOperator<T> {
    let [x, y, z] = d.components;
    let zero = T::zero();
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[Complex::new(z, zero), Complex::new(x, -y), Complex::new(x, y), Complex::new(-z, zero)],
    );
    HermitianOperator::new(m).expect("Pauli combinations are Hermitian")
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_directions_and_spin() {
        let d = Direction::planar(std::f64::consts::FRAC_PI_2);
        assert!((d.components()[0] - 1.0).abs() < 1e-15);
        let spec = spin_operator(&d).spectrum();
        assert!((spec[0] + 1.0).abs() < 1e-12 && (spec[1] - 1.0).abs() < 1e-12);
        assert!(Direction::new([1.0, 1.0, 0.0]).is_err());
        let a = Direction::<f64>::planar(0.3);
        let b = Direction::planar(1.0);
        assert!((a.angle_to(&b) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum_keeps_small_terms() {
        let mut s = CompensatedSum::default();
        for x in [1e16, 1.0, -1e16] {
            s.add(x);
        }
        assert_eq!(s.value(), 1.0);
    }
}
