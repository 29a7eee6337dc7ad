//! One-dimensional Lorentz boosts and their rapidity parametrization.

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Matrix2<T> = [[T; 2]; 2];

/// Boost with velocity `v`, `|v| < c`, and rapidity `r = artanh(v/c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Boost<T> {
    velocity: T,
    rapidity: T,
    c: T,
}

impl<T: Scalar> Boost<T> {
    pub fn new(velocity: T, c: T) -> Result<Self> {
        const OP: &str = "Boost::new";
        if !(c > T::zero()) {
            return Err(Error::input(OP, "speed of light must be positive"));
        }
        if !(velocity.abs() < c) {
            return Err(Error::input(OP, format!("|v| = {} is not below c = {c}", velocity.abs())));
        }
        Ok(Boost { velocity, rapidity: (velocity / c).atanh(), c })
    }

    pub fn from_rapidity(rapidity: T, c: T) -> Result<Self> {
        if !(c > T::zero()) || !rapidity.is_finite() {
            return Err(Error::input("Boost::from_rapidity", "need finite rapidity and positive c"));
        }
        Ok(Boost { velocity: c * rapidity.tanh(), rapidity, c })
    }

    pub fn velocity(&self) -> T {
        self.velocity
    }

    pub fn rapidity(&self) -> T {
        self.rapidity
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn gamma(&self) -> T {
        T::one() / (T::one() - (self.velocity / self.c).powi(2)).sqrt()
    }

    /// `[[cosh r, sinh r], [sinh r, cosh r]]`, acting on `(ξ, cτ)`.
    pub fn matrix(&self) -> Matrix2<T> {
        let (ch, sh) = (self.rapidity.cosh(), self.rapidity.sinh());
        [[ch, sh], [sh, ch]]
    }

    /// `ξ' = (ξ + vτ)γ`, `τ' = (τ + vξ/c²)γ`.
    pub fn transform(&self, xi: T, tau: T) -> (T, T) {
        let g = self.gamma();
        let v = self.velocity;
        ((xi + v * tau) * g, (tau + v * xi / (self.c * self.c)) * g)
    }

    /// The same map through the rapidity matrix on `(ξ, cτ)`.
    pub fn transform_rapidity(&self, xi: T, tau: T) -> (T, T) {
        let m = self.matrix();
        let ct = self.c * tau;
        (m[0][0] * xi + m[0][1] * ct, (m[1][0] * xi + m[1][1] * ct) / self.c)
    }
}

/// Composition: rapidities add, velocities combine by [`velocity_addition`].
pub fn boost_compose<T: Scalar>(b1: &Boost<T>, b2: &Boost<T>) -> Result<Boost<T>> {
    if b1.c != b2.c {
        return Err(Error::input("boost_compose", "boosts use different c"));
    }
    let velocity = velocity_addition(b1.velocity, b2.velocity, b1.c)?;
    Ok(Boost { velocity, rapidity: b1.rapidity + b2.rapidity, c: b1.c })
}

/// `(v1 + v2) / (1 + v1 v2 / c²)`, exact for rational inputs.
pub fn velocity_addition<N: Num + Clone + PartialOrd>(v1: N, v2: N, c: N) -> Result<N> {
    const OP: &str = "velocity_addition";
    let inside = |v: &N| {
        let neg_c = N::zero() - c.clone();
        neg_c < *v && *v < c
    };
    if !(c > N::zero()) || !inside(&v1) || !inside(&v2) {
        return Err(Error::input(OP, "velocities must satisfy |v| < c with c > 0"));
    }
    let c2 = c.clone() * c;
    Ok((v1.clone() + v2.clone()) / (N::one() + v1 * v2 / c2))
}

pub fn mat_mul<T: Scalar>(a: &Matrix2<T>, b: &Matrix2<T>) -> Matrix2<T> {
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_diff<T: Scalar>(a: &Matrix2<T>, b: &Matrix2<T>) -> T {
    let mut worst = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn point_six_c() {
        let b = Boost::<f64>::new(0.6, 1.0).unwrap();
        let m = b.matrix();
        assert!((m[0][0] - 1.25).abs() < 1e-12 && (m[0][1] - 0.75).abs() < 1e-12);
        let (x1, t1) = b.transform(2.0, -0.5);
        let (x2, t2) = b.transform_rapidity(2.0, -0.5);
        assert!((x1 - x2).abs() < 1e-12 && (t1 - t2).abs() < 1e-12);
        let b = Boost::<f64>::new(0.6 * 3e8, 3e8).unwrap();
        let (x1, t1) = b.transform(1.0, 2e-9);
        let (x2, t2) = b.transform_rapidity(1.0, 2e-9);
        assert!((x1 - x2).abs() < 1e-12 && ((t1 - t2) / t1).abs() < 1e-12);
    }

    #[test]
    fn composition() {
        let half = Boost::<f64>::new(0.5, 1.0).unwrap();
        let both = boost_compose(&half, &half).unwrap();
        assert!((both.velocity() - 0.8).abs() < 1e-15);
        assert!(mat_diff(&both.matrix(), &mat_mul(&half.matrix(), &half.matrix())) < 1e-12);
        let zero = Boost::new(0.0, 1.0).unwrap();
        assert_eq!(boost_compose(&half, &zero).unwrap().velocity(), 0.5);
        let r = boost_compose(&both, &half).unwrap();
        assert!((r.rapidity().tanh() - r.velocity()).abs() < 1e-12);
        assert_eq!(
            velocity_addition(Rational::new(1, 2), Rational::new(1, 2), Rational::from_integer(1)).unwrap(),
            Rational::new(4, 5)
        );
        assert!(Boost::new(1.0, 1.0).is_err());
        assert!(velocity_addition(1.0, 0.5, 1.0).is_err());
        assert!(boost_compose(&half, &Boost::new(0.5, 2.0).unwrap()).is_err());
    }

    #[test]
    fn single_precision() {
        let b = Boost::<f32>::new(0.6, 1.0).unwrap();
        assert!((b.gamma() - 1.25).abs() < 1e-5);
    }
}
