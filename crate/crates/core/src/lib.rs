//! Symmetry-based statistical models and their quantum-mechanical Hilbert
//! space counterparts, at finite scale.
//!
//! The pipeline runs from finite group actions on a parameter space
//! ([`group`], [`discrete`]) through natural focus parameters and orbit
//! reduction ([`parameters`]), the regular representation and its parametric
//! invariant subspaces ([`representation`]), sufficiency and the expectation
//! map of a finite statistical model ([`stat_model`]), to operators, Born
//! probabilities, measurements and time evolution ([`quantum`]). Worked
//! examples live in [`scenarios`].
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`. Group machinery is exact and index based.

// `!(x > y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discrete;
pub mod error;
pub mod group;
pub mod linalg;
pub mod parameters;
pub mod quantum;
pub mod representation;
pub mod scalar;
pub mod scenarios;
pub mod stat_model;

pub use error::{Error, Result};
pub use group::{Element, ElementSet, FiniteGroup, GroupAction, Homomorphism, InvariantMeasure, Orbit};
pub use parameters::{FocusParameter, ParameterSpace, ReducedParameter};
pub use scalar::Scalar;

pub type FunctionSpace64 = representation::FunctionSpace<f64>;
pub type LinearRep64 = representation::LinearRep<f64>;
pub type Subspace64 = representation::Subspace<f64>;
pub type SampleSpace64 = stat_model::SampleSpace<f64>;
pub type StatModel64 = stat_model::StatModel<f64>;
pub type StateVector64 = quantum::StateVector<f64>;
pub type HermitianOperator64 = quantum::HermitianOperator<f64>;
pub type DensityOperator64 = quantum::DensityOperator<f64>;
pub type EigenSystem64 = quantum::EigenSystem<f64>;
pub type MeasurementFamily64 = quantum::MeasurementFamily<f64>;
pub type Boost64 = scenarios::lorentz::Boost<f64>;
pub type Direction64 = scenarios::Direction<f64>;

pub type StateVector32 = quantum::StateVector<f32>;
pub type HermitianOperator32 = quantum::HermitianOperator<f32>;
pub type Boost32 = scenarios::lorentz::Boost<f32>;

/// Exact rational numbers for velocity addition and orbit masses.
pub type Rational = num_rational::Ratio<i64>;
