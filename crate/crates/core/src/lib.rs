//! Gyrogroups and their step-function extensions.
//!
//! A gyrogroup `G` (finite groups, the Möbius disk, the Einstein ball) is
//! extended to `G•`, the gyrogroup of step functions `[0, 1) → G` with
//! rational breakpoints under pointwise operations. Around it sit the
//! measure neighborhoods `O(V, ε)`, the constant embedding, extension of
//! pseudometrics and homomorphisms, and constructive witnesses for
//! density, narrowness and networks.
//!
//! Continuous coordinates are generic over [`Real`] (`f32`/`f64`); the
//! aliases below fix `f64`. Breakpoints and measures are exact
//! [`Rational`]s throughout.

pub mod cardinal;
pub mod error;
pub mod gyro;
pub mod hom;
pub mod json;
pub mod metric;
pub mod rational;
pub mod sample;
pub mod scalar;
pub mod step;

pub use error::{GyroError, Result};
pub use gyro::{Element, GyroInstance, Gyrogroup, Kind, LawCheck, LawSuite, NeighborhoodSpec};
pub use rational::Rational;
pub use scalar::{MetricScalar, Real};
pub use step::{Partition, StepFunction, StepGyrogroup};

pub type Element64 = Element<f64>;
pub type Instance64 = GyroInstance<f64>;
pub type Neighborhood64 = NeighborhoodSpec<f64>;
pub type Step64 = StepFunction<f64>;
pub type StepGroup64 = StepGyrogroup<f64>;

pub type Element32 = Element<f32>;
pub type Instance32 = GyroInstance<f32>;
pub type Step32 = StepFunction<f32>;
