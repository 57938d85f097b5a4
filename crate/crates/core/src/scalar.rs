//! Scalar abstractions.
//!
//! Continuous carriers are generic over a floating-point coordinate type
//! [`Real`]. Distances produced by a pseudometric are generic over
//! [`MetricScalar`], which is implemented for the float types and for exact
//! big rationals so that finite instances keep their arithmetic exact.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast, ToPrimitive, Zero};

use crate::rational::Rational;

/// Coordinate type of the continuous carriers: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + MetricScalar + Debug + Display + Default + Send + Sync + 'static
{
    /// Default coordinatewise equality tolerance.
    fn default_tolerance() -> Self;

    /// Relative distance to the boundary below which carrier points are rejected.
    fn boundary_margin() -> Self;

    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("literal fits the float type")
    }
}

impl Real for f64 {
    fn default_tolerance() -> Self {
        1e-9
    }

    fn boundary_margin() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn default_tolerance() -> Self {
        1e-4
    }

    fn boundary_margin() -> Self {
        1e-6
    }
}

/// Value type of a pseudometric.
///
/// Lengths of partition intervals are exact rationals; `from_ratio` moves
/// them into the distance type so weighted sums stay in one arithmetic.
pub trait MetricScalar:
    Clone + Debug + PartialOrd + Zero + Add<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn from_ratio(r: &Rational) -> Self;

    fn approx(&self) -> f64;

    /// Exact value when the scalar is rational.
    fn as_exact(&self) -> Option<Rational> {
        None
    }
}

impl MetricScalar for f64 {
    fn from_ratio(r: &Rational) -> Self {
        num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn approx(&self) -> f64 {
        *self
    }
}

impl MetricScalar for f32 {
    fn from_ratio(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn approx(&self) -> f64 {
        <f64 as From<f32>>::from(*self)
    }
}

impl MetricScalar for Rational {
    fn from_ratio(r: &Rational) -> Self {
        r.clone()
    }

    fn approx(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn as_exact(&self) -> Option<Rational> {
        Some(self.clone())
    }
}
