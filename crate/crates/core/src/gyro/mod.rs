//! Gyrogroups: the abstraction, the shipped instances and symmetric
//! neighborhoods of the identity.

mod element;
mod instance;
mod laws;
mod neighborhood;

pub use element::Element;
pub use instance::{GyroInstance, Kind};
pub use laws::{LawCheck, LawSuite};
pub use neighborhood::NeighborhoodSpec;

use std::fmt::Debug;

use crate::error::Result;

/// A groupoid with identity, inverses and gyrations repairing associativity.
///
/// Implementors supply `op`, `inverse`, `identity` and an equality
/// discipline. Everything else has a default in terms of those: `gyr`
/// evaluates `⊖(a⊕b) ⊕ (a⊕(b⊕z))`, and the cooperation is
/// `a ⊞ b = a ⊕ gyr[a, ⊖b](b)`.
pub trait Gyrogroup {
    type Elem: Clone + Debug;

    fn identity(&self) -> Self::Elem;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn inverse(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Equality under the structure's discipline (exact or within tolerance).
    fn equiv(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// `gyr[a, b](z)`. Overridden where a closed form exists; the override
    /// must agree with [`Gyrogroup::gyr_formula`].
    fn gyr(&self, a: &Self::Elem, b: &Self::Elem, z: &Self::Elem) -> Result<Self::Elem> {
        self.gyr_formula(a, b, z)
    }

    /// `⊖(a ⊕ b) ⊕ (a ⊕ (b ⊕ z))`.
    fn gyr_formula(&self, a: &Self::Elem, b: &Self::Elem, z: &Self::Elem) -> Result<Self::Elem> {
        let ab = self.op(a, b)?;
        let nested = self.op(a, &self.op(b, z)?)?;
        self.op(&self.inverse(&ab)?, &nested)
    }

    /// `a ⊖ b = a ⊕ (⊖b)`.
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.op(a, &self.inverse(b)?)
    }

    /// `a ⊞ b = a ⊕ gyr[a, ⊖b](b)`.
    fn coadd(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let gyrated = self.gyr(a, &self.inverse(b)?, b)?;
        self.op(a, &gyrated)
    }

    /// `a ⊟ b = a ⊞ (⊖b)`.
    fn cosub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.coadd(a, &self.inverse(b)?)
    }
}
