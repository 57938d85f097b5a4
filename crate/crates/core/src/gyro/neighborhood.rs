use std::fmt;

use super::{Element, GyroInstance, Gyrogroup};
use crate::error::{GyroError, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
enum Shape<F> {
    Set(Vec<Element<F>>),
    Ball(F),
}

/// A symmetric open neighborhood `V` of the identity.
///
/// Explicit sets always contain the identity and are closed under `⊖`:
/// the constructor inserts whatever is missing. Balls `{a : ‖a‖ < ρ}` are
/// symmetric because `⊖` preserves the norm on both continuous carriers.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodSpec<F> {
    shape: Shape<F>,
}

impl<F: Real> NeighborhoodSpec<F> {
    /// Symmetric closure of `{0} ∪ elems`.
    pub fn set(g: &GyroInstance<F>, elems: impl IntoIterator<Item = Element<F>>) -> Result<Self> {
        let mut members: Vec<Element<F>> = vec![g.identity()];
        for e in elems {
            g.check(&e)?;
            let inv = g.inverse(&e)?;
            for x in [e, inv] {
                if !members.iter().any(|m| g.equiv(m, &x)) {
                    members.push(x);
                }
            }
        }
        if g.is_exact() {
            members.sort_by_key(|e| e.label());
        }
        Ok(Self { shape: Shape::Set(members) })
    }

    /// `{0}`.
    pub fn identity_only(g: &GyroInstance<F>) -> Self {
        Self { shape: Shape::Set(vec![g.identity()]) }
    }

    /// The whole finite carrier.
    pub fn everything(g: &GyroInstance<F>) -> Option<Self> {
        g.elements().map(|all| Self { shape: Shape::Set(all) })
    }

    pub fn ball(rho: F) -> Result<Self> {
        if !(rho > F::zero() && rho.is_finite()) {
            return Err(GyroError::InvalidNeighborhood("ball radius must be positive".into()));
        }
        Ok(Self { shape: Shape::Ball(rho) })
    }

    pub fn members(&self) -> Option<&[Element<F>]> {
        match &self.shape {
            Shape::Set(m) => Some(m),
            Shape::Ball(_) => None,
        }
    }

    pub fn radius(&self) -> Option<F> {
        match self.shape {
            Shape::Ball(r) => Some(r),
            Shape::Set(_) => None,
        }
    }

    /// Confirms the neighborhood makes sense over `g`.
    pub fn validate(&self, g: &GyroInstance<F>) -> Result<()> {
        match &self.shape {
            Shape::Ball(_) if g.is_exact() => Err(GyroError::InvalidNeighborhood(format!(
                "norm balls are not defined on the finite carrier {g}"
            ))),
            Shape::Ball(_) => Ok(()),
            Shape::Set(m) => {
                for e in m {
                    g.check(e)?;
                }
                if !m.iter().any(|e| g.equiv(e, &g.identity())) {
                    return Err(GyroError::InvalidNeighborhood("identity missing".into()));
                }
                for e in m {
                    let inv = g.inverse(e)?;
                    if !m.iter().any(|x| g.equiv(x, &inv)) {
                        return Err(GyroError::InvalidNeighborhood(format!("{e} has no inverse in the set")));
                    }
                }
                Ok(())
            }
        }
    }

    /// Exact for finite carriers. For balls the test is `‖a‖ < ρ` in
    /// floating point, so points within rounding distance of the sphere
    /// may land on either side.
    pub fn contains(&self, g: &GyroInstance<F>, a: &Element<F>) -> bool {
        if !g.in_carrier(a) {
            return false;
        }
        match &self.shape {
            Shape::Set(m) => m.iter().any(|x| g.equiv(x, a)),
            Shape::Ball(rho) => a.norm().is_some_and(|n| n < *rho),
        }
    }

    /// `U ∩ V`.
    pub fn intersection(&self, g: &GyroInstance<F>, other: &Self) -> Self {
        let shape = match (&self.shape, &other.shape) {
            (Shape::Ball(a), Shape::Ball(b)) => Shape::Ball(a.min(*b)),
            (Shape::Set(m), _) => Shape::Set(m.iter().filter(|e| other.contains(g, e)).copied().collect()),
            (Shape::Ball(_), Shape::Set(m)) => {
                Shape::Set(m.iter().filter(|e| self.contains(g, e)).copied().collect())
            }
        };
        Self { shape }
    }

    /// Decides `self ⊆ other` where the answer is computable; a ball is
    /// never inside a finite set.
    pub fn is_subset_of(&self, g: &GyroInstance<F>, other: &Self) -> bool {
        match (&self.shape, &other.shape) {
            (Shape::Set(m), _) => m.iter().all(|e| other.contains(g, e)),
            (Shape::Ball(a), Shape::Ball(b)) => a <= b,
            (Shape::Ball(_), Shape::Set(_)) => false,
        }
    }

    /// Decides `V ⊕ V ⊆ U` (exhaustive for sets, gyrotriangle bound for balls).
    pub fn sum_within(&self, g: &GyroInstance<F>, u: &Self) -> Result<bool> {
        match (&self.shape, &u.shape) {
            (Shape::Set(m), _) => {
                for a in m {
                    for b in m {
                        if !u.contains(g, &g.op(a, b)?) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            (Shape::Ball(r), Shape::Ball(ru)) => {
                let bound = g
                    .norm_sum_bound(*r, *r)
                    .ok_or_else(|| GyroError::InvalidNeighborhood("ball on a finite carrier".into()))?;
                Ok(bound <= *ru)
            }
            (Shape::Ball(_), Shape::Set(_)) => Ok(false),
        }
    }

    /// Decides `⊖V ⊆ U`.
    pub fn inverse_within(&self, g: &GyroInstance<F>, u: &Self) -> Result<bool> {
        match &self.shape {
            Shape::Set(m) => {
                for a in m {
                    if !u.contains(g, &g.inverse(a)?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Shape::Ball(_) => Ok(self.is_subset_of(g, u)),
        }
    }
}

impl<F: Real> fmt::Display for NeighborhoodSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Ball(r) => write!(f, "ball({r})"),
            Shape::Set(m) => {
                write!(f, "{{")?;
                for (i, e) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
        }
    }
}
