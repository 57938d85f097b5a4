use std::fmt;

use num_complex::Complex;

use super::element::{add3, dot3, scale3};
use super::{Element, Gyrogroup, NeighborhoodSpec};
use crate::error::{GyroError, Result};
use crate::scalar::Real;

/// Permutations of `{0, 1, 2}` in lexicographic order; label `k` is `S3_PERMS[k]`.
const S3_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn s3_index(p: [usize; 3]) -> usize {
    S3_PERMS
        .iter()
        .position(|q| *q == p)
        .expect("composition of permutations is a permutation")
}

/// `(a ∘ b)(i) = a(b(i))`.
fn s3_compose(a: usize, b: usize) -> usize {
    let (pa, pb) = (S3_PERMS[a], S3_PERMS[b]);
    s3_index([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
}

fn s3_inverse(a: usize) -> usize {
    let p = S3_PERMS[a];
    let mut inv = [0; 3];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    s3_index(inv)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kind<F> {
    /// `ℤ/n` under addition.
    Cyclic { n: usize },
    /// The symmetric group on three letters.
    S3,
    /// Möbius addition on the open complex unit disk.
    Mobius,
    /// Einstein velocity addition on the open ball of radius `c` in R³.
    Einstein { c: F },
}

/// A concrete gyrogroup together with its equality discipline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GyroInstance<F> {
    kind: Kind<F>,
    tolerance: F,
}

impl<F: Real> GyroInstance<F> {
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GyroError::InvalidInstance("cyclic order must be positive".into()));
        }
        Ok(Self { kind: Kind::Cyclic { n }, tolerance: F::zero() })
    }

    pub fn s3() -> Self {
        Self { kind: Kind::S3, tolerance: F::zero() }
    }

    pub fn mobius() -> Self {
        Self { kind: Kind::Mobius, tolerance: F::default_tolerance() }
    }

    pub fn einstein(c: F) -> Result<Self> {
        if !(c > F::zero() && c.is_finite()) {
            return Err(GyroError::InvalidInstance("speed limit must be positive".into()));
        }
        Ok(Self { kind: Kind::Einstein { c }, tolerance: F::default_tolerance() })
    }

    /// Overrides the tolerance of a continuous instance. Finite instances
    /// always compare exactly.
    pub fn with_tolerance(mut self, tolerance: F) -> Result<Self> {
        if !(tolerance >= F::zero() && tolerance.is_finite()) {
            return Err(GyroError::InvalidInstance("tolerance must be non-negative".into()));
        }
        if self.is_continuous() {
            self.tolerance = tolerance;
        }
        Ok(self)
    }

    pub fn kind(&self) -> Kind<F> {
        self.kind
    }

    pub fn tolerance(&self) -> F {
        self.tolerance
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Cyclic { .. } | Kind::S3)
    }

    pub fn is_continuous(&self) -> bool {
        !self.is_exact()
    }

    /// Same carrier and operation; tolerances may differ.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.kind == other.kind
    }

    /// Number of elements of a finite carrier.
    pub fn order(&self) -> Option<usize> {
        match self.kind {
            Kind::Cyclic { n } => Some(n),
            Kind::S3 => Some(6),
            _ => None,
        }
    }

    /// All elements of a finite carrier, in label order.
    pub fn elements(&self) -> Option<Vec<Element<F>>> {
        self.order().map(|n| (0..n).map(Element::Label).collect())
    }

    /// Radius of the continuous carrier.
    pub fn radius(&self) -> Option<F> {
        match self.kind {
            Kind::Mobius => Some(F::one()),
            Kind::Einstein { c } => Some(c),
            _ => None,
        }
    }

    pub fn label(&self, k: usize) -> Result<Element<F>> {
        let e = Element::Label(k);
        self.check(&e)?;
        Ok(e)
    }

    pub fn disk(&self, re: F, im: F) -> Result<Element<F>> {
        let e = Element::disk(re, im);
        self.check(&e)?;
        Ok(e)
    }

    pub fn velocity(&self, v: [F; 3]) -> Result<Element<F>> {
        let e = Element::Velocity(v);
        self.check(&e)?;
        Ok(e)
    }

    /// Carrier membership, including the boundary guard for continuous kinds.
    pub fn check(&self, a: &Element<F>) -> Result<()> {
        let mismatch = || GyroError::CarrierMismatch { element: a.to_string(), instance: self.to_string() };
        match (self.kind, a) {
            (Kind::Cyclic { n }, Element::Label(k)) if *k < n => Ok(()),
            (Kind::S3, Element::Label(k)) if *k < 6 => Ok(()),
            (Kind::Mobius, Element::Disk(_)) | (Kind::Einstein { .. }, Element::Velocity(_)) => {
                let norm = a.norm().expect("continuous element has a norm");
                if !a.coordinates().iter().all(|x| x.is_finite()) {
                    return Err(GyroError::OutsideCarrier(a.to_string()));
                }
                if norm < self.boundary_limit() {
                    Ok(())
                } else {
                    Err(GyroError::OutsideCarrier(a.to_string()))
                }
            }
            _ => Err(mismatch()),
        }
    }

    pub fn in_carrier(&self, a: &Element<F>) -> bool {
        self.check(a).is_ok()
    }

    fn boundary_limit(&self) -> F {
        self.radius().unwrap_or_else(F::infinity) * (F::one() - F::boundary_margin())
    }

    fn guard(&self, r: Element<F>) -> Result<Element<F>> {
        match r.norm() {
            Some(norm) if !(norm < self.boundary_limit()) => Err(GyroError::EscapesCarrier),
            _ => Ok(r),
        }
    }

    pub fn norm(&self, a: &Element<F>) -> Option<F> {
        a.norm()
    }

    /// Membership test backing `O(V, ε)`.
    pub fn contains(&self, v: &NeighborhoodSpec<F>, a: &Element<F>) -> bool {
        v.contains(self, a)
    }

    /// Upper bound on `‖a ⊕ b‖` given `‖a‖ ≤ s` and `‖b‖ ≤ t`: the scalar
    /// gyro-sum `(s + t) / (1 + st / r²)`. Also bounds the gyrodistance
    /// across an intermediate point.
    pub fn norm_sum_bound(&self, s: F, t: F) -> Option<F> {
        let r = self.radius()?;
        Some((s + t) / (F::one() + s * t / (r * r)))
    }

    /// Gyrodistance `‖⊖a ⊕ b‖`, invariant under left translations.
    pub fn gyrodistance(&self, a: &Element<F>, b: &Element<F>) -> Result<F> {
        let d = self.op(&self.inverse(a)?, b)?;
        d.norm().ok_or_else(|| GyroError::Unsupported("gyrodistance on a finite carrier".into()))
    }

    fn lorentz(&self, v: &[F; 3], c: F) -> F {
        let beta2 = dot3(v, v) / (c * c);
        F::one() / (F::one() - beta2).sqrt()
    }

    fn einstein_add(&self, u: &[F; 3], v: &[F; 3], c: F) -> [F; 3] {
        let c2 = c * c;
        let gu = self.lorentz(u, c);
        let uv = dot3(u, v);
        let num = add3(
            &add3(u, &scale3(F::one() / gu, v)),
            &scale3(gu / (F::one() + gu) * uv / c2, u),
        );
        scale3(F::one() / (F::one() + uv / c2), &num)
    }

    /// Closed-form Einstein gyration `w + (A u + B v) / D`.
    fn einstein_gyr(&self, u: &[F; 3], v: &[F; 3], w: &[F; 3], c: F) -> [F; 3] {
        let one = F::one();
        let two = one + one;
        let c2 = c * c;
        let gu = self.lorentz(u, c);
        let gv = self.lorentz(v, c);
        let uv = dot3(u, v);
        let uw = dot3(u, w);
        let vw = dot3(v, w);
        let a = -(gu * gu / (gu + one)) * (gv - one) * uw / c2
            + gu * gv * vw / c2
            + two * (gu * gu * gv * gv) / ((gu + one) * (gv + one)) * uv * vw / (c2 * c2);
        let b = -(gv / (gv + one)) * (gu * (gv + one) * uw + (gu - one) * gv * vw) / c2;
        let d = gu * gv * (one + uv / c2) + one;
        add3(w, &scale3(one / d, &add3(&scale3(a, u), &scale3(b, v))))
    }
}

impl<F: Real> Gyrogroup for GyroInstance<F> {
    type Elem = Element<F>;

    fn identity(&self) -> Element<F> {
        match self.kind {
            Kind::Cyclic { .. } | Kind::S3 => Element::Label(0),
            Kind::Mobius => Element::Disk(Complex::new(F::zero(), F::zero())),
            Kind::Einstein { .. } => Element::Velocity([F::zero(); 3]),
        }
    }

    fn op(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>> {
        self.check(a)?;
        self.check(b)?;
        let r = match (self.kind, a, b) {
            (Kind::Cyclic { n }, Element::Label(x), Element::Label(y)) => Element::Label((x + y) % n),
            (Kind::S3, Element::Label(x), Element::Label(y)) => Element::Label(s3_compose(*x, *y)),
            (Kind::Mobius, Element::Disk(x), Element::Disk(y)) => {
                let one = Complex::new(F::one(), F::zero());
                Element::Disk((x + y) / (one + x.conj() * y))
            }
            (Kind::Einstein { c }, Element::Velocity(u), Element::Velocity(v)) => {
                Element::Velocity(self.einstein_add(u, v, c))
            }
            _ => unreachable!("operands were checked against the carrier"),
        };
        self.guard(r)
    }

    fn inverse(&self, a: &Element<F>) -> Result<Element<F>> {
        self.check(a)?;
        Ok(match (self.kind, a) {
            (Kind::Cyclic { n }, Element::Label(x)) => Element::Label((n - x) % n),
            (Kind::S3, Element::Label(x)) => Element::Label(s3_inverse(*x)),
            (_, Element::Disk(z)) => Element::Disk(-z),
            (_, Element::Velocity(v)) => Element::Velocity(scale3(-F::one(), v)),
            _ => unreachable!("operand was checked against the carrier"),
        })
    }

    fn equiv(&self, a: &Element<F>, b: &Element<F>) -> bool {
        match (a, b) {
            (Element::Label(x), Element::Label(y)) => x == y,
            (Element::Disk(_), Element::Disk(_)) | (Element::Velocity(_), Element::Velocity(_)) => a
                .coordinates()
                .iter()
                .zip(b.coordinates())
                .all(|(x, y)| (*x - y).abs() <= self.tolerance),
            _ => false,
        }
    }

    fn gyr(&self, a: &Element<F>, b: &Element<F>, z: &Element<F>) -> Result<Element<F>> {
        match (self.kind, a, b, z) {
            (Kind::Cyclic { .. } | Kind::S3, _, _, _) => {
                self.check(a)?;
                self.check(b)?;
                self.check(z)?;
                Ok(*z)
            }
            (Kind::Mobius, Element::Disk(x), Element::Disk(y), Element::Disk(w)) => {
                self.check(a)?;
                self.check(b)?;
                self.check(z)?;
                let one = Complex::new(F::one(), F::zero());
                let factor = (one + x * y.conj()) / (one + x.conj() * y);
                self.guard(Element::Disk(factor * w))
            }
            (Kind::Einstein { c }, Element::Velocity(u), Element::Velocity(v), Element::Velocity(w)) => {
                self.check(a)?;
                self.check(b)?;
                self.check(z)?;
                self.guard(Element::Velocity(self.einstein_gyr(u, v, w, c)))
            }
            _ => self.gyr_formula(a, b, z),
        }
    }
}

impl<F: Real> fmt::Display for GyroInstance<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Cyclic { n } => write!(f, "Z/{n}"),
            Kind::S3 => write!(f, "S3"),
            Kind::Mobius => write!(f, "Mobius disk"),
            Kind::Einstein { c } => write!(f, "Einstein ball (c = {c})"),
        }
    }
}
