use std::fmt;

use num_complex::Complex;

use crate::scalar::Real;

/// A carrier value of one of the shipped instances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element<F> {
    /// Index into a finite carrier.
    Label(usize),
    /// Point of the open complex unit disk.
    Disk(Complex<F>),
    /// Relativistic velocity, Euclidean norm below the speed limit.
    Velocity([F; 3]),
}

impl<F: Real> Element<F> {
    pub fn disk(re: F, im: F) -> Self {
        Element::Disk(Complex::new(re, im))
    }

    pub fn label(&self) -> Option<usize> {
        match self {
            Element::Label(k) => Some(*k),
            _ => None,
        }
    }

    /// Euclidean norm; `None` for finite labels.
    pub fn norm(&self) -> Option<F> {
        match self {
            Element::Label(_) => None,
            Element::Disk(z) => Some(z.norm()),
            Element::Velocity(v) => Some(norm3(v)),
        }
    }

    /// Coordinates as a flat slice-like vector (empty for labels).
    pub fn coordinates(&self) -> Vec<F> {
        match self {
            Element::Label(_) => Vec::new(),
            Element::Disk(z) => vec![z.re, z.im],
            Element::Velocity(v) => v.to_vec(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Element::Label(_) => "label",
            Element::Disk(_) => "disk point",
            Element::Velocity(_) => "velocity",
        }
    }
}

impl<F: Real> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Label(k) => write!(f, "{k}"),
            Element::Disk(z) => write!(f, "({}, {})", z.re, z.im),
            Element::Velocity(v) => write!(f, "({}, {}, {})", v[0], v[1], v[2]),
        }
    }
}

pub(crate) fn dot3<F: Real>(a: &[F; 3], b: &[F; 3]) -> F {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3<F: Real>(a: &[F; 3]) -> F {
    dot3(a, a).sqrt()
}

pub(crate) fn scale3<F: Real>(s: F, a: &[F; 3]) -> [F; 3] {
    [s * a[0], s * a[1], s * a[2]]
}

pub(crate) fn add3<F: Real>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}
