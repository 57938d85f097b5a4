use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{GyroError, Result};
use crate::rational::{cmp_rational, int, ratio, Rational};

/// Breakpoints `0 = a₀ < a₁ < … < aₙ = 1` of a partition of `[0, 1)` into
/// half-open intervals `[aₖ, aₖ₊₁)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    points: Vec<Rational>,
}

impl Partition {
    /// Validates a full breakpoint list including both endpoints.
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        let valid = points.len() >= 2
            && points.first().is_some_and(Zero::is_zero)
            && points.last().is_some_and(One::is_one)
            && points.windows(2).all(|w| w[0] < w[1]);
        if valid {
            Ok(Self { points })
        } else {
            Err(GyroError::InvalidBreakpoints)
        }
    }

    /// Partition from interior cuts `a₁ < … < aₙ` inside `(0, 1)`.
    pub fn from_cuts(cuts: &[Rational]) -> Result<Self> {
        let mut points = Vec::with_capacity(cuts.len() + 2);
        points.push(Rational::zero());
        points.extend(cuts.iter().cloned());
        points.push(Rational::one());
        Self::new(points).map_err(|_| GyroError::InvalidCuts)
    }

    /// Trusted constructor for subsequences of valid partitions.
    pub(crate) fn from_sorted(points: Vec<Rational>) -> Self {
        debug_assert!(points.windows(2).all(|w| cmp_rational(&w[0], &w[1]).is_lt()));
        Self { points }
    }

    /// The single interval `[0, 1)`.
    pub fn trivial() -> Self {
        Self { points: vec![Rational::zero(), Rational::one()] }
    }

    /// `n` intervals of length `1/n`.
    pub fn uniform(n: u32) -> Self {
        assert!(n > 0, "a partition has at least one interval");
        Self { points: (0..=i64::from(n)).map(|k| ratio(k, i64::from(n))).collect() }
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// Interior breakpoints.
    pub fn cuts(&self) -> &[Rational] {
        &self.points[1..self.points.len() - 1]
    }

    /// Number of intervals.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn intervals(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn lengths(&self) -> impl Iterator<Item = Rational> + '_ {
        self.points.windows(2).map(|w| &w[1] - &w[0])
    }

    /// Common refinement by sorted merge.
    pub fn refine(&self, other: &Partition) -> Partition {
        let (a, b) = (&self.points, &other.points);
        if a == b || b.len() == 2 {
            return self.clone();
        }
        if a.len() == 2 {
            return other.clone();
        }
        let mut points = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => match cmp_rational(x, y) {
                    Ordering::Less => {
                        i += 1;
                        x
                    }
                    Ordering::Greater => {
                        j += 1;
                        y
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        x
                    }
                },
                (Some(x), None) => {
                    i += 1;
                    x
                }
                (None, Some(y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            points.push(next.clone());
        }
        Partition { points }
    }

    /// Adds extra breakpoints strictly inside `(0, 1)`.
    pub fn with_points(&self, extra: &[Rational]) -> Result<Partition> {
        let mut sorted: Vec<Rational> = extra.to_vec();
        sorted.sort();
        sorted.dedup();
        let zero = Rational::zero();
        let one = Rational::one();
        if sorted.iter().any(|p| p <= &zero || p >= &one) {
            return Err(GyroError::InvalidCuts);
        }
        Ok(self.refine(&Partition::from_cuts(&sorted)?))
    }

    /// Whether every breakpoint of `self` is a breakpoint of `finer`.
    pub fn is_refined_by(&self, finer: &Partition) -> bool {
        self.points.iter().all(|p| finer.points.binary_search_by(|q| cmp_rational(q, p)).is_ok())
    }

    /// Index of the interval containing `r`.
    pub fn locate(&self, r: &Rational) -> Option<usize> {
        if r < &self.points[0] || r >= &self.points[self.points.len() - 1] {
            return None;
        }
        match self.points.binary_search(r) {
            Ok(k) => Some(k),
            Err(k) => Some(k - 1),
        }
    }

    /// Smallest interval length.
    pub fn min_gap(&self) -> Rational {
        self.lengths().min().unwrap_or_else(|| int(1))
    }
}
