use num_traits::{Signed, Zero};

use super::Partition;
use crate::error::{GyroError, Result};
use crate::gyro::{Element, GyroInstance, Gyrogroup, NeighborhoodSpec};
use crate::rational::{cmp_rational, Rational};
use crate::scalar::Real;

/// A piecewise-constant map `[0, 1) → G` with exact rational breakpoints.
///
/// Always held in canonical form: adjacent intervals carry values that
/// differ under the instance's equality discipline. With a positive
/// tolerance merging keeps the leftmost value of a run, so it never splits.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction<F> {
    instance: GyroInstance<F>,
    partition: Partition,
    values: Vec<Element<F>>,
}

impl<F: Real> StepFunction<F> {
    /// Value `values[k]` on `[aₖ, aₖ₊₁)` with `a₀ = 0` and a final `1`
    /// appended to `cuts`.
    pub fn from_parts(g: &GyroInstance<F>, values: Vec<Element<F>>, cuts: &[Rational]) -> Result<Self> {
        if values.len() != cuts.len() + 1 {
            return Err(GyroError::LengthMismatch { expected: cuts.len() + 1, found: values.len() });
        }
        let partition = Partition::from_cuts(cuts)?;
        Self::on_partition(g, partition, values)
    }

    /// Builds from a full partition and one value per interval.
    pub fn on_partition(g: &GyroInstance<F>, partition: Partition, values: Vec<Element<F>>) -> Result<Self> {
        if values.len() != partition.len() {
            return Err(GyroError::LengthMismatch { expected: partition.len(), found: values.len() });
        }
        for v in &values {
            g.check(v)?;
        }
        Ok(Self::canonical(*g, partition, values))
    }

    /// The constant function `x•`.
    pub fn constant(g: &GyroInstance<F>, x: Element<F>) -> Result<Self> {
        g.check(&x)?;
        Ok(Self { instance: *g, partition: Partition::trivial(), values: vec![x] })
    }

    /// `0•`.
    pub fn identity(g: &GyroInstance<F>) -> Self {
        Self { instance: *g, partition: Partition::trivial(), values: vec![g.identity()] }
    }

    /// Merges runs of equal neighbours. Inputs are trusted to be in the carrier.
    pub(crate) fn canonical(g: GyroInstance<F>, partition: Partition, values: Vec<Element<F>>) -> Self {
        debug_assert_eq!(partition.len(), values.len());
        let points = partition.points();
        let mut kept_points = vec![points[0].clone()];
        let mut kept_values: Vec<Element<F>> = Vec::with_capacity(values.len());
        for (k, v) in values.into_iter().enumerate() {
            match kept_values.last() {
                Some(last) if g.equiv(last, &v) => {}
                _ => {
                    if k > 0 {
                        kept_points.push(points[k].clone());
                    }
                    kept_values.push(v);
                }
            }
        }
        kept_points.push(points[points.len() - 1].clone());
        let partition = Partition::from_sorted(kept_points);
        Self { instance: g, partition, values: kept_values }
    }

    pub fn instance(&self) -> &GyroInstance<F> {
        &self.instance
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn breakpoints(&self) -> &[Rational] {
        self.partition.points()
    }

    pub fn values(&self) -> &[Element<F>] {
        &self.values
    }

    pub fn num_pieces(&self) -> usize {
        self.values.len()
    }

    /// `(start, end, value)` for each interval of the canonical form.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational, &Element<F>)> {
        self.partition.intervals().zip(&self.values).map(|((a, b), v)| (a, b, v))
    }

    pub fn is_constant(&self) -> bool {
        self.values.len() == 1
    }

    pub fn constant_value(&self) -> Option<&Element<F>> {
        if self.is_constant() {
            self.values.first()
        } else {
            None
        }
    }

    pub fn eval(&self, r: &Rational) -> Result<&Element<F>> {
        self.partition.locate(r).map(|k| &self.values[k]).ok_or(GyroError::OutsideDomain)
    }

    /// Values on each interval of `finer`, which must refine this function's
    /// partition.
    pub fn values_on(&self, finer: &Partition) -> Vec<Element<F>> {
        let ends = &self.partition.points()[1..];
        let mut k = 0;
        finer
            .intervals()
            .map(|(start, _)| {
                while cmp_rational(start, &ends[k]).is_ge() {
                    k += 1;
                }
                self.values[k]
            })
            .collect()
    }

    pub(crate) fn ensure_same_instance(&self, other: &Self) -> Result<()> {
        if self.instance.same_structure(&other.instance) {
            Ok(())
        } else {
            Err(GyroError::InstanceMismatch(self.instance.to_string(), other.instance.to_string()))
        }
    }

    /// Applies `op` to every value, producing a function over `target`.
    pub fn map_into(
        &self,
        target: &GyroInstance<F>,
        op: impl FnMut(&Element<F>) -> Result<Element<F>>,
    ) -> Result<Self> {
        let values = self.values.iter().map(op).collect::<Result<Vec<_>>>()?;
        Self::on_partition(target, self.partition.clone(), values)
    }

    /// Pointwise binary combination on the common refinement.
    pub fn zip_with(
        &self,
        other: &Self,
        mut op: impl FnMut(&Element<F>, &Element<F>) -> Result<Element<F>>,
    ) -> Result<Self> {
        self.ensure_same_instance(other)?;
        let common = self.partition.refine(&other.partition);
        let values = self
            .values_on(&common)
            .iter()
            .zip(other.values_on(&common))
            .map(|(a, b)| op(a, &b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::canonical(self.instance, common, values))
    }

    /// Pointwise ternary combination on the common refinement.
    pub fn zip3_with(
        &self,
        second: &Self,
        third: &Self,
        mut op: impl FnMut(&Element<F>, &Element<F>, &Element<F>) -> Result<Element<F>>,
    ) -> Result<Self> {
        self.ensure_same_instance(second)?;
        self.ensure_same_instance(third)?;
        let common = self.partition.refine(&second.partition).refine(&third.partition);
        let (xs, ys, zs) = (self.values_on(&common), second.values_on(&common), third.values_on(&common));
        let values = xs
            .iter()
            .zip(&ys)
            .zip(&zs)
            .map(|((x, y), z)| op(x, y, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::canonical(self.instance, common, values))
    }

    /// Exact `μ({r ∈ J : f(r) ∉ V})`.
    pub fn bad_measure(&self, v: &NeighborhoodSpec<F>) -> Result<Rational> {
        v.validate(&self.instance)?;
        Ok(self
            .pieces()
            .filter(|(_, _, x)| !v.contains(&self.instance, x))
            .fold(Rational::zero(), |acc, (a, b, _)| acc + (b - a)))
    }

    /// `f ∈ O(V, ε)`, i.e. `bad_measure(f, V) < ε`.
    pub fn in_neighborhood(&self, v: &NeighborhoodSpec<F>, eps: &Rational) -> Result<bool> {
        if !eps.is_positive() {
            return Err(GyroError::NonPositiveEpsilon);
        }
        Ok(&self.bad_measure(v)? < eps)
    }

    /// Exact `μ({r : (⊖f(r)) ⊕ g(r) ∉ V})`, evaluated on the raw common
    /// refinement so no merging can move a value across the boundary of `V`.
    pub fn translate_bad_measure(&self, g: &Self, v: &NeighborhoodSpec<F>) -> Result<Rational> {
        self.ensure_same_instance(g)?;
        v.validate(&self.instance)?;
        let gi = &self.instance;
        let common = self.partition.refine(&g.partition);
        let mut bad = Rational::zero();
        for (((a, b), x), y) in common.intervals().zip(self.values_on(&common)).zip(g.values_on(&common)) {
            let d = gi.op(&gi.inverse(&x)?, &y)?;
            if !v.contains(gi, &d) {
                bad += b - a;
            }
        }
        Ok(bad)
    }

    /// `g ∈ f ⊕• O(V, ε)`, decided as `(⊖•f) ⊕• g ∈ O(V, ε)`.
    pub fn translate_contains(&self, g: &Self, v: &NeighborhoodSpec<F>, eps: &Rational) -> Result<bool> {
        if !eps.is_positive() {
            return Err(GyroError::NonPositiveEpsilon);
        }
        Ok(&self.translate_bad_measure(g, v)? < eps)
    }

    /// Exact `μ({r : f(r) ≠ g(r)})` under the instance's equality.
    pub fn disagreement_measure(&self, g: &Self) -> Result<Rational> {
        self.ensure_same_instance(g)?;
        let common = self.partition.refine(&g.partition);
        Ok(common
            .intervals()
            .zip(self.values_on(&common).iter().zip(g.values_on(&common)))
            .filter(|(_, (x, y))| !self.instance.equiv(x, y))
            .fold(Rational::zero(), |acc, ((a, b), _)| acc + (b - a)))
    }

    /// Pointwise equality under the instance's equality discipline.
    pub fn equiv(&self, g: &Self) -> bool {
        if self.instance.is_exact() && self.instance.same_structure(&g.instance) {
            // canonical forms are unique under exact equality
            return self == g;
        }
        self.disagreement_measure(g).is_ok_and(|m| m.is_zero())
    }

    /// Smallest breakpoint gap; the cut tuple lies in `A_{n,m}` iff this is `≥ 1/m`.
    pub fn min_gap(&self) -> Rational {
        self.partition.min_gap()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn z5() -> GyroInstance<f64> {
        GyroInstance::cyclic(5).unwrap()
    }

    fn l(k: usize) -> Element<f64> {
        Element::Label(k)
    }

    #[test]
    fn from_parts_examples() {
        let g = z5();
        let c = StepFunction::from_parts(&g, vec![l(3)], &[]).unwrap();
        assert!(c.is_constant());
        let merged = StepFunction::from_parts(&g, vec![l(3), l(3)], &[ratio(1, 2)]).unwrap();
        assert_eq!(merged, c);
        let f = StepFunction::from_parts(&g, vec![l(2), l(3)], &[ratio(1, 3)]).unwrap();
        assert_eq!(f.breakpoints(), &[int(0), ratio(1, 3), int(1)]);
        assert_eq!(f.eval(&ratio(1, 4)).unwrap(), &l(2));
        assert_eq!(f.eval(&ratio(1, 3)).unwrap(), &l(3));
        assert!(f.eval(&int(1)).is_err());
    }

    #[test]
    fn from_parts_errors() {
        let g = z5();
        assert!(matches!(
            StepFunction::from_parts(&g, vec![l(1)], &[ratio(1, 2)]),
            Err(GyroError::LengthMismatch { .. })
        ));
        assert_eq!(
            StepFunction::from_parts(&g, vec![l(1), l(2), l(3)], &[ratio(2, 3), ratio(1, 3)]),
            Err(GyroError::InvalidCuts)
        );
        assert!(StepFunction::from_parts(&g, vec![l(1), l(7)], &[ratio(1, 3)]).is_err());
    }

    #[test]
    fn bad_measure_examples() {
        let g = z5();
        let zero_only = NeighborhoodSpec::identity_only(&g);
        let f = StepFunction::from_parts(&g, vec![l(1), l(0)], &[ratio(1, 4)]).unwrap();
        assert_eq!(f.bad_measure(&zero_only).unwrap(), ratio(1, 4));
        assert_eq!(StepFunction::identity(&g).bad_measure(&zero_only).unwrap(), int(0));

        // {0, 1} closes to {0, 1, 4}; 2 stays outside on [1/3, 1/2).
        let v = NeighborhoodSpec::set(&g, [l(0), l(1)]).unwrap();
        let f = StepFunction::from_parts(&g, vec![l(1), l(2), l(0)], &[ratio(1, 3), ratio(1, 2)]).unwrap();
        assert_eq!(f.bad_measure(&v).unwrap(), ratio(1, 6));
    }

    #[test]
    fn neighborhood_is_strict() {
        let g = z5();
        let zero_only = NeighborhoodSpec::identity_only(&g);
        let f = StepFunction::from_parts(&g, vec![l(1), l(0)], &[ratio(1, 4)]).unwrap();
        assert!(!f.in_neighborhood(&zero_only, &ratio(1, 4)).unwrap());
        assert!(f.in_neighborhood(&zero_only, &ratio(1, 3)).unwrap());
        assert!(StepFunction::identity(&g).in_neighborhood(&zero_only, &ratio(1, 1000)).unwrap());
        assert_eq!(f.in_neighborhood(&zero_only, &int(0)), Err(GyroError::NonPositiveEpsilon));
    }

    #[test]
    fn min_gap_examples() {
        let g = z5();
        assert_eq!(StepFunction::identity(&g).min_gap(), int(1));
        let f = StepFunction::from_parts(&g, vec![l(1), l(2), l(3)], &[ratio(1, 3), ratio(1, 2)]).unwrap();
        assert_eq!(f.min_gap(), ratio(1, 6));
        let f = StepFunction::from_parts(&g, vec![l(1), l(2)], &[ratio(1, 2)]).unwrap();
        assert_eq!(f.min_gap(), ratio(1, 2));
    }

    #[test]
    fn tolerance_merging_keeps_left_value() {
        let g = GyroInstance::<f64>::mobius();
        let a = Element::disk(0.1, 0.0);
        let b = Element::disk(0.1 + 1e-12, 0.0);
        let f = StepFunction::from_parts(&g, vec![a, b], &[ratio(1, 2)]).unwrap();
        assert!(f.is_constant());
        assert_eq!(f.values()[0], a);
    }
}
