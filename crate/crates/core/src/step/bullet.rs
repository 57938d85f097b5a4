use super::StepFunction;
use crate::error::{GyroError, Result};
use crate::gyro::{Element, GyroInstance, Gyrogroup};
use crate::scalar::Real;

/// `(G•, ⊕•)` over a base instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepGyrogroup<F> {
    base: GyroInstance<F>,
}

impl<F: Real> StepGyrogroup<F> {
    pub fn new(base: GyroInstance<F>) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &GyroInstance<F> {
        &self.base
    }

    fn owns(&self, f: &StepFunction<F>) -> Result<()> {
        if f.instance().same_structure(&self.base) {
            Ok(())
        } else {
            Err(GyroError::InstanceMismatch(self.base.to_string(), f.instance().to_string()))
        }
    }
}

impl<F: Real> Gyrogroup for StepGyrogroup<F> {
    type Elem = StepFunction<F>;

    fn identity(&self) -> StepFunction<F> {
        StepFunction::identity(&self.base)
    }

    fn op(&self, f: &StepFunction<F>, g: &StepFunction<F>) -> Result<StepFunction<F>> {
        self.owns(f)?;
        self.owns(g)?;
        f.zip_with(g, |x, y| self.base.op(x, y))
    }

    fn inverse(&self, f: &StepFunction<F>) -> Result<StepFunction<F>> {
        self.owns(f)?;
        f.map_into(&self.base, |x| self.base.inverse(x))
    }

    fn equiv(&self, f: &StepFunction<F>, g: &StepFunction<F>) -> bool {
        self.owns(f).is_ok() && self.owns(g).is_ok() && f.equiv(g)
    }
}

impl<F: Real> StepFunction<F> {
    fn bullet(&self) -> StepGyrogroup<F> {
        StepGyrogroup::new(*self.instance())
    }

    /// `(f ⊕• g)(r) = f(r) ⊕ g(r)`.
    pub fn add(&self, g: &Self) -> Result<Self> {
        self.bullet().op(self, g)
    }

    /// `(⊖•f)(r) = ⊖f(r)`.
    pub fn neg(&self) -> Result<Self> {
        self.bullet().inverse(self)
    }

    /// `f ⊖• g`.
    pub fn sub(&self, g: &Self) -> Result<Self> {
        self.bullet().sub(self, g)
    }

    /// `gyr[f, g](h) = ⊖•(f ⊕• g) ⊕• (f ⊕• (g ⊕• h))`.
    pub fn gyr(f: &Self, g: &Self, h: &Self) -> Result<Self> {
        f.bullet().gyr(f, g, h)
    }

    /// `r ↦ gyr[f(r), g(r)](h(r))` on the common refinement.
    pub fn gyr_pointwise(f: &Self, g: &Self, h: &Self) -> Result<Self> {
        let base = *f.instance();
        f.zip3_with(g, h, |x, y, z| base.gyr(x, y, z))
    }

    /// `f ⊞• g = f ⊕• gyr[f, ⊖•g](g)`.
    pub fn coadd(&self, g: &Self) -> Result<Self> {
        self.bullet().coadd(self, g)
    }

    /// `f ⊟• g = f ⊞• (⊖•g)`.
    pub fn cosub(&self, g: &Self) -> Result<Self> {
        self.bullet().cosub(self, g)
    }

    /// Pointwise ⊕ with a constant on the right.
    pub fn add_constant(&self, x: &Element<F>) -> Result<Self> {
        let base = *self.instance();
        self.map_into(&base, |y| base.op(y, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn l(k: usize) -> Element<f64> {
        Element::Label(k)
    }

    #[test]
    fn pointwise_sum_collapses_to_identity() {
        let g = GyroInstance::<f64>::cyclic(5).unwrap();
        let f = StepFunction::from_parts(&g, vec![l(2), l(3)], &[ratio(1, 2)]).unwrap();
        let h = StepFunction::from_parts(&g, vec![l(3), l(2)], &[ratio(1, 2)]).unwrap();
        assert_eq!(f.add(&h).unwrap(), StepFunction::identity(&g));
        assert_eq!(StepFunction::identity(&g).add(&f).unwrap(), f);
        assert_eq!(f.add(&f.neg().unwrap()).unwrap(), StepFunction::identity(&g));
    }

    #[test]
    fn refinement_of_different_partitions() {
        let g = GyroInstance::<f64>::cyclic(5).unwrap();
        let f = StepFunction::from_parts(&g, vec![l(1), l(2)], &[ratio(1, 3)]).unwrap();
        let h = StepFunction::from_parts(&g, vec![l(1), l(0)], &[ratio(1, 2)]).unwrap();
        let s = f.add(&h).unwrap();
        assert_eq!(s.breakpoints(), &[ratio(0, 1), ratio(1, 3), ratio(1, 2), ratio(1, 1)]);
        assert_eq!(s.values(), &[l(2), l(3), l(2)]);
    }

    #[test]
    fn instance_mismatch() {
        let a = StepFunction::identity(&GyroInstance::<f64>::cyclic(5).unwrap());
        let b = StepFunction::identity(&GyroInstance::<f64>::cyclic(6).unwrap());
        assert!(matches!(a.add(&b), Err(GyroError::InstanceMismatch(..))));
    }

    #[test]
    fn gyration_on_mobius_step_functions_is_pointwise() {
        let g = GyroInstance::<f64>::mobius();
        let f = StepFunction::from_parts(&g, vec![Element::disk(0.0, 0.5), Element::disk(0.2, 0.1)], &[ratio(1, 3)])
            .unwrap();
        let k = StepFunction::from_parts(&g, vec![Element::disk(0.5, 0.0), Element::disk(-0.4, 0.3)], &[ratio(1, 2)])
            .unwrap();
        let h = StepFunction::constant(&g, Element::disk(0.5, 0.0)).unwrap();
        let formula = StepFunction::gyr(&f, &k, &h).unwrap();
        let pointwise = StepFunction::gyr_pointwise(&f, &k, &h).unwrap();
        assert!(formula.equiv(&pointwise));
        // first interval: gyr[0.5i, 0.5](0.5) = (15/34, 4/17)
        let first = formula.eval(&ratio(0, 1)).unwrap();
        assert!(g.equiv(first, &Element::disk(15.0 / 34.0, 4.0 / 17.0)));
    }
}
