//! Bounded pseudometrics on a carrier and their extension `d•` to step
//! functions.

use num_traits::Zero;

use crate::error::{GyroError, Result};
use crate::gyro::{Element, GyroInstance, Gyrogroup, Kind, LawCheck, NeighborhoodSpec};
use crate::rational::{int, Rational};
use crate::scalar::{MetricScalar, Real};
use crate::step::{Partition, StepFunction};

/// A bounded pseudometric on the carrier of a [`GyroInstance`].
pub trait Pseudometric<F: Real> {
    type Value: MetricScalar;

    fn name(&self) -> &'static str;

    fn distance(&self, g: &GyroInstance<F>, x: &Element<F>, y: &Element<F>) -> Result<Self::Value>;

    /// An upper bound `B` on every distance.
    fn bound(&self) -> Self::Value;

    /// A neighborhood `W` of the identity with `d(x, x ⊕ y) < ε` for every `y ∈ W`.
    fn modulus(&self, g: &GyroInstance<F>, x: &Element<F>, eps: &Self::Value) -> Option<NeighborhoodSpec<F>>;

    /// A radius `δ > 0` with `d(x, u) < δ ⇒ u ∈ x ⊕ V`.
    fn inner_radius(&self, g: &GyroInstance<F>, x: &Element<F>, v: &NeighborhoodSpec<F>) -> Option<Self::Value>;
}

/// `d(x, y) = 1` for `x ≠ y`, exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Discrete;

impl<F: Real> Pseudometric<F> for Discrete {
    type Value = Rational;

    fn name(&self) -> &'static str {
        "discrete"
    }

    fn distance(&self, g: &GyroInstance<F>, x: &Element<F>, y: &Element<F>) -> Result<Rational> {
        g.check(x)?;
        g.check(y)?;
        Ok(if g.equiv(x, y) { Rational::zero() } else { int(1) })
    }

    fn bound(&self) -> Rational {
        int(1)
    }

    fn modulus(&self, g: &GyroInstance<F>, _x: &Element<F>, eps: &Rational) -> Option<NeighborhoodSpec<F>> {
        (g.is_exact() && eps > &Rational::zero()).then(|| NeighborhoodSpec::identity_only(g))
    }

    fn inner_radius(&self, _g: &GyroInstance<F>, _x: &Element<F>, _v: &NeighborhoodSpec<F>) -> Option<Rational> {
        Some(int(1))
    }
}

/// Half the Euclidean chord, `‖x − y‖ / 2R` with `R` the carrier radius,
/// so the bound is 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HalfChord;

impl<F: Real> Pseudometric<F> for HalfChord {
    type Value = F;

    fn name(&self) -> &'static str {
        "euclidean"
    }

    fn distance(&self, g: &GyroInstance<F>, x: &Element<F>, y: &Element<F>) -> Result<F> {
        g.check(x)?;
        g.check(y)?;
        let r = g
            .radius()
            .ok_or_else(|| GyroError::Unsupported(format!("euclidean metric on {g}")))?;
        let chord = x
            .coordinates()
            .iter()
            .zip(y.coordinates())
            .fold(F::zero(), |acc, (a, b)| acc + (*a - b) * (*a - b))
            .sqrt();
        Ok((chord / (r + r)).min(F::one()))
    }

    fn bound(&self) -> F {
        F::one()
    }

    fn modulus(&self, g: &GyroInstance<F>, _x: &Element<F>, eps: &F) -> Option<NeighborhoodSpec<F>> {
        let one = F::one();
        if *eps <= F::zero() {
            return None;
        }
        let rho = match g.kind() {
            Kind::Mobius => (*eps + *eps) / (one + *eps + *eps),
            Kind::Einstein { c } => c * *eps / (one + *eps),
            _ => return None,
        };
        NeighborhoodSpec::ball(rho).ok()
    }

    fn inner_radius(&self, g: &GyroInstance<F>, x: &Element<F>, v: &NeighborhoodSpec<F>) -> Option<F> {
        let rho = v.radius()?;
        match g.kind() {
            Kind::Mobius => {
                let n = x.norm()?;
                let one = F::one();
                Some(rho * (one - n * n) / ((one + one) * (one + rho * n)))
            }
            _ => None,
        }
    }
}

/// `d•(f, g) = Σ (a_{k+1} − a_k) d(x_k, y_k)` over the common refinement.
pub fn d_bullet<F: Real, D: Pseudometric<F>>(d: &D, f: &StepFunction<F>, g: &StepFunction<F>) -> Result<D::Value> {
    let common = f.partition().refine(g.partition());
    d_bullet_on(d, f, g, &common)
}

/// [`d_bullet`] evaluated on a given partition refining both breakpoint sets.
pub fn d_bullet_on<F: Real, D: Pseudometric<F>>(
    d: &D,
    f: &StepFunction<F>,
    g: &StepFunction<F>,
    partition: &Partition,
) -> Result<D::Value> {
    if !f.instance().same_structure(g.instance()) {
        return Err(GyroError::InstanceMismatch(f.instance().to_string(), g.instance().to_string()));
    }
    if !f.partition().is_refined_by(partition) || !g.partition().is_refined_by(partition) {
        return Err(GyroError::Malformed("partition does not refine both functions".into()));
    }
    let inst = f.instance();
    let mut total = D::Value::zero();
    for (((a, b), x), y) in partition.intervals().zip(f.values_on(partition)).zip(g.values_on(partition)) {
        total = total + D::Value::from_ratio(&(b - a)) * d.distance(inst, &x, &y)?;
    }
    Ok(total)
}

/// `δ₀ = ε · min_k δ(x_k)` with `δ` the inner radius at each value of `f`.
pub fn conforming_delta<F: Real, D: Pseudometric<F>>(
    d: &D,
    f: &StepFunction<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
) -> Option<D::Value> {
    let mut smallest: Option<D::Value> = None;
    for x in f.values() {
        let delta = d.inner_radius(f.instance(), x, v)?;
        if smallest.as_ref().is_none_or(|s| delta < *s) {
            smallest = Some(delta);
        }
    }
    smallest.map(|s| D::Value::from_ratio(eps) * s)
}

/// Every candidate `g` with `d•(f, g) < δ₀` must lie in `f ⊕• O(V, ε)`.
/// Without an explicit `δ₀` the conforming value is used.
pub fn metric_topology_check<F: Real, D: Pseudometric<F>>(
    d: &D,
    f: &StepFunction<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    delta0: Option<D::Value>,
    candidates: impl IntoIterator<Item = StepFunction<F>>,
) -> Result<LawCheck> {
    if eps <= &Rational::zero() {
        return Err(GyroError::NonPositiveEpsilon);
    }
    let delta0 = match delta0 {
        Some(x) => x,
        None => conforming_delta(d, f, v, eps).ok_or_else(|| {
            GyroError::Unsupported(format!("no inner radius for {} on {}", d.name(), f.instance()))
        })?,
    };
    if delta0 <= D::Value::zero() {
        return Err(GyroError::Malformed("δ₀ must be positive".into()));
    }
    let mut check = LawCheck { law: "d•(f, g) < δ₀ ⇒ g ∈ f ⊕ O(V, ε)", checked: 0, failures: 0, first_failure: None };
    let mut seen = 0usize;
    for g in candidates {
        seen += 1;
        if d_bullet(d, f, &g)? >= delta0 {
            continue;
        }
        check.checked += 1;
        if !f.translate_contains(&g, v, eps)? {
            check.failures += 1;
            check.first_failure.get_or_insert_with(|| format!("g = {g:?}"));
        }
    }
    if seen == 0 {
        return Err(GyroError::ZeroSamples);
    }
    Ok(check)
}

/// Continuity of `d•`: with `W` the modulus at `ε/2` over all values of `f`,
/// every candidate in `f ⊕• O(W, ε/2B)` has `d•(f, g) < ε`.
pub fn continuity_neighborhood<F: Real, D: Pseudometric<F>>(
    d: &D,
    f: &StepFunction<F>,
    eps: &Rational,
) -> Result<(NeighborhoodSpec<F>, Rational)> {
    let half = D::Value::from_ratio(&(eps / int(2)));
    let g = f.instance();
    let mut w: Option<NeighborhoodSpec<F>> = None;
    for x in f.values() {
        let m = d
            .modulus(g, x, &half)
            .ok_or_else(|| GyroError::Unsupported(format!("no continuity modulus for {} on {g}", d.name())))?;
        w = Some(match w {
            None => m,
            Some(prev) => prev.intersection(g, &m),
        });
    }
    let w = w.expect("step functions have at least one value");
    let b = d.bound().approx().max(1.0);
    let scale = crate::rational::from_f64(2.0 * b).unwrap_or_else(|| int(2));
    Ok((w, eps / scale))
}

/// Checks the continuity inclusion on `f ⊕• h` for each sampled `h ∈ O(W, η)`.
pub fn continuity_check<F: Real, D: Pseudometric<F>>(
    d: &D,
    f: &StepFunction<F>,
    eps: &Rational,
    members: impl FnMut(&NeighborhoodSpec<F>, &Rational) -> Result<StepFunction<F>>,
    samples: usize,
) -> Result<LawCheck> {
    if samples == 0 {
        return Err(GyroError::ZeroSamples);
    }
    let mut members = members;
    let (w, eta) = continuity_neighborhood(d, f, eps)?;
    let limit = D::Value::from_ratio(eps);
    let mut check = LawCheck { law: "g ∈ f ⊕ O(W, ε/2) ⇒ d•(f, g) < ε", checked: 0, failures: 0, first_failure: None };
    for _ in 0..samples {
        let h = members(&w, &eta)?;
        let g = f.add(&h)?;
        check.checked += 1;
        let dist = d_bullet(d, f, &g)?;
        if !(dist < limit) {
            check.failures += 1;
            check.first_failure.get_or_insert_with(|| format!("h = {h:?}, d• = {dist:?}"));
        }
    }
    Ok(check)
}

/// Pseudometric axioms of `d` itself on the given points.
pub fn check_pseudometric<F: Real, D: Pseudometric<F>>(
    d: &D,
    g: &GyroInstance<F>,
    points: &[Element<F>],
    slack: D::Value,
) -> Result<LawCheck> {
    let mut check = LawCheck { law: "pseudometric axioms", checked: 0, failures: 0, first_failure: None };
    let bound = d.bound();
    for x in points {
        for y in points {
            let dxy = d.distance(g, x, y)?;
            let ok = d.distance(g, x, x)? <= slack
                && dxy <= d.distance(g, y, x)? + slack.clone()
                && d.distance(g, y, x)? <= dxy.clone() + slack.clone()
                && dxy <= bound.clone() + slack.clone();
            check.checked += 1;
            if !ok {
                check.failures += 1;
                check.first_failure.get_or_insert_with(|| format!("x = {x}, y = {y}"));
            }
            for z in points {
                let ok = d.distance(g, x, z)? <= dxy.clone() + d.distance(g, y, z)? + slack.clone();
                check.checked += 1;
                if !ok {
                    check.failures += 1;
                    check.first_failure.get_or_insert_with(|| format!("x = {x}, y = {y}, z = {z}"));
                }
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::sample::{enumerate_grid, seeded, Sampler};
    use crate::step::embed_const;

    fn l(k: usize) -> Element<f64> {
        Element::Label(k)
    }

    #[test]
    fn discrete_examples() {
        let z5 = GyroInstance::<f64>::cyclic(5).unwrap();
        let f = StepFunction::from_parts(&z5, vec![l(2), l(3)], &[ratio(1, 2)]).unwrap();
        let g = StepFunction::constant(&z5, l(2)).unwrap();
        assert_eq!(d_bullet(&Discrete, &f, &f).unwrap(), Rational::zero());
        assert_eq!(d_bullet(&Discrete, &f, &g).unwrap(), ratio(1, 2));
        let x = embed_const(&z5, l(1)).unwrap();
        let y = embed_const(&z5, l(4)).unwrap();
        assert_eq!(d_bullet(&Discrete, &x, &y).unwrap(), int(1));
    }

    #[test]
    fn refinement_must_cover_both() {
        let z5 = GyroInstance::<f64>::cyclic(5).unwrap();
        let f = StepFunction::from_parts(&z5, vec![l(2), l(3)], &[ratio(1, 2)]).unwrap();
        let coarse = Partition::trivial();
        assert!(d_bullet_on(&Discrete, &f, &f, &coarse).is_err());
        let fine = Partition::uniform(6);
        assert_eq!(d_bullet_on(&Discrete, &f, &f.neg().unwrap(), &fine).unwrap(), int(1));
    }

    #[test]
    fn topology_examples_on_z5() {
        let z5 = GyroInstance::<f64>::cyclic(5).unwrap();
        let zero = StepFunction::identity(&z5);
        let v = NeighborhoodSpec::identity_only(&z5);
        let grid = enumerate_grid(&z5, 4).unwrap();
        let ok = metric_topology_check(&Discrete, &zero, &v, &ratio(1, 2), Some(ratio(1, 2)), grid.clone()).unwrap();
        assert!(ok.passed() && ok.checked > 1);
        let conforming = metric_topology_check(&Discrete, &zero, &v, &ratio(1, 2), None, grid.clone()).unwrap();
        assert!(conforming.passed());
        let bad = metric_topology_check(&Discrete, &zero, &v, &ratio(1, 10), Some(int(1)), grid).unwrap();
        assert!(!bad.passed());
        assert_eq!(
            metric_topology_check(&Discrete, &zero, &v, &ratio(1, 2), None, Vec::new()),
            Err(GyroError::ZeroSamples)
        );
    }

    #[test]
    fn mobius_moduli_hold_on_samples() {
        let disk = GyroInstance::<f64>::mobius();
        let s = Sampler::new(disk);
        let mut rng = seeded(11);
        for _ in 0..500 {
            let x = s.element(&mut rng);
            let eps = 0.05;
            let w = HalfChord.modulus(&disk, &x, &eps).unwrap();
            let y = s.element_in(&w, &mut rng);
            assert!(HalfChord.distance(&disk, &x, &disk.op(&x, &y).unwrap()).unwrap() < eps);

            let v = NeighborhoodSpec::ball(0.2).unwrap();
            let delta = HalfChord.inner_radius(&disk, &x, &v).unwrap();
            let u = s.element(&mut rng);
            if HalfChord.distance(&disk, &x, &u).unwrap() < delta {
                assert!(v.contains(&disk, &disk.op(&disk.inverse(&x).unwrap(), &u).unwrap()));
            }
        }
    }

    #[test]
    fn einstein_modulus_holds_on_samples() {
        let ball = GyroInstance::<f64>::einstein(2.0).unwrap();
        let s = Sampler::new(ball);
        let mut rng = seeded(12);
        for _ in 0..500 {
            let x = s.element(&mut rng);
            let eps = 0.05;
            let w = HalfChord.modulus(&ball, &x, &eps).unwrap();
            let y = s.element_in(&w, &mut rng);
            assert!(HalfChord.distance(&ball, &x, &ball.op(&x, &y).unwrap()).unwrap() < eps);
        }
    }

    #[test]
    fn continuity_on_mobius() {
        let disk = GyroInstance::<f64>::mobius();
        let s = Sampler::new(disk);
        let mut rng = seeded(13);
        let f = s.non_constant(&mut rng);
        let check = continuity_check(&HalfChord, &f, &ratio(1, 10), |w, eta| s.member(w, eta, &mut rng), 100).unwrap();
        assert!(check.passed(), "{check}");
    }

    #[test]
    fn euclidean_rejects_finite_carriers() {
        let z5 = GyroInstance::<f64>::cyclic(5).unwrap();
        assert!(HalfChord.distance(&z5, &l(0), &l(1)).is_err());
    }
}
