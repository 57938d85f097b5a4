//! Deterministic random and exhaustive generators of elements and step
//! functions, shared by the property checks, the CLI and the test suites.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::gyro::{Element, GyroInstance, Gyrogroup, NeighborhoodSpec};
use crate::rational::{ratio, Rational};
use crate::scalar::Real;
use crate::step::{Partition, StepFunction};

pub type SampleRng = rand_chacha::ChaCha8Rng;

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn seeded(seed: u64) -> SampleRng {
    SampleRng::seed_from_u64(seed)
}

/// Random generator of elements and step functions over one instance.
#[derive(Clone, Debug)]
pub struct Sampler<F> {
    pub instance: GyroInstance<F>,
    /// Upper bound on the number of intervals of sampled functions.
    pub max_pieces: usize,
    /// Cuts are `p/q` with `2 ≤ q ≤ max_denominator`.
    pub max_denominator: u32,
    /// Continuous samples stay inside this fraction of the carrier radius.
    pub radius_fraction: F,
}

impl<F: Real> Sampler<F> {
    pub fn new(instance: GyroInstance<F>) -> Self {
        Self { instance, max_pieces: 5, max_denominator: 12, radius_fraction: F::lit(0.9) }
    }

    pub fn with_max_pieces(mut self, n: usize) -> Self {
        self.max_pieces = n.max(1);
        self
    }

    pub fn with_max_denominator(mut self, q: u32) -> Self {
        self.max_denominator = q.max(2);
        self
    }

    pub fn with_radius_fraction(mut self, r: F) -> Self {
        self.radius_fraction = r;
        self
    }

    fn sample_radius(&self) -> F {
        self.instance.radius().unwrap_or_else(F::one) * self.radius_fraction
    }

    /// Point with norm `< max_norm`, uniform in the disk or ball.
    fn continuous_point<R: Rng + ?Sized>(&self, rng: &mut R, min_norm: F, max_norm: F) -> Element<F> {
        let u = F::lit(rng.random::<f64>());
        match self.instance.identity() {
            Element::Disk(_) => {
                let (lo2, hi2) = (min_norm * min_norm, max_norm * max_norm);
                let r = (lo2 + u * (hi2 - lo2)).sqrt();
                let theta = F::lit(rng.random_range(0.0..std::f64::consts::TAU));
                Element::disk(r * theta.cos(), r * theta.sin())
            }
            _ => {
                let (lo3, hi3) = (min_norm.powi(3), max_norm.powi(3));
                let r = (lo3 + u * (hi3 - lo3)).cbrt();
                let dir = loop {
                    let v: [f64; 3] = [
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    ];
                    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                    if n > 1e-3 && n <= 1.0 {
                        break [v[0] / n, v[1] / n, v[2] / n];
                    }
                };
                Element::Velocity([r * F::lit(dir[0]), r * F::lit(dir[1]), r * F::lit(dir[2])])
            }
        }
    }

    pub fn element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element<F> {
        match self.instance.order() {
            Some(n) => Element::Label(rng.random_range(0..n)),
            None => self.continuous_point(rng, F::zero(), self.sample_radius()),
        }
    }

    pub fn element_in<R: Rng + ?Sized>(&self, v: &NeighborhoodSpec<F>, rng: &mut R) -> Element<F> {
        if let Some(members) = v.members() {
            return *members.choose(rng).expect("neighborhoods contain the identity");
        }
        let rho = v.radius().expect("non-set neighborhoods are balls");
        let cap = rho.min(self.sample_radius()) * F::lit(0.999);
        self.continuous_point(rng, F::zero(), cap)
    }

    /// A carrier element outside `v`, if the sampling region has any.
    pub fn element_outside<R: Rng + ?Sized>(&self, v: &NeighborhoodSpec<F>, rng: &mut R) -> Option<Element<F>> {
        let g = &self.instance;
        if let Some(all) = g.elements() {
            let outside: Vec<_> = all.into_iter().filter(|e| !v.contains(g, e)).collect();
            return outside.choose(rng).copied();
        }
        let lo = v.radius().unwrap_or_else(F::zero) * F::lit(1.001);
        let hi = self.sample_radius();
        if lo >= hi {
            return None;
        }
        (0..32)
            .map(|_| self.continuous_point(rng, lo, hi))
            .find(|e| !v.contains(g, e) && g.in_carrier(e))
    }

    /// Sorted distinct cuts; at most `max_pieces - 1` of them.
    pub fn cuts<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Rational> {
        let k = rng.random_range(0..self.max_pieces);
        let mut cuts: Vec<Rational> = (0..k)
            .map(|_| {
                let q = rng.random_range(2..=self.max_denominator);
                let p = rng.random_range(1..q);
                ratio(i64::from(p), i64::from(q))
            })
            .collect();
        cuts.sort();
        cuts.dedup();
        cuts
    }

    pub fn partition<R: Rng + ?Sized>(&self, rng: &mut R) -> Partition {
        Partition::from_cuts(&self.cuts(rng)).expect("cuts are sorted inside (0, 1)")
    }

    pub fn step_function<R: Rng + ?Sized>(&self, rng: &mut R) -> StepFunction<F> {
        let p = self.partition(rng);
        let values = (0..p.len()).map(|_| self.element(rng)).collect();
        StepFunction::on_partition(&self.instance, p, values).expect("sampled values lie in the carrier")
    }

    pub fn non_constant<R: Rng + ?Sized>(&self, rng: &mut R) -> StepFunction<F> {
        assert!(self.max_pieces > 1, "non-constant functions need two pieces");
        loop {
            let f = self.step_function(rng);
            if !f.is_constant() {
                return f;
            }
        }
    }

    /// A random member of `O(V, ε)`: values inside `V` except on a random
    /// set of intervals of total length `< ε`.
    pub fn member<R: Rng + ?Sized>(
        &self,
        v: &NeighborhoodSpec<F>,
        eps: &Rational,
        rng: &mut R,
    ) -> Result<StepFunction<F>> {
        v.validate(&self.instance)?;
        for _ in 0..16 {
            let p = self.partition(rng);
            let mut order: Vec<usize> = (0..p.len()).collect();
            order.shuffle(rng);
            let lengths: Vec<Rational> = p.lengths().collect();
            let mut bad = vec![false; p.len()];
            let mut budget = Rational::zero();
            for k in order {
                if rng.random_bool(0.6) && &(&budget + &lengths[k]) < eps {
                    budget += &lengths[k];
                    bad[k] = true;
                }
            }
            let values: Vec<Element<F>> = bad
                .iter()
                .map(|&is_bad| match is_bad {
                    true => self.element_outside(v, rng).unwrap_or_else(|| self.element_in(v, rng)),
                    false => self.element_in(v, rng),
                })
                .collect();
            let f = StepFunction::on_partition(&self.instance, p, values)?;
            if f.in_neighborhood(v, eps)? {
                return Ok(f);
            }
        }
        Ok(StepFunction::identity(&self.instance))
    }

    /// A function close to `f`: extra cuts and a few changed values.
    pub fn perturb<R: Rng + ?Sized>(&self, f: &StepFunction<F>, rng: &mut R) -> StepFunction<F> {
        let g = &self.instance;
        let extra = self.cuts(rng);
        let p = f.partition().with_points(&extra).expect("sampled cuts lie inside (0, 1)");
        let small = NeighborhoodSpec::ball(self.sample_radius() * F::lit(0.05)).ok();
        let values = f
            .values_on(&p)
            .into_iter()
            .map(|x| {
                if !rng.random_bool(0.3) {
                    return x;
                }
                match (g.is_exact(), &small) {
                    (false, Some(ball)) if rng.random_bool(0.8) => {
                        let y = self.element_in(ball, rng);
                        g.op(&x, &y).unwrap_or(x)
                    }
                    _ => self.element(rng),
                }
            })
            .collect();
        StepFunction::on_partition(g, p, values).expect("perturbed values lie in the carrier")
    }
}

/// Every step function over a finite carrier that is constant on the
/// intervals of `partition` (canonicalized, so coarser functions appear too).
pub fn enumerate_on<F: Real>(g: &GyroInstance<F>, partition: &Partition) -> Option<Vec<StepFunction<F>>> {
    let n = g.order()?;
    let k = partition.len();
    let total = n.checked_pow(u32::try_from(k).ok()?)?;
    Some(
        (0..total)
            .map(|mut code| {
                let values = (0..k)
                    .map(|_| {
                        let e = Element::Label(code % n);
                        code /= n;
                        e
                    })
                    .collect();
                StepFunction::on_partition(g, partition.clone(), values).expect("labels lie in the carrier")
            })
            .collect(),
    )
}

/// [`enumerate_on`] over the uniform partition into `intervals` pieces.
pub fn enumerate_grid<F: Real>(g: &GyroInstance<F>, intervals: u32) -> Option<Vec<StepFunction<F>>> {
    enumerate_on(g, &Partition::uniform(intervals))
}
