//! Constructive witnesses for the cardinal invariants of `G•`: dense-set
//! approximation, narrow covers, network `Q`-sets and the local base
//! `O(V, 1/n)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{GyroError, Result};
use crate::gyro::{Element, GyroInstance, Gyrogroup, LawCheck, NeighborhoodSpec};
use crate::rational::{format_rational, from_f64, int, simplest_dyadic_in, Rational};
use crate::sample::Sampler;
use crate::scalar::{MetricScalar, Real};
use crate::step::{Partition, StepFunction};

const MAX_RING_2D: i64 = 512;
const MAX_RING_3D: i64 = 48;

/// An enumerable dense subset of a carrier.
#[derive(Clone, Debug, PartialEq)]
pub enum DenseSpec<F> {
    /// Explicit points, searched in list order.
    Explicit(Vec<Element<F>>),
    /// Points whose coordinates are multiples of `2^-bits`.
    DyadicGrid { bits: u32 },
}

impl<F: Real> DenseSpec<F> {
    /// The whole carrier of a finite instance.
    pub fn full(g: &GyroInstance<F>) -> Option<Self> {
        g.elements().map(Self::Explicit)
    }

    pub fn grid(bits: u32) -> Result<Self> {
        if bits > 40 {
            return Err(GyroError::Malformed(format!("grid resolution 2^-{bits} is too fine")));
        }
        Ok(Self::DyadicGrid { bits })
    }

    fn step(bits: u32) -> F {
        F::lit((-f64::from(bits)).exp2())
    }

    pub fn validate(&self, g: &GyroInstance<F>) -> Result<()> {
        match self {
            Self::Explicit(points) if points.is_empty() => Err(GyroError::Malformed("empty dense set".into())),
            Self::Explicit(points) => points.iter().try_for_each(|p| g.check(p)),
            Self::DyadicGrid { .. } if g.is_exact() => {
                Err(GyroError::Unsupported(format!("dyadic grid on {g}")))
            }
            Self::DyadicGrid { .. } => Ok(()),
        }
    }

    pub fn contains(&self, g: &GyroInstance<F>, x: &Element<F>) -> bool {
        match self {
            Self::Explicit(points) => points.iter().any(|p| g.equiv(p, x)),
            Self::DyadicGrid { bits } => {
                let scale = Self::step(*bits).recip();
                g.in_carrier(x) && x.coordinates().iter().all(|c| (*c * scale).fract() == F::zero())
            }
        }
    }

    /// First point satisfying `accept`: `x` itself when it belongs to the
    /// set, then list order, or grid rings around `x` (Chebyshev distance
    /// in grid steps, lexicographic within a ring) out to `reach`.
    pub fn find(
        &self,
        g: &GyroInstance<F>,
        x: &Element<F>,
        reach: F,
        mut accept: impl FnMut(&Element<F>) -> Result<bool>,
    ) -> Result<Option<Element<F>>> {
        if self.contains(g, x) && accept(x)? {
            return Ok(Some(*x));
        }
        match self {
            Self::Explicit(points) => {
                for p in points {
                    if accept(p)? {
                        return Ok(Some(*p));
                    }
                }
                Ok(None)
            }
            Self::DyadicGrid { bits } => {
                let step = Self::step(*bits);
                let centre: Vec<i64> = x
                    .coordinates()
                    .iter()
                    .map(|c| (*c / step).round().to_i64().unwrap_or(0))
                    .collect();
                let dim = centre.len();
                let cap = if dim == 2 { MAX_RING_2D } else { MAX_RING_3D };
                let rings = (reach / step).ceil().to_i64().unwrap_or(cap).clamp(1, cap - 1) + 1;
                for k in 0..=rings {
                    for offset in ring(dim, k) {
                        let coords: Vec<F> = centre
                            .iter()
                            .zip(&offset)
                            .map(|(c, o)| F::from(c + o).unwrap_or_else(F::zero) * step)
                            .collect();
                        let p = match dim {
                            2 => Element::disk(coords[0], coords[1]),
                            _ => Element::Velocity([coords[0], coords[1], coords[2]]),
                        };
                        if g.in_carrier(&p) && accept(&p)? {
                            return Ok(Some(p));
                        }
                    }
                }
                Ok(None)
            }
        }
    }
}

/// Integer offsets with Chebyshev norm exactly `k`, in lexicographic order.
fn ring(dim: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![-k; dim];
    loop {
        if current.iter().any(|c| c.abs() == k) {
            out.push(current.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < k {
                current[i] += 1;
                break;
            }
            current[i] = -k;
        }
    }
}

/// Euclidean reach of `x ⊕ V` around `x`, used to bound grid searches.
fn reach<F: Real>(g: &GyroInstance<F>, v: &NeighborhoodSpec<F>) -> F {
    match (v.radius(), g.radius()) {
        (Some(rho), Some(r)) => {
            let t = (rho / r).min(F::lit(0.999_999));
            (rho + rho) / (F::one() - t)
        }
        _ => F::zero(),
    }
}

/// How the cuts of a witness are placed relative to those of `f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutPolicy {
    /// `b_k = a_k`.
    #[default]
    Keep,
    /// `b_k` is the simplest dyadic in `[a_k, a_k + min(a_{k+1} − a_k, ε/n))`.
    Dyadic,
}

impl CutPolicy {
    pub fn name(self) -> &'static str {
        match self {
            Self::Keep => "keep",
            Self::Dyadic => "dyadic",
        }
    }

    /// Interior cuts `b_1 < … < b_n` with `a_k ≤ b_k < a_{k+1}` and `Σ(b_k − a_k) < budget`.
    pub fn shifted(self, partition: &Partition, budget: &Rational) -> Vec<Rational> {
        let cuts = partition.cuts();
        match self {
            Self::Keep => cuts.to_vec(),
            Self::Dyadic => {
                let share = budget / int(cuts.len().max(1) as i64);
                let points = partition.points();
                (1..points.len() - 1)
                    .map(|k| {
                        let gap = &points[k + 1] - &points[k];
                        let width = if gap < share { gap } else { share.clone() };
                        simplest_dyadic_in(&points[k], &(&points[k] + width))
                    })
                    .collect()
            }
        }
    }
}

/// Which side the translate sits on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Side {
    /// `f ∈ g ⊕• O(V, ε)`.
    #[default]
    Left,
    /// `f ⊟• g ∈ O(V, ε)`.
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Self::Left => "left",
            Self::Right => "right",
        }
    }
}

/// A constructed step function together with its re-checked certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<F> {
    pub g: StepFunction<F>,
    pub kind: &'static str,
    pub parameters: BTreeMap<String, String>,
    pub verified: bool,
}

fn assemble<F: Real>(
    f: &StepFunction<F>,
    values: Vec<Element<F>>,
    policy: CutPolicy,
    eps: &Rational,
) -> Result<StepFunction<F>> {
    let cuts = policy.shifted(f.partition(), eps);
    StepFunction::from_parts(f.instance(), values, &cuts)
}

/// `g` with values in `D`, `y_k ∈ x_k ⊕ V`, and cuts placed by `policy`,
/// so that `g ∈ f ⊕• O(V, ε)`.
pub fn densify<F: Real>(
    f: &StepFunction<F>,
    dense: &DenseSpec<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    policy: CutPolicy,
) -> Result<Witness<F>> {
    let g = f.instance();
    dense.validate(g)?;
    v.validate(g)?;
    if eps <= &Rational::zero() {
        return Err(GyroError::NonPositiveEpsilon);
    }
    let mut values = Vec::with_capacity(f.num_pieces());
    for x in f.values() {
        let inv = g.inverse(x)?;
        let y = dense
            .find(g, x, reach(g, v), |d| Ok(v.contains(g, &g.op(&inv, d)?)))?
            .ok_or_else(|| GyroError::DensityViolated(x.to_string()))?;
        values.push(y);
    }
    let out = assemble(f, values, policy, eps)?;
    if !f.translate_contains(&out, v, eps)? {
        return Err(GyroError::VerificationFailed("densified function left f ⊕ O(V, ε)".into()));
    }
    Ok(Witness { g: out, kind: "densify", parameters: parameters(v, eps, policy, None), verified: true })
}

/// `g` with values in `D` such that `f ∈ g ⊕• O(V, ε)` (left) or
/// `f ⊟• g ∈ O(V, ε)` (right).
pub fn narrow_cover_witness<F: Real>(
    f: &StepFunction<F>,
    dense: &DenseSpec<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    side: Side,
    policy: CutPolicy,
) -> Result<Witness<F>> {
    let g = f.instance();
    dense.validate(g)?;
    v.validate(g)?;
    if eps <= &Rational::zero() {
        return Err(GyroError::NonPositiveEpsilon);
    }
    if let Some(all) = g.elements() {
        for x in &all {
            if cover_point(g, dense, v, side, x)?.is_none() {
                return Err(GyroError::CoverFailed(format!("{x} is not covered")));
            }
        }
    }
    let mut values = Vec::with_capacity(f.num_pieces());
    for x in f.values() {
        let y = cover_point(g, dense, v, side, x)?
            .ok_or_else(|| GyroError::CoverFailed(format!("{x} is not covered")))?;
        values.push(y);
    }
    let out = assemble(f, values, policy, eps)?;
    let ok = match side {
        Side::Left => out.translate_contains(f, v, eps)?,
        Side::Right => f.cosub(&out)?.in_neighborhood(v, eps)?,
    };
    if !ok {
        return Err(GyroError::VerificationFailed("cover witness failed its membership check".into()));
    }
    Ok(Witness {
        g: out,
        kind: "narrow-cover",
        parameters: parameters(v, eps, policy, Some(side)),
        verified: true,
    })
}

/// A point `d ∈ D` with `x ∈ d ⊕ V` (left) or `x ⊟ d ∈ V` (right).
pub fn cover_point<F: Real>(
    g: &GyroInstance<F>,
    dense: &DenseSpec<F>,
    v: &NeighborhoodSpec<F>,
    side: Side,
    x: &Element<F>,
) -> Result<Option<Element<F>>> {
    dense.find(g, x, reach(g, v), |d| {
        let diff = match side {
            Side::Left => g.op(&g.inverse(d)?, x)?,
            Side::Right => g.cosub(x, d)?,
        };
        Ok(v.contains(g, &diff))
    })
}

/// `D ⊕ V` covers every given point.
pub fn check_cover<F: Real>(
    g: &GyroInstance<F>,
    dense: &DenseSpec<F>,
    v: &NeighborhoodSpec<F>,
    side: Side,
    points: &[Element<F>],
) -> Result<LawCheck> {
    let mut check = tally("D ⊕ V covers the carrier");
    for x in points {
        let ok = cover_point(g, dense, v, side, x)?.is_some();
        note(&mut check, ok, || format!("x = {x}"));
    }
    Ok(check)
}

fn parameters<F: Real>(
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    policy: CutPolicy,
    side: Option<Side>,
) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("V".into(), v.to_string());
    p.insert("eps".into(), format_rational(eps));
    p.insert("cuts".into(), policy.name().into());
    if let Some(side) = side {
        p.insert("side".into(), side.name().into());
    }
    p
}
fn tally(law: &'static str) -> LawCheck {
    LawCheck { law, checked: 0, failures: 0, first_failure: None }
}

fn note(check: &mut LawCheck, ok: bool, case: impl FnOnce() -> String) {
    check.checked += 1;
    if !ok {
        check.failures += 1;
        check.first_failure.get_or_insert_with(case);
    }
}

fn real<F: Real>(r: &Rational) -> F {
    F::lit(crate::rational::to_f64(r))
}

/// A member of a network: an explicit finite set or a closed gyroball
/// `{z : ‖⊖c ⊕ z‖ ≤ r}` with rational radius.
#[derive(Clone, Debug, PartialEq)]
pub enum NetworkSet<F> {
    Finite(Vec<Element<F>>),
    ClosedBall { center: Element<F>, radius: Rational },
}

impl<F: Real> NetworkSet<F> {
    pub fn contains(&self, g: &GyroInstance<F>, z: &Element<F>) -> Result<bool> {
        match self {
            Self::Finite(points) => Ok(points.iter().any(|p| g.equiv(p, z))),
            Self::ClosedBall { center, radius } => Ok(g.gyrodistance(center, z)? <= real(radius)),
        }
    }

    /// `P ⊆ x ⊕ V`; for balls via the gyrotriangle bound `‖⊖x ⊕ c‖ ⊕ r < ρ`.
    pub fn inside_translate(&self, g: &GyroInstance<F>, x: &Element<F>, v: &NeighborhoodSpec<F>) -> Result<bool> {
        let inv = g.inverse(x)?;
        match self {
            Self::Finite(points) => {
                for p in points {
                    if !v.contains(g, &g.op(&inv, p)?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Self::ClosedBall { center, radius } => {
                let rho = v
                    .radius()
                    .ok_or_else(|| GyroError::Unsupported("ball network member against a finite V".into()))?;
                let s = g.gyrodistance(x, center)?;
                let bound = g.norm_sum_bound(s, real(radius)).unwrap_or_else(F::infinity);
                Ok(bound < rho)
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, sampler: &Sampler<F>, rng: &mut R) -> Result<Element<F>> {
        match self {
            Self::Finite(points) => points
                .choose(rng)
                .copied()
                .ok_or_else(|| GyroError::Malformed("empty network member".into())),
            Self::ClosedBall { center, radius } => {
                let g = &sampler.instance;
                let ball = NeighborhoodSpec::ball(real::<F>(radius) * F::lit(0.99))?;
                g.op(center, &sampler.element_in(&ball, rng))
            }
        }
    }
}

/// Source of network members.
#[derive(Clone, Debug, PartialEq)]
pub enum NetworkSpec<F> {
    /// A finite list, searched in order.
    Explicit(Vec<NetworkSet<F>>),
    /// Singletons on finite carriers; closed gyroballs with dyadic centre
    /// and dyadic radius on continuous ones.
    DyadicBalls,
}

impl<F: Real> NetworkSpec<F> {
    pub fn singletons(g: &GyroInstance<F>) -> Option<Self> {
        g.elements()
            .map(|all| Self::Explicit(all.into_iter().map(|x| NetworkSet::Finite(vec![x])).collect()))
    }

    /// Some `P` with `x ∈ P ⊆ x ⊕ V`.
    pub fn choose(&self, g: &GyroInstance<F>, x: &Element<F>, v: &NeighborhoodSpec<F>) -> Result<NetworkSet<F>> {
        let missing = || GyroError::CoverFailed(format!("no network member between {x} and {x} ⊕ V"));
        match self {
            Self::Explicit(sets) => {
                for p in sets {
                    if p.contains(g, x)? && p.inside_translate(g, x, v)? {
                        return Ok(p.clone());
                    }
                }
                Err(missing())
            }
            Self::DyadicBalls if g.is_exact() => Ok(NetworkSet::Finite(vec![*x])),
            Self::DyadicBalls => {
                let rho = v.radius().ok_or_else(missing)?;
                let eighth = rho / F::lit(8.0);
                for bits in 4..=40u32 {
                    let step = F::lit((-f64::from(bits)).exp2());
                    let coords: Vec<F> = x.coordinates().iter().map(|c| (*c / step).round() * step).collect();
                    let center = match coords.len() {
                        2 => Element::disk(coords[0], coords[1]),
                        _ => Element::Velocity([coords[0], coords[1], coords[2]]),
                    };
                    if !g.in_carrier(&center) {
                        continue;
                    }
                    let s = g.gyrodistance(x, &center)?;
                    if s >= eighth {
                        continue;
                    }
                    let (Some(lo), Some(hi)) = (
                        from_f64(MetricScalar::approx(&(s + rho / F::lit(16.0)))),
                        from_f64(MetricScalar::approx(&(rho / F::lit(2.0)))),
                    ) else {
                        return Err(missing());
                    };
                    let p = NetworkSet::ClosedBall { center, radius: simplest_dyadic_in(&lo, &hi) };
                    if p.contains(g, x)? && p.inside_translate(g, x, v)? {
                        return Ok(p);
                    }
                }
                Err(missing())
            }
        }
    }
}

/// `x ∈ P ⊆ x ⊕ V` for the chosen member at each point; ball members are
/// probed at sampled interior points.
pub fn check_network<F: Real, R: Rng + ?Sized>(
    sampler: &Sampler<F>,
    network: &NetworkSpec<F>,
    v: &NeighborhoodSpec<F>,
    points: &[Element<F>],
    rng: &mut R,
) -> Result<LawCheck> {
    let g = &sampler.instance;
    let mut check = tally("x ∈ P ⊆ x ⊕ V");
    for x in points {
        let p = network.choose(g, x, v)?;
        let mut ok = p.contains(g, x)? && p.inside_translate(g, x, v)?;
        let inv = g.inverse(x)?;
        for _ in 0..16 {
            let z = p.sample(sampler, rng)?;
            ok &= v.contains(g, &g.op(&inv, &z)?);
        }
        note(&mut check, ok, || format!("x = {x}, P = {p:?}"));
    }
    Ok(check)
}

/// `Q(m, n, b, P)`: functions leaving `P_{k+1}` on `[b_k, b_{k+1})` on a set
/// of measure `< 1/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSet<F> {
    pub n: u64,
    pub b: Vec<Rational>,
    pub p: Vec<NetworkSet<F>>,
}

impl<F: Real> QSet<F> {
    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn contains(&self, g: &StepFunction<F>) -> Result<bool> {
        q_set_member(g, self.n, &self.b, &self.p)
    }
}

fn check_cut_vector(b: &[Rational], blocks: usize) -> Result<()> {
    let malformed = |why: &str| Err(GyroError::MalformedCutVector(why.into()));
    if b.is_empty() {
        return malformed("empty");
    }
    if b.len() != blocks {
        return malformed("needs one network member per block");
    }
    if b[0] <= Rational::zero() || b.windows(2).any(|w| w[0] >= w[1]) {
        return malformed("entries must increase strictly from above 0");
    }
    if !b[b.len() - 1].is_one() {
        return malformed("last entry must be 1");
    }
    Ok(())
}

/// Exact test of `μ{r : b_k ≤ r < b_{k+1}, g(r) ∉ P_{k+1}} < 1/n`.
pub fn q_set_member<F: Real>(g: &StepFunction<F>, n: u64, b: &[Rational], p: &[NetworkSet<F>]) -> Result<bool> {
    check_cut_vector(b, p.len())?;
    if n == 0 {
        return Err(GyroError::MalformedCutVector("n must be positive".into()));
    }
    let inst = g.instance();
    let common = g.partition().with_points(&b[..b.len() - 1])?;
    let mut bad = Rational::zero();
    let mut block = 0;
    for ((lo, hi), value) in common.intervals().zip(g.values_on(&common)) {
        while lo >= &b[block] {
            block += 1;
        }
        if !p[block].contains(inst, &value)? {
            bad += hi - lo;
        }
    }
    Ok(bad < Rational::new(1.into(), n.into()))
}

/// The member `Q(m, 2n, b, P)` sandwiched between `f` and `f ⊕• O(V, ε)`:
/// `P_{k+1}` sits between `x_k` and `x_k ⊕ V`, `1/n < ε`, and the cuts
/// satisfy `Σ(b_k − a_k) < 1/2n`.
pub fn build_q_set<F: Real>(
    f: &StepFunction<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    network: &NetworkSpec<F>,
    policy: CutPolicy,
) -> Result<QSet<F>> {
    if eps <= &Rational::zero() {
        return Err(GyroError::NonPositiveEpsilon);
    }
    let g = f.instance();
    v.validate(g)?;
    let p = f.values().iter().map(|x| network.choose(g, x, v)).collect::<Result<Vec<_>>>()?;
    let n = (eps.recip().floor() + int(1)).to_integer();
    let n: u64 = n.try_into().map_err(|_| GyroError::Malformed("ε is too small".into()))?;
    let budget = Rational::new(1.into(), (2 * n).into());
    let mut b = policy.shifted(f.partition(), &budget);
    b.push(int(1));
    Ok(QSet { n: 2 * n, b, p })
}

/// A sampled element of `q`, or `None` when the draws miss it.
pub fn sample_q_member<F: Real, R: Rng + ?Sized>(
    q: &QSet<F>,
    sampler: &Sampler<F>,
    rng: &mut R,
) -> Result<Option<StepFunction<F>>> {
    let g = &sampler.instance;
    let partition = sampler.partition(rng).with_points(&q.b[..q.b.len() - 1])?;
    let mut values = Vec::with_capacity(partition.len());
    let mut block = 0;
    for (lo, _) in partition.intervals() {
        while lo >= &q.b[block] {
            block += 1;
        }
        values.push(match rng.random_bool(0.85) {
            true => q.p[block].sample(sampler, rng)?,
            false => sampler.element(rng),
        });
    }
    let h = StepFunction::on_partition(g, partition, values)?;
    Ok(q.contains(&h)?.then_some(h))
}

/// `f ∈ Q(m, 2n, b, P) ⊆ f ⊕• O(V, ε)` on sampled members of the `Q`-set.
pub fn sandwich_check<F: Real, R: Rng + ?Sized>(
    sampler: &Sampler<F>,
    f: &StepFunction<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    network: &NetworkSpec<F>,
    rng: &mut R,
    samples: usize,
) -> Result<LawCheck> {
    if samples == 0 {
        return Err(GyroError::ZeroSamples);
    }
    let q = build_q_set(f, v, eps, network, CutPolicy::Dyadic)?;
    let mut check = tally("f ∈ Q(m, 2n, b, P) ⊆ f ⊕ O(V, ε)");
    note(&mut check, q.contains(f)?, || format!("f = {f:?} is outside its Q-set"));
    let mut drawn = 0;
    for _ in 0..samples * 20 {
        if drawn == samples {
            break;
        }
        let Some(h) = sample_q_member(&q, sampler, rng)? else { continue };
        drawn += 1;
        let ok = f.translate_contains(&h, v, eps)?;
        note(&mut check, ok, || format!("g = {h:?}"));
    }
    Ok(check)
}

/// `O(V_i, 1/j)` for every listed `V_i` and `1 ≤ j ≤ n`.
pub fn local_base<F: Real>(vs: &[NeighborhoodSpec<F>], n: u32) -> Vec<(NeighborhoodSpec<F>, Rational)> {
    vs.iter()
        .flat_map(|v| (1..=n).map(move |j| (v.clone(), Rational::new(1.into(), j.into()))))
        .collect()
}

/// `ε ≤ ε′` and `V ⊆ V′` give `O(V, ε) ⊆ O(V′, ε′)` on sampled members,
/// for every comparable pair of the family.
pub fn check_base_monotonicity<F: Real, R: Rng + ?Sized>(
    sampler: &Sampler<F>,
    family: &[(NeighborhoodSpec<F>, Rational)],
    rng: &mut R,
    samples: usize,
) -> Result<LawCheck> {
    let g = &sampler.instance;
    let mut check = tally("V ⊆ V′, ε ≤ ε′ ⇒ O(V, ε) ⊆ O(V′, ε′)");
    for (v, e) in family {
        for (w, e2) in family {
            if !(e <= e2 && v.is_subset_of(g, w)) {
                continue;
            }
            for _ in 0..samples {
                let h = sampler.member(v, e, rng)?;
                let ok = h.in_neighborhood(w, e2)?;
                note(&mut check, ok, || format!("h = {h:?}"));
            }
        }
    }
    Ok(check)
}
