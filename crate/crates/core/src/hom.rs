//! Groupoid homomorphisms `φ: G → H` and their pointwise lifts `φ•: G• → H•`.

use std::fmt;
use std::sync::Arc;

use crate::error::{GyroError, Result};
use crate::gyro::{Element, GyroInstance, Gyrogroup, Kind, LawCheck, NeighborhoodSpec};
use crate::rational::Rational;
use crate::sample::{seeded, Sampler, DEFAULT_SEED};
use crate::scalar::Real;
use crate::step::StepFunction;

type MapFn<F> = Arc<dyn Fn(&Element<F>) -> Result<Element<F>> + Send + Sync>;

/// Samples used to validate a map on a continuous source.
const CONTINUOUS_PAIRS: usize = 500;

/// A validated groupoid homomorphism between two instances.
#[derive(Clone)]
pub struct GroupoidHom<F> {
    name: String,
    source: GyroInstance<F>,
    target: GyroInstance<F>,
    map: MapFn<F>,
    claims_open: bool,
    claims_onto: bool,
}

impl<F: Real> fmt::Debug for GroupoidHom<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupoidHom({}: {} → {})", self.name, self.source, self.target)
    }
}

impl<F: Real> GroupoidHom<F> {
    /// Registers `map`, rejecting it unless `φ(a ⊕ b) = φ(a) ⊕ φ(b)` holds
    /// on every pair (finite source) or on sampled pairs.
    pub fn new(
        name: impl Into<String>,
        source: GyroInstance<F>,
        target: GyroInstance<F>,
        map: impl Fn(&Element<F>) -> Result<Element<F>> + Send + Sync + 'static,
    ) -> Result<Self> {
        let hom = Self {
            name: name.into(),
            source,
            target,
            map: Arc::new(map),
            claims_open: false,
            claims_onto: false,
        };
        hom.validate()?;
        Ok(hom)
    }

    pub fn claiming(mut self, open: bool, onto: bool) -> Self {
        self.claims_open = open;
        self.claims_onto = onto;
        self
    }

    fn validate(&self) -> Result<()> {
        let pairs: Vec<(Element<F>, Element<F>)> = match self.source.elements() {
            Some(all) => all.iter().flat_map(|a| all.iter().map(move |b| (*a, *b))).collect(),
            None => {
                let s = Sampler::new(self.source);
                let mut rng = seeded(DEFAULT_SEED);
                (0..CONTINUOUS_PAIRS).map(|_| (s.element(&mut rng), s.element(&mut rng))).collect()
            }
        };
        for (a, b) in pairs {
            let lhs = self.apply(&self.source.op(&a, &b)?)?;
            let rhs = self.target.op(&self.apply(&a)?, &self.apply(&b)?)?;
            if !self.target.equiv(&lhs, &rhs) {
                return Err(GyroError::NotHomomorphism(format!("{}: φ({a} ⊕ {b}) ≠ φ({a}) ⊕ φ({b})", self.name)));
            }
        }
        Ok(())
    }

    /// Reduction `ℤ_{mn} → ℤ_n`, `k ↦ k mod n`.
    pub fn reduction(source: GyroInstance<F>, target: GyroInstance<F>) -> Result<Self> {
        let (big, n) = cyclic_orders(&source, &target, "mod")?;
        if big % n != 0 {
            return Err(GyroError::NotHomomorphism(format!("{n} does not divide {big}")));
        }
        Self::new("mod", source, target, move |x| label_of(x).map(|k| Element::Label(k % n)))
            .map(|h| h.claiming(true, true))
    }

    /// Inclusion `ℤ_n → ℤ_{mn}`, `k ↦ m k`, onto the subgroup of multiples of `m`.
    pub fn inclusion(source: GyroInstance<F>, target: GyroInstance<F>) -> Result<Self> {
        let (n, big) = cyclic_orders(&source, &target, "inclusion")?;
        if big % n != 0 {
            return Err(GyroError::NotHomomorphism(format!("{n} does not divide {big}")));
        }
        let m = big / n;
        Self::new("inclusion", source, target, move |x| label_of(x).map(|k| Element::Label(m * k)))
            .map(|h| h.claiming(true, m == 1))
    }

    pub fn identity(g: GyroInstance<F>) -> Self {
        Self {
            name: "identity".into(),
            source: g,
            target: g,
            map: Arc::new(|x| Ok(*x)),
            claims_open: true,
            claims_onto: true,
        }
    }

    /// Catalog lookup by name.
    pub fn catalog(name: &str, source: GyroInstance<F>, target: GyroInstance<F>) -> Result<Self> {
        match name {
            "mod" => Self::reduction(source, target),
            "inclusion" => Self::inclusion(source, target),
            "identity" if source.same_structure(&target) => Ok(Self::identity(source)),
            "identity" => Err(GyroError::InstanceMismatch(source.to_string(), target.to_string())),
            other => Err(GyroError::Malformed(format!("unknown homomorphism {other:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &GyroInstance<F> {
        &self.source
    }

    pub fn target(&self) -> &GyroInstance<F> {
        &self.target
    }

    pub fn claims_open(&self) -> bool {
        self.claims_open
    }

    pub fn claims_onto(&self) -> bool {
        self.claims_onto
    }

    pub fn apply(&self, x: &Element<F>) -> Result<Element<F>> {
        self.source.check(x)?;
        let y = (self.map)(x)?;
        self.target.check(&y)?;
        Ok(y)
    }

    /// `ψ ∘ φ` with `self = φ`.
    pub fn then(&self, psi: &Self) -> Result<Self> {
        if !self.target.same_structure(&psi.source) {
            return Err(GyroError::InstanceMismatch(self.target.to_string(), psi.source.to_string()));
        }
        let (phi, psi_map) = (self.map.clone(), psi.map.clone());
        Ok(Self {
            name: format!("{}∘{}", psi.name, self.name),
            source: self.source,
            target: psi.target,
            map: Arc::new(move |x| psi_map(&phi(x)?)),
            claims_open: self.claims_open && psi.claims_open,
            claims_onto: self.claims_onto && psi.claims_onto,
        })
    }

    /// `φ•(f)(r) = φ(f(r))`, canonicalized over the target.
    pub fn lift(&self, f: &StepFunction<F>) -> Result<StepFunction<F>> {
        if !f.instance().same_structure(&self.source) {
            return Err(GyroError::InstanceMismatch(f.instance().to_string(), self.source.to_string()));
        }
        f.map_into(&self.target, |x| self.apply(x))
    }

    fn finite_source(&self) -> Result<Vec<Element<F>>> {
        self.source
            .elements()
            .ok_or_else(|| GyroError::Unsupported(format!("exhaustive check over {}", self.source)))
    }

    pub fn is_injective(&self) -> Result<bool> {
        let all = self.finite_source()?;
        let images = all.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        Ok(images
            .iter()
            .enumerate()
            .all(|(i, a)| images[i + 1..].iter().all(|b| !self.target.equiv(a, b))))
    }

    /// For each target label, the least source label mapping to it.
    pub fn right_inverse(&self) -> Result<Vec<Element<F>>> {
        let all = self.finite_source()?;
        let targets = self
            .target
            .elements()
            .ok_or_else(|| GyroError::Unsupported(format!("exhaustive check over {}", self.target)))?;
        let mut inverse = Vec::with_capacity(targets.len());
        for y in &targets {
            let mut found = None;
            for x in &all {
                if self.target.equiv(&self.apply(x)?, y) {
                    found = Some(*x);
                    break;
                }
            }
            inverse.push(found.ok_or(GyroError::NotOnto)?);
        }
        Ok(inverse)
    }

    pub fn is_onto(&self) -> Result<bool> {
        match self.right_inverse() {
            Ok(_) => Ok(true),
            Err(GyroError::NotOnto) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// A pointwise preimage of `h` under `φ•` built from [`right_inverse`](Self::right_inverse).
    pub fn lift_preimage(&self, h: &StepFunction<F>) -> Result<StepFunction<F>> {
        let inverse = self.right_inverse()?;
        h.map_into(&self.source, |y| {
            y.label()
                .and_then(|k| inverse.get(k).copied())
                .ok_or_else(|| GyroError::CarrierMismatch { element: y.to_string(), instance: self.target.to_string() })
        })
    }

    /// `φ(U)` for a finite source.
    pub fn image(&self, u: &NeighborhoodSpec<F>) -> Result<NeighborhoodSpec<F>> {
        let members = u
            .members()
            .ok_or_else(|| GyroError::Unsupported("image of a ball neighborhood".into()))?;
        let images = members.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        NeighborhoodSpec::set(&self.target, images)
    }

    /// `φ⁻¹(V)` for a finite source.
    pub fn preimage(&self, v: &NeighborhoodSpec<F>) -> Result<NeighborhoodSpec<F>> {
        v.validate(&self.target)?;
        let mut members = Vec::new();
        for x in self.finite_source()? {
            if v.contains(&self.target, &self.apply(&x)?) {
                members.push(x);
            }
        }
        NeighborhoodSpec::set(&self.source, members)
    }

    /// `φ(U) ⊆ V`: exhaustive on finite sources, sampled otherwise.
    pub fn maps_into(&self, u: &NeighborhoodSpec<F>, v: &NeighborhoodSpec<F>) -> Result<bool> {
        u.validate(&self.source)?;
        v.validate(&self.target)?;
        let points = match u.members() {
            Some(m) => m.to_vec(),
            None => {
                let s = Sampler::new(self.source);
                let mut rng = seeded(DEFAULT_SEED);
                (0..CONTINUOUS_PAIRS).map(|_| s.element_in(u, &mut rng)).collect()
            }
        };
        for x in points {
            if !v.contains(&self.target, &self.apply(&x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn label_of<F: Real>(x: &Element<F>) -> Result<usize> {
    x.label().ok_or_else(|| GyroError::CarrierMismatch { element: x.to_string(), instance: "cyclic".into() })
}

fn cyclic_orders<F: Real>(source: &GyroInstance<F>, target: &GyroInstance<F>, name: &str) -> Result<(usize, usize)> {
    match (source.kind(), target.kind()) {
        (Kind::Cyclic { n: a }, Kind::Cyclic { n: b }) => Ok((a, b)),
        _ => Err(GyroError::Unsupported(format!("{name} from {source} to {target}"))),
    }
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

/// `f ∈ O(H ∩ V, ε) ⇔ φ•(f) ∈ O(V, ε)` for an injective inclusion `φ: H → G`.
pub fn subgyrogroup_preimage_check<F: Real>(
    inclusion: &GroupoidHom<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    candidates: impl IntoIterator<Item = StepFunction<F>>,
) -> Result<LawCheck> {
    if !inclusion.is_injective()? {
        return Err(GyroError::NotInjective);
    }
    let w = inclusion.preimage(v)?;
    let mut check = tally("(φ•)⁻¹(O(V, ε)) = O(H ∩ V, ε)");
    for f in candidates {
        let lhs = f.in_neighborhood(&w, eps)?;
        let rhs = inclusion.lift(&f)?.in_neighborhood(v, eps)?;
        note(&mut check, lhs == rhs, || format!("f = {f:?}"));
    }
    if check.checked == 0 {
        return Err(GyroError::ZeroSamples);
    }
    Ok(check)
}

/// `φ•(f ⊕• g) = φ•(f) ⊕• φ•(g)` on the given pairs.
pub fn check_lift_homomorphism<'a, F: Real>(
    hom: &GroupoidHom<F>,
    pairs: impl IntoIterator<Item = (&'a StepFunction<F>, &'a StepFunction<F>)>,
) -> Result<LawCheck> {
    let mut check = tally("φ•(f ⊕ g) = φ•(f) ⊕ φ•(g)");
    for (f, g) in pairs {
        let lhs = hom.lift(&f.add(g)?)?;
        let rhs = hom.lift(f)?.add(&hom.lift(g)?)?;
        note(&mut check, lhs.equiv(&rhs), || format!("f = {f:?}, g = {g:?}"));
    }
    Ok(check)
}

/// `φ• ∘ i_G = i_H ∘ φ` on the given points.
pub fn check_commuting_square<F: Real>(hom: &GroupoidHom<F>, points: &[Element<F>]) -> Result<LawCheck> {
    let mut check = tally("φ• ∘ i_G = i_H ∘ φ");
    for x in points {
        let lhs = hom.lift(&StepFunction::constant(hom.source(), *x)?)?;
        let rhs = StepFunction::constant(hom.target(), hom.apply(x)?)?;
        note(&mut check, lhs == rhs, || format!("x = {x}"));
    }
    Ok(check)
}

/// `(ψ ∘ φ)• = ψ• ∘ φ•` on the given functions.
pub fn check_functoriality<'a, F: Real>(
    phi: &GroupoidHom<F>,
    psi: &GroupoidHom<F>,
    functions: impl IntoIterator<Item = &'a StepFunction<F>>,
) -> Result<LawCheck> {
    let composite = phi.then(psi)?;
    let mut check = tally("(ψ ∘ φ)• = ψ• ∘ φ•");
    for f in functions {
        let lhs = composite.lift(f)?;
        let rhs = psi.lift(&phi.lift(f)?)?;
        note(&mut check, lhs == rhs, || format!("f = {f:?}"));
    }
    Ok(check)
}

/// `φ(U) ⊆ V ⇒ φ•(O(U, ε)) ⊆ O(V, ε)` on sampled members of `O(U, ε)`.
pub fn continuity_check<F: Real>(
    hom: &GroupoidHom<F>,
    u: &NeighborhoodSpec<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    members: impl IntoIterator<Item = StepFunction<F>>,
) -> Result<LawCheck> {
    if !hom.maps_into(u, v)? {
        return Err(GyroError::InvalidNeighborhood(format!("φ({u}) is not inside {v}")));
    }
    let mut check = tally("φ•(O(U, ε)) ⊆ O(V, ε)");
    for f in members {
        if !f.in_neighborhood(u, eps)? {
            continue;
        }
        let ok = hom.lift(&f)?.in_neighborhood(v, eps)?;
        note(&mut check, ok, || format!("f = {f:?}"));
    }
    Ok(check)
}

/// For an onto `φ` between finite instances, every `h ∈ O(φ(U), ε)` has a
/// constructed preimage in `O(U, ε)`, so `φ•(O(U, ε)) ⊇ O(φ(U), ε)`.
pub fn open_map_check<F: Real>(
    hom: &GroupoidHom<F>,
    u: &NeighborhoodSpec<F>,
    eps: &Rational,
    candidates: impl IntoIterator<Item = StepFunction<F>>,
) -> Result<LawCheck> {
    let fallback = hom.right_inverse()?;
    let members = u
        .members()
        .ok_or_else(|| GyroError::Unsupported("open-map check on a ball neighborhood".into()))?;
    let image = hom.image(u)?;
    let mut inside = Vec::with_capacity(fallback.len());
    for (k, x) in fallback.iter().enumerate() {
        let mut pick = *x;
        for m in members {
            if hom.apply(m)?.label() == Some(k) {
                pick = *m;
                break;
            }
        }
        inside.push(pick);
    }
    let mut check = tally("O(φ(U), ε) ⊆ φ•(O(U, ε))");
    for h in candidates {
        if !h.in_neighborhood(&image, eps)? {
            continue;
        }
        let f = h.map_into(hom.source(), |y| {
            y.label()
                .and_then(|k| inside.get(k).copied())
                .ok_or_else(|| GyroError::CarrierMismatch { element: y.to_string(), instance: hom.target().to_string() })
        })?;
        let ok = f.in_neighborhood(u, eps)? && hom.lift(&f)?.equiv(&h);
        note(&mut check, ok, || format!("h = {h:?}"));
    }
    Ok(check)
}
