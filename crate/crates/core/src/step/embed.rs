use super::StepFunction;
use crate::error::{GyroError, Result};
use crate::gyro::{Element, GyroInstance, Gyrogroup, LawCheck, NeighborhoodSpec};
use crate::rational::Rational;
use crate::scalar::Real;

/// `i_G(x) = x•`, the constant function with value `x`.
pub fn embed_const<F: Real>(g: &GyroInstance<F>, x: Element<F>) -> Result<StepFunction<F>> {
    StepFunction::constant(g, x)
}

/// Certificate that a non-constant `f` lies outside the closure of the
/// constants: no `g ∈ O(V, ε)` makes `f ⊕• g` constant.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationWitness<F> {
    pub v: NeighborhoodSpec<F>,
    pub eps: Rational,
    /// `[a₁, a₂)` carrying `x₁`.
    pub first: (Rational, Rational, Element<F>),
    /// `[a₃, a₄)` carrying `x₂`.
    pub second: (Rational, Rational, Element<F>),
}

/// Picks two intervals with distinct values (maximising the shorter length,
/// leftmost pair on ties), a symmetric `V` with `(x₁ ⊕ V) ∩ (x₂ ⊕ V) = ∅`,
/// and `ε = min{a₂ − a₁, a₄ − a₃}`.
///
/// Finite carriers use `V = {0}`. Continuous carriers use a ball whose
/// radius starts at a quarter of the gyrodistance `‖⊖x₁ ⊕ x₂‖` and halves
/// until the gyrotriangle bound `ρ ⊕ ρ ≤ ‖⊖x₁ ⊕ x₂‖` holds and a sample
/// grid of `x₁ ⊕ ball(ρ)` stays out of `x₂ ⊕ ball(ρ)`.
pub fn separation_witness<F: Real>(f: &StepFunction<F>) -> Result<SeparationWitness<F>> {
    if f.is_constant() {
        return Err(GyroError::ConstantFunction);
    }
    let g = f.instance();
    let pieces: Vec<_> = f.pieces().collect();
    let mut best: Option<(Rational, usize, usize)> = None;
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if g.equiv(pieces[i].2, pieces[j].2) {
                continue;
            }
            let li = pieces[i].1 - pieces[i].0;
            let lj = pieces[j].1 - pieces[j].0;
            let shorter = if li < lj { li } else { lj };
            if best.as_ref().is_none_or(|(b, _, _)| &shorter > b) {
                best = Some((shorter, i, j));
            }
        }
    }
    let (eps, i, j) = best.ok_or(GyroError::ConstantFunction)?;
    let (x1, x2) = (*pieces[i].2, *pieces[j].2);
    let v = if g.is_exact() {
        NeighborhoodSpec::identity_only(g)
    } else {
        NeighborhoodSpec::ball(separating_radius(g, &x1, &x2)?)?
    };
    Ok(SeparationWitness {
        v,
        eps,
        first: (pieces[i].0.clone(), pieces[i].1.clone(), x1),
        second: (pieces[j].0.clone(), pieces[j].1.clone(), x2),
    })
}

fn separating_radius<F: Real>(g: &GyroInstance<F>, x1: &Element<F>, x2: &Element<F>) -> Result<F> {
    let delta = g.gyrodistance(x1, x2)?;
    let mut rho = delta / F::lit(4.0);
    for _ in 0..64 {
        let bound_ok = g.norm_sum_bound(rho, rho).is_some_and(|s| s <= delta);
        if bound_ok && grid_disjoint(g, x1, x2, rho)? {
            return Ok(rho);
        }
        rho = rho / F::lit(2.0);
    }
    Err(GyroError::Unsupported(format!("no separating radius found for {x1} and {x2}")))
}

/// Sample points `x₁ ⊕ y` for `y` on a polar grid inside `ball(ρ)`; none may
/// be within gyrodistance `ρ` of `x₂`.
fn grid_disjoint<F: Real>(g: &GyroInstance<F>, x1: &Element<F>, x2: &Element<F>, rho: F) -> Result<bool> {
    for y in ball_grid(g, rho) {
        let z = match g.op(x1, &y) {
            Ok(z) => z,
            Err(GyroError::EscapesCarrier) => continue,
            Err(e) => return Err(e),
        };
        if g.gyrodistance(x2, &z)? < rho {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn ball_grid<F: Real>(g: &GyroInstance<F>, rho: F) -> Vec<Element<F>> {
    const RADII: usize = 8;
    const DIRECTIONS: usize = 24;
    let mut out = vec![g.identity()];
    for i in 1..=RADII {
        let r = rho * F::lit(i as f64 / (RADII as f64 + 0.5));
        for k in 0..DIRECTIONS {
            let theta = F::lit(2.0 * std::f64::consts::PI * k as f64 / DIRECTIONS as f64);
            match g.identity() {
                Element::Disk(_) => out.push(Element::disk(r * theta.cos(), r * theta.sin())),
                Element::Velocity(_) => {
                    // latitude bands times longitude
                    let phi = F::lit(std::f64::consts::PI * (k % 6) as f64 / 5.0);
                    out.push(Element::Velocity([
                        r * phi.sin() * theta.cos(),
                        r * phi.sin() * theta.sin(),
                        r * phi.cos(),
                    ]));
                }
                Element::Label(_) => {}
            }
        }
    }
    out
}

/// Checks that `f ⊕• g` is non-constant for every candidate `g ∈ O(V, ε)`.
/// Candidates outside `O(V, ε)` are skipped.
pub fn verify_separation<'a, F: Real>(
    f: &StepFunction<F>,
    witness: &SeparationWitness<F>,
    candidates: impl IntoIterator<Item = &'a StepFunction<F>>,
) -> Result<LawCheck> {
    let mut check =
        LawCheck { law: "f ⊕• O(V, ε) misses the constants", checked: 0, failures: 0, first_failure: None };
    for g in candidates {
        if !g.in_neighborhood(&witness.v, &witness.eps)? {
            continue;
        }
        check.checked += 1;
        if f.add(g)?.is_constant() {
            check.failures += 1;
            check.first_failure.get_or_insert_with(|| format!("g = {g:?}"));
        }
    }
    Ok(check)
}
