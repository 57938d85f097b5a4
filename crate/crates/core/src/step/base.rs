//! Sampled checks of the neighborhood-base conditions for `O(V, ε)`.

use num_traits::{Signed, Zero};
use rand::Rng;

use super::StepFunction;
use crate::error::{GyroError, Result};
use crate::gyro::{Gyrogroup, LawCheck, NeighborhoodSpec};
use crate::rational::{int, min_rational, Rational};
use crate::sample::Sampler;
use crate::scalar::Real;

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

/// `O(V, ε/2) ⊕• O(V, ε/2) ⊆ O(U, ε)`, given `V ⊕ V ⊆ U`.
pub fn check_sum_condition<F: Real, R: Rng + ?Sized>(
    sampler: &Sampler<F>,
    u: &NeighborhoodSpec<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    rng: &mut R,
    samples: usize,
) -> Result<LawCheck> {
    let g = &sampler.instance;
    if !v.sum_within(g, u)? {
        return Err(GyroError::InvalidNeighborhood(format!("{v} ⊕ {v} is not inside {u}")));
    }
    let half = eps / int(2);
    let mut check = tally("O(V, ε/2) ⊕ O(V, ε/2) ⊆ O(U, ε)");
    for _ in 0..samples {
        let a = sampler.member(v, &half, rng)?;
        let b = sampler.member(v, &half, rng)?;
        let ok = a.add(&b)?.in_neighborhood(u, eps)?;
        note(&mut check, ok, || format!("f = {a:?}, g = {b:?}"));
    }
    Ok(check)
}

/// `O(U ∩ V, min(ε₁, ε₂)) ⊆ O(U, ε₁) ∩ O(V, ε₂)`.
pub fn check_intersection_condition<F: Real, R: Rng + ?Sized>(
    sampler: &Sampler<F>,
    u: &NeighborhoodSpec<F>,
    v: &NeighborhoodSpec<F>,
    eps_u: &Rational,
    eps_v: &Rational,
    rng: &mut R,
    samples: usize,
) -> Result<LawCheck> {
    let g = &sampler.instance;
    let w = u.intersection(g, v);
    let eps = min_rational(eps_u, eps_v);
    let mut check = tally("O(U ∩ V, min ε) ⊆ O(U, ε₁) ∩ O(V, ε₂)");
    for _ in 0..samples {
        let h = sampler.member(&w, eps, rng)?;
        let ok = h.in_neighborhood(u, eps_u)? && h.in_neighborhood(v, eps_v)?;
        note(&mut check, ok, || format!("h = {h:?}"));
    }
    Ok(check)
}

/// `⊖• O(V, ε) ⊆ O(U, ε)`, given `⊖V ⊆ U`.
pub fn check_inverse_condition<F: Real, R: Rng + ?Sized>(
    sampler: &Sampler<F>,
    u: &NeighborhoodSpec<F>,
    v: &NeighborhoodSpec<F>,
    eps: &Rational,
    rng: &mut R,
    samples: usize,
) -> Result<LawCheck> {
    let g = &sampler.instance;
    if !v.inverse_within(g, u)? {
        return Err(GyroError::InvalidNeighborhood(format!("⊖{v} is not inside {u}")));
    }
    let mut check = tally("⊖ O(V, ε) ⊆ O(U, ε)");
    for _ in 0..samples {
        let f = sampler.member(v, eps, rng)?;
        let ok = f.neg()?.in_neighborhood(u, eps)?;
        note(&mut check, ok, || format!("f = {f:?}"));
    }
    Ok(check)
}

/// `(U, ε)` with `f ∉ O(U, ε) ⊟• O(U, ε)` for `f ≠ 0•`.
///
/// `U ⊟ U` avoids every non-identity value of `f`, and `ε` is half the
/// measure of the support of `f`: two members of `O(U, ε)` then share a
/// point of the support where both take values in `U`. The full support
/// measure is not enough (see the tests).
///
/// Finite carriers grow `U` greedily from `{0}` in label order; continuous
/// carriers use the ball of half the smallest non-identity norm, since
/// `‖a ⊟ b‖ ≤ ‖a‖ ⊕ ‖b‖ < 2ρ`.
pub fn hausdorff_witness<F: Real>(f: &StepFunction<F>) -> Result<(NeighborhoodSpec<F>, Rational)> {
    let g = f.instance();
    let zero = g.identity();
    let support = f
        .pieces()
        .filter(|(_, _, x)| !g.equiv(x, &zero))
        .fold(Rational::zero(), |acc, (a, b, _)| acc + (b - a));
    if !support.is_positive() {
        return Err(GyroError::IdentityFunction);
    }
    let eps = support / int(2);
    let nonzero: Vec<_> = f.values().iter().filter(|x| !g.equiv(x, &zero)).copied().collect();
    let u = match g.elements() {
        Some(all) => {
            let mut u = NeighborhoodSpec::identity_only(g);
            for a in all.into_iter().skip(1) {
                let mut members = u.members().unwrap_or_default().to_vec();
                members.push(a);
                let candidate = NeighborhoodSpec::set(g, members)?;
                let m = candidate.members().unwrap_or_default();
                let mut clash = false;
                'scan: for x in m {
                    for y in m {
                        let d = g.cosub(x, y)?;
                        if nonzero.iter().any(|v| g.equiv(v, &d)) {
                            clash = true;
                            break 'scan;
                        }
                    }
                }
                if !clash {
                    u = candidate;
                }
            }
            u
        }
        None => {
            let smallest = nonzero
                .iter()
                .filter_map(|x| x.norm())
                .fold(F::infinity(), F::min);
            NeighborhoodSpec::ball(smallest / F::lit(2.0))?
        }
    };
    Ok((u, eps))
}

/// Samples `h ∈ O(U, ε)` and checks both a random `g ∈ O(U, ε)` with
/// `g ⊟• h ≠ f` and the targeted candidate `g = f ⊕• h` (for which
/// `g ⊟• h = f`) lying outside `O(U, ε)`.
pub fn check_hausdorff<F: Real, R: Rng + ?Sized>(
    sampler: &Sampler<F>,
    f: &StepFunction<F>,
    rng: &mut R,
    samples: usize,
) -> Result<LawCheck> {
    let (u, eps) = hausdorff_witness(f)?;
    let mut check = tally("f ∉ O(U, ε) ⊟ O(U, ε)");
    for _ in 0..samples {
        let h = sampler.member(&u, &eps, rng)?;
        let g = sampler.member(&u, &eps, rng)?;
        let ok = !g.cosub(&h)?.equiv(f);
        note(&mut check, ok, || format!("g = {g:?}, h = {h:?}"));

        let targeted = f.add(&h)?;
        if targeted.cosub(&h)?.equiv(f) {
            let ok = !targeted.in_neighborhood(&u, &eps)?;
            note(&mut check, ok, || format!("g = {targeted:?}, h = {h:?}"));
        }
    }
    Ok(check)
}
