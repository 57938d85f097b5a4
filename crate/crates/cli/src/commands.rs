use gyrostep::cardinal::{
    self, build_q_set, check_cover, q_set_member, sandwich_check, CutPolicy, NetworkSet, NetworkSpec, Side,
};
use gyrostep::hom::{check_commuting_square, check_lift_homomorphism, subgyrogroup_preimage_check, GroupoidHom};
use gyrostep::json::{element_to_json, instance_to_json, neighborhood_to_json, step_function_from_value};
use gyrostep::json::{step_function_to_json, witness_to_json};
use gyrostep::metric::{d_bullet, d_bullet_on, Discrete, HalfChord, Pseudometric};
use gyrostep::rational::{format_decimal, format_rational, int};
use gyrostep::sample::{enumerate_on, seeded, SampleRng, Sampler};
use gyrostep::step::{path, separation_witness, verify_separation};
use gyrostep::{
    Element64, GyroError, Gyrogroup, Instance64, LawSuite, MetricScalar, Neighborhood64, Partition, Rational, Result,
    Step64, StepFunction,
};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::input::{self, required, Operand};
use crate::report::{Outcome, Verification};
use crate::{Command, Opts};

/// Largest finite grid scanned exhaustively before falling back to samples.
const EXHAUSTIVE_LIMIT: usize = 20_000;

struct Ctx<'a> {
    opts: &'a Opts,
    rng: SampleRng,
}

impl Ctx<'_> {
    fn samples(&self, default: usize) -> Result<usize> {
        match self.opts.samples {
            Some(0) => Err(GyroError::ZeroSamples),
            Some(n) => Ok(n),
            None => Ok(default),
        }
    }

    fn instance(&self) -> Result<Instance64> {
        input::instance(required("instance", &self.opts.instance)?)
    }

    fn function(&self) -> Result<Step64> {
        input::step_function(required("f", &self.opts.f)?)
    }

    fn eps(&self) -> Result<Rational> {
        input::rational(required("eps", &self.opts.eps)?)
    }

    fn neighborhood(&self, g: &Instance64) -> Result<Neighborhood64> {
        input::neighborhood(g, required("V", &self.opts.v)?)
    }
}

pub fn run(command: Command, opts: &Opts) -> Result<Outcome> {
    let mut ctx = Ctx { opts, rng: seeded(opts.seed) };
    match command {
        Command::CheckAxioms => check_axioms(&mut ctx),
        Command::Add | Command::Gyr | Command::Coadd => arithmetic(&ctx, command),
        Command::Lift => lift(&mut ctx),
        Command::Dbullet => dbullet(&ctx),
        Command::Path => path_command(&ctx),
        Command::Measure => measure(&ctx),
        Command::Member => member(&mut ctx),
        Command::Separate => separate(&mut ctx),
        Command::Densify => densify(&ctx),
        Command::Cover => cover(&mut ctx),
        Command::Qset => qset(&mut ctx),
        Command::FromParts => from_parts(&ctx),
    }
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn round_trip(f: &Step64) -> Verification {
    let ok = step_function_from_value::<f64>(&step_function_to_json(f)).is_ok_and(|back| &back == f);
    Verification::single("emitted step function re-parses to the same canonical value", ok)
}

/// Re-evaluates `out` interval by interval on the common refinement of
/// `out` and `args` against `expected`.
fn pointwise(
    name: &str,
    out: &Step64,
    args: &[&Step64],
    expected: impl Fn(&[Element64]) -> Result<Element64>,
) -> Result<Verification> {
    let base = out.instance();
    let common = args.iter().fold(out.partition().clone(), |p, a| p.refine(a.partition()));
    let columns: Vec<Vec<Element64>> = args.iter().map(|a| a.values_on(&common)).collect();
    let mut v = Verification { name: name.into(), passed: true, checked: 0, failures: 0, detail: None };
    for (k, ((lo, _), y)) in common.intervals().zip(out.values_on(&common)).enumerate() {
        let xs: Vec<Element64> = columns.iter().map(|c| c[k]).collect();
        let want = expected(&xs)?;
        v.checked += 1;
        if !base.equiv(&want, &y) {
            v.failures += 1;
            v.detail.get_or_insert_with(|| format!("at r = {}: expected {want}, got {y}", format_rational(lo)));
        }
    }
    v.passed = v.failures == 0;
    Ok(v)
}

fn check_axioms(ctx: &mut Ctx) -> Result<Outcome> {
    let g = ctx.instance()?;
    let mut suite = LawSuite::new(&g, g.is_exact());
    let (mode, cases) = match (ctx.opts.exhaustive, g.elements()) {
        (true, Some(all)) => {
            for x in &all {
                suite.single(x);
                for y in &all {
                    suite.pair(x, y);
                    for z in &all {
                        suite.triple(x, y, z);
                    }
                }
            }
            ("exhaustive", all.len().pow(3))
        }
        (true, None) => return Err(GyroError::Unsupported(format!("exhaustive check over {g}"))),
        (false, _) => {
            let n = ctx.samples(1000)?;
            let s = Sampler::new(g);
            for _ in 0..n {
                let (x, y, z) = (s.element(&mut ctx.rng), s.element(&mut ctx.rng), s.element(&mut ctx.rng));
                suite.single(&x);
                suite.pair(&x, &y);
                suite.triple(&x, &y, &z);
            }
            ("sampled", n)
        }
    };
    let verification = suite.finish().into_iter().filter(|c| c.checked > 0).map(Into::into).collect();
    let mut result = json!({ "instance": instance_to_json(&g), "mode": mode, "cases": cases });
    if g.is_continuous() {
        result["tolerance"] = json!(g.tolerance());
    }
    Ok(Outcome { result, verification, exact: g.is_exact() })
}

fn arithmetic(ctx: &Ctx, command: Command) -> Result<Outcome> {
    let o = ctx.opts;
    let mut flags = vec![("f", &o.f), ("g", &o.g)];
    if command == Command::Gyr {
        flags.push(("h", &o.h));
    }
    let (g, operands) = input::operands(o.instance.as_deref(), &flags)?;
    let exact = g.is_exact();
    match operands.as_slice() {
        [Operand::Elem(a), Operand::Elem(b), rest @ ..] => {
            let (value, verification) = match (command, rest) {
                (Command::Add, []) => {
                    let sum = g.op(a, b)?;
                    let back = g.op(&g.inverse(a)?, &sum)?;
                    (sum, vec![Verification::single("⊖a ⊕ (a ⊕ b) = b", g.equiv(&back, b))])
                }
                (Command::Coadd, []) => {
                    let co = g.coadd(a, b)?;
                    let by_formula = g.op(a, &g.gyr_formula(a, &g.inverse(b)?, b)?)?;
                    let back = g.op(&g.coadd(a, &g.inverse(b)?)?, b)?;
                    (
                        co,
                        vec![
                            Verification::single("a ⊞ b = a ⊕ gyr[a, ⊖b](b)", g.equiv(&co, &by_formula)),
                            Verification::single("(a ⊞ ⊖b) ⊕ b = a", g.equiv(&back, a)),
                        ],
                    )
                }
                (Command::Gyr, [Operand::Elem(z)]) => {
                    let out = g.gyr(a, b, z)?;
                    let formula = g.gyr_formula(a, b, z)?;
                    (out, vec![Verification::single("gyr agrees with ⊖(a⊕b)⊕(a⊕(b⊕z))", g.equiv(&out, &formula))])
                }
                _ => return Err(GyroError::Malformed("operands mix step functions and elements".into())),
            };
            Ok(Outcome { result: json!({ "value": element_to_json(&value) }), verification, exact })
        }
        [Operand::Step(f), Operand::Step(h), rest @ ..] => {
            let base = g;
            let (value, mut verification) = match (command, rest) {
                (Command::Add, []) => {
                    let sum = f.add(h)?;
                    let check = pointwise("(f ⊕ g)(r) = f(r) ⊕ g(r)", &sum, &[f, h], |x| base.op(&x[0], &x[1]))?;
                    let back = f.neg()?.add(&sum)?;
                    (sum, vec![check, Verification::single("⊖f ⊕ (f ⊕ g) = g", back.equiv(h))])
                }
                (Command::Coadd, []) => {
                    let co = f.coadd(h)?;
                    let check = pointwise("(f ⊞ g)(r) = f(r) ⊞ g(r)", &co, &[f, h], |x| base.coadd(&x[0], &x[1]))?;
                    let back = f.coadd(&h.neg()?)?.add(h)?;
                    (co, vec![check, Verification::single("(f ⊞ ⊖g) ⊕ g = f", back.equiv(f))])
                }
                (Command::Gyr, [Operand::Step(k)]) => {
                    let out = StepFunction::gyr(f, h, k)?;
                    let check = pointwise("gyr[f, g](h)(r) = gyr[f(r), g(r)](h(r))", &out, &[f, h, k], |x| {
                        base.gyr_formula(&x[0], &x[1], &x[2])
                    })?;
                    (out, vec![check])
                }
                _ => return Err(GyroError::Malformed("operands mix step functions and elements".into())),
            };
            verification.push(round_trip(&value));
            Ok(Outcome { result: json!({ "value": step_function_to_json(&value) }), verification, exact })
        }
        _ => Err(GyroError::Malformed("operands mix step functions and elements".into())),
    }
}

/// The functions scanned by a check: every function on `partition` when
/// the carrier is finite and the grid small, otherwise sampled members
/// of `O(V, ε)` (or arbitrary functions without a neighborhood).
fn candidates(
    ctx: &mut Ctx,
    g: &Instance64,
    partition: &Partition,
    default_samples: usize,
    within: Option<(&Neighborhood64, &Rational)>,
) -> Result<(Vec<Step64>, &'static str)> {
    let small = g
        .order()
        .and_then(|n| n.checked_pow(u32::try_from(partition.len()).ok()?))
        .is_some_and(|total| total <= EXHAUSTIVE_LIMIT);
    if small && ctx.opts.samples.is_none() {
        if let Some(all) = enumerate_on(g, partition) {
            return Ok((all, "exhaustive"));
        }
    }
    let n = ctx.samples(default_samples)?;
    let s = Sampler::new(*g);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(match within {
            Some((v, eps)) => s.member(v, eps, &mut ctx.rng)?,
            None => s.step_function(&mut ctx.rng),
        });
    }
    Ok((out, "sampled"))
}

/// `p` with every interval cut into `k` equal parts, for the largest `k`
/// whose function grid stays within the exhaustive limit.
fn scan_grid(g: &Instance64, p: &Partition) -> Result<Partition> {
    let Some(n) = g.order() else { return Ok(p.clone()) };
    let fits = |k: usize| {
        u32::try_from(p.len() * k)
            .ok()
            .and_then(|e| n.checked_pow(e))
            .is_some_and(|total| total <= EXHAUSTIVE_LIMIT)
    };
    let mut k = 1;
    while fits(k + 1) {
        k += 1;
    }
    let extra: Vec<Rational> = p
        .intervals()
        .flat_map(|(a, b)| (1..k).map(move |j| a + (b - a) * Rational::new(j.into(), k.into())))
        .collect();
    p.with_points(&extra)
}

fn lift(ctx: &mut Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    let f = ctx.function()?;
    let names: Vec<&str> = required("hom", &o.hom)?.split(',').map(str::trim).collect();
    if names.iter().any(|n| n.is_empty()) {
        return Err(GyroError::Malformed("empty homomorphism name".into()));
    }
    let targets = match &o.target {
        Some(text) => input::instance_list(text)?,
        None => Vec::new(),
    };
    let mut targets = targets.into_iter();
    let mut source = *f.instance();
    let mut chain = Vec::with_capacity(names.len());
    for name in &names {
        let target = match *name {
            "identity" => source,
            _ => targets
                .next()
                .ok_or_else(|| GyroError::Malformed(format!("--target needs an instance for {name:?}")))?,
        };
        let hom = GroupoidHom::catalog(name, source, target)?;
        source = *hom.target();
        chain.push(hom);
    }
    if targets.next().is_some() {
        return Err(GyroError::Malformed("more --target instances than homomorphisms need".into()));
    }
    let composite = chain[1..].iter().try_fold(chain[0].clone(), |acc, h| acc.then(h))?;
    let lifted = composite.lift(&f)?;

    let mut verification = vec![pointwise("φ•(f)(r) = φ(f(r))", &lifted, &[&f], |x| composite.apply(&x[0]))?];
    let mut stepwise = f.clone();
    for h in &chain {
        stepwise = h.lift(&stepwise)?;
    }
    verification.push(Verification::single("(ψ ∘ φ)• = ψ• ∘ φ•", stepwise == lifted));
    verification.push(check_commuting_square(&composite, f.values())?.into());
    if let Some(text) = &o.g {
        let g = input::step_function(text)?;
        verification.push(check_lift_homomorphism(&composite, [(&f, &g)])?.into());
    }
    if o.v.is_some() {
        let v = ctx.neighborhood(composite.target())?;
        let eps = ctx.eps()?;
        let src = *composite.source();
        let (cands, _) = candidates(ctx, &src, f.partition(), 200, None)?;
        verification.push(subgyrogroup_preimage_check(&composite, &v, &eps, cands)?.into());
    }
    verification.push(round_trip(&lifted));
    let exact = composite.source().is_exact() && composite.target().is_exact();
    let result = json!({
        "hom": composite.name(),
        "source": instance_to_json(composite.source()),
        "target": instance_to_json(composite.target()),
        "claims_open": composite.claims_open(),
        "claims_onto": composite.claims_onto(),
        "lifted": step_function_to_json(&lifted),
    });
    Ok(Outcome { result, verification, exact })
}

fn same_value<V: MetricScalar>(a: &V, b: &V) -> bool {
    match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => x == y,
        _ => (a.approx() - b.approx()).abs() <= 1e-9,
    }
}

fn midpoints(p: &Partition) -> Vec<Rational> {
    p.intervals().map(|(a, b)| (a + b) / int(2)).collect()
}

fn dbullet(ctx: &Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    let f = input::step_function(required("f", &o.f)?)?;
    let g = input::step_function(required("g", &o.g)?)?;
    let inst = *f.instance();
    let default = if inst.is_exact() { "discrete" } else { "euclidean" };
    match o.metric.as_deref().unwrap_or(default) {
        "discrete" => dbullet_with(&Discrete, &f, &g),
        "euclidean" => dbullet_with(&HalfChord, &f, &g),
        other => Err(GyroError::Malformed(format!("unknown metric {other:?}"))),
    }
}

fn dbullet_with<D: Pseudometric<f64>>(d: &D, f: &Step64, g: &Step64) -> Result<Outcome> {
    let inst = *f.instance();
    let value = d_bullet(d, f, g)?;
    let common = f.partition().refine(g.partition());
    let refined = common.with_points(&midpoints(&common))?;
    let mut verification = vec![
        Verification::single("d•(f, g) = d•(g, f)", same_value(&value, &d_bullet(d, g, f)?)),
        Verification::single("d• is unchanged on a finer partition", same_value(&value, &d_bullet_on(d, f, g, &refined)?)),
        Verification::single("d•(f, f) = 0", same_value(&d_bullet(d, f, f)?, &D::Value::zero())),
        Verification::single("d•(f, g) ≤ sup d", value <= d.bound()),
    ];
    if let (Some(x), Some(y)) = (f.constant_value(), g.constant_value()) {
        verification.push(Verification::single("d•(x•, y•) = d(x, y)", same_value(&value, &d.distance(&inst, x, y)?)));
    }
    let exact_value = value.as_exact().filter(|_| inst.is_exact());
    let mut result = json!({ "metric": d.name(), "value": format_decimal(value.approx(), 12) });
    if let Some(r) = &exact_value {
        result["exact"] = rat(r);
    }
    Ok(Outcome { result, verification, exact: exact_value.is_some() })
}

fn path_command(ctx: &Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    let f = ctx.function()?;
    let t = input::rational(required("t", &o.t)?)?;
    let phi = path(&f, &t)?;
    let start = path(&f, &Rational::zero())?;
    let end = path(&f, &Rational::one())?;
    let m0 = phi.disagreement_measure(&start)?;
    let m1 = phi.disagreement_measure(&end)?;
    let mut verification = vec![
        Verification::single("φ(0) = 0•", start == StepFunction::identity(f.instance())),
        Verification::single("φ(1) = f", end == f),
        Verification::single("μ{φ(t) ≠ φ(0)} ≤ |t − 0|", m0 <= t.abs()),
        Verification::single("μ{φ(t) ≠ φ(1)} ≤ |t − 1|", m1 <= (&t - int(1)).abs()),
    ];
    let mut result = json!({
        "t": rat(&t),
        "phi_t": step_function_to_json(&phi),
        "measure_vs_0": rat(&m0),
        "measure_vs_1": rat(&m1),
    });
    if o.v.is_some() {
        let v = ctx.neighborhood(f.instance())?;
        let eps = ctx.eps()?;
        let f_inside = f.in_neighborhood(&v, &eps)?;
        result["f_in_neighborhood"] = json!(f_inside);
        if f_inside {
            verification.push(Verification::single("f ∈ O(V, ε) ⇒ φ(t) ∈ O(V, ε)", phi.in_neighborhood(&v, &eps)?));
        }
    }
    verification.push(round_trip(&phi));
    Ok(Outcome { result, verification, exact: true })
}

/// `μ{r : f(r) ∉ V}` re-evaluated through `eval` at each left endpoint.
fn bad_measure_by_eval(f: &Step64, v: &Neighborhood64) -> Result<Rational> {
    let mut total = Rational::zero();
    for (a, b, _) in f.pieces() {
        if !v.contains(f.instance(), f.eval(a)?) {
            total += b - a;
        }
    }
    Ok(total)
}

fn measure(ctx: &Ctx) -> Result<Outcome> {
    let f = ctx.function()?;
    let v = ctx.neighborhood(f.instance())?;
    let bad = f.bad_measure(&v)?;
    let mut verification =
        vec![Verification::single("bad measure re-evaluated interval by interval", bad == bad_measure_by_eval(&f, &v)?)];
    let mut result = json!({ "V": neighborhood_to_json(&v), "bad_measure": rat(&bad) });
    if ctx.opts.eps.is_some() {
        let eps = ctx.eps()?;
        let inside = f.in_neighborhood(&v, &eps)?;
        result["in_neighborhood"] = json!(inside);
        verification.push(Verification::single("f ∈ O(V, ε) ⇔ bad measure < ε", inside == (bad < eps)));
    }
    Ok(Outcome { result, verification, exact: true })
}

fn member(ctx: &mut Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    if o.f.is_none() {
        let g = ctx.instance()?;
        let v = ctx.neighborhood(&g)?;
        let eps = ctx.eps()?;
        let n = ctx.samples(1)?;
        let s = Sampler::new(g);
        let mut members = Vec::with_capacity(n);
        let mut check =
            Verification { name: "sampled h ∈ O(V, ε)".into(), passed: true, checked: 0, failures: 0, detail: None };
        for _ in 0..n {
            let h = s.member(&v, &eps, &mut ctx.rng)?;
            check.checked += 1;
            if !h.in_neighborhood(&v, &eps)? {
                check.failures += 1;
            }
            members.push(h);
        }
        check.passed = check.failures == 0;
        let reparsed = members.iter().filter(|h| round_trip(h).passed).count();
        let mut trip = Verification::single("emitted step functions re-parse to the same canonical values", true);
        trip.checked = members.len();
        trip.failures = members.len() - reparsed;
        trip.passed = trip.failures == 0;
        let verification = vec![check, trip];
        let result = json!({
            "V": neighborhood_to_json(&v),
            "eps": rat(&eps),
            "members": members.iter().map(step_function_to_json).collect::<Vec<_>>(),
        });
        return Ok(Outcome { result, verification, exact: g.is_exact() });
    }
    let f = ctx.function()?;
    let inst = *f.instance();
    let v = ctx.neighborhood(&inst)?;
    let eps = ctx.eps()?;
    let (relation, bad, inside) = match &o.g {
        Some(text) => {
            let g = input::step_function(text)?;
            let bad = f.translate_bad_measure(&g, &v)?;
            let inside = f.translate_contains(&g, &v, &eps)?;
            let common = f.partition().refine(g.partition());
            let mut again = Rational::zero();
            for (a, b) in common.intervals() {
                let d = inst.op(&inst.inverse(f.eval(a)?)?, g.eval(a)?)?;
                if !v.contains(&inst, &d) {
                    again += b - a;
                }
            }
            let check = Verification::single("μ{⊖f(r) ⊕ g(r) ∉ V} re-evaluated pointwise", again == bad);
            ("g ∈ f ⊕ O(V, ε)", bad, (inside, check))
        }
        None => {
            let bad = f.bad_measure(&v)?;
            let check = Verification::single("bad measure re-evaluated interval by interval", bad_measure_by_eval(&f, &v)? == bad);
            ("f ∈ O(V, ε)", bad.clone(), (f.in_neighborhood(&v, &eps)?, check))
        }
    };
    let (inside, check) = inside;
    let verification = vec![check, Verification::single("membership ⇔ bad measure < ε", inside == (bad < eps))];
    let result = json!({
        "relation": relation,
        "member": inside,
        "bad_measure": rat(&bad),
        "V": neighborhood_to_json(&v),
        "eps": rat(&eps),
    });
    Ok(Outcome { result, verification, exact: inst.is_exact() })
}

fn separate(ctx: &mut Ctx) -> Result<Outcome> {
    let f = ctx.function()?;
    let inst = *f.instance();
    let w = separation_witness(&f)?;
    let grid = scan_grid(&inst, f.partition())?;
    let (cands, mode) = candidates(ctx, &inst, &grid, 200, Some((&w.v, &w.eps)))?;
    let (x1, x2) = (w.first.2, w.second.2);
    let shorter = {
        let (l1, l2) = (&w.first.1 - &w.first.0, &w.second.1 - &w.second.0);
        if l1 < l2 { l1 } else { l2 }
    };
    let mut verification = vec![
        Verification::single("witness intervals carry distinct values", !inst.equiv(&x1, &x2)),
        Verification::single("ε is the shorter witness interval", shorter == w.eps),
        Verification::single(
            "witness intervals are pieces of f",
            f.eval(&w.first.0)? == &x1 && f.eval(&w.second.0)? == &x2,
        ),
    ];
    if let Some(members) = w.v.members() {
        let mut disjoint = true;
        for a in members {
            for b in members {
                disjoint &= !inst.equiv(&inst.op(&x1, a)?, &inst.op(&x2, b)?);
            }
        }
        verification.push(Verification::single("(x₁ ⊕ V) ∩ (x₂ ⊕ V) = ∅", disjoint));
    }
    let mut scan = verify_separation(&f, &w, &cands)?;
    if scan.checked == 0 {
        scan.first_failure = Some("no candidate fell inside O(V, ε)".into());
    }
    verification.push(scan.into());
    let interval = |(a, b, x): &(Rational, Rational, Element64)| json!({ "from": rat(a), "to": rat(b), "value": element_to_json(x) });
    let result = json!({
        "V": neighborhood_to_json(&w.v),
        "eps": rat(&w.eps),
        "first": interval(&w.first),
        "second": interval(&w.second),
        "scan": { "mode": mode, "candidates": cands.len() },
    });
    Ok(Outcome { result, verification, exact: inst.is_exact() })
}

fn cut_displacement(f: &Step64, policy: CutPolicy, budget: &Rational) -> Rational {
    policy
        .shifted(f.partition(), budget)
        .iter()
        .zip(f.partition().cuts())
        .fold(Rational::zero(), |acc, (b, a)| acc + (b - a))
}

fn densify(ctx: &Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    let f = ctx.function()?;
    let inst = *f.instance();
    let v = ctx.neighborhood(&inst)?;
    let eps = ctx.eps()?;
    let dense = input::dense(&inst, o.dense.as_deref())?;
    let policy = input::cut_policy(o.cut_policy.as_deref(), CutPolicy::Keep)?;
    let w = cardinal::densify(&f, &dense, &v, &eps, policy)?;
    let verification = vec![
        Verification::single("g ∈ f ⊕ O(V, ε)", f.translate_contains(&w.g, &v, &eps)?),
        Verification::single("values of g lie in D", w.g.values().iter().all(|y| dense.contains(&inst, y))),
        Verification::single("Σ(b_k − a_k) < ε", cut_displacement(&f, policy, &eps) < eps),
        round_trip(&w.g),
    ];
    Ok(Outcome { result: witness_to_json(&w), verification, exact: inst.is_exact() })
}

fn cover(ctx: &mut Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    let f = ctx.function()?;
    let inst = *f.instance();
    let v = ctx.neighborhood(&inst)?;
    let eps = ctx.eps()?;
    let dense = input::dense(&inst, o.dense.as_deref())?;
    let policy = input::cut_policy(o.cut_policy.as_deref(), CutPolicy::Keep)?;
    let side = input::side(o.side.as_deref())?;
    let w = cardinal::narrow_cover_witness(&f, &dense, &v, &eps, side, policy)?;
    let membership = match side {
        Side::Left => Verification::single("f ∈ g ⊕ O(V, ε)", w.g.translate_contains(&f, &v, &eps)?),
        Side::Right => Verification::single("f ⊟ g ∈ O(V, ε)", f.cosub(&w.g)?.in_neighborhood(&v, &eps)?),
    };
    let points = match inst.elements() {
        Some(all) => all,
        None => {
            let s = Sampler::new(inst);
            (0..ctx.samples(100)?).map(|_| s.element(&mut ctx.rng)).collect()
        }
    };
    let verification = vec![
        membership,
        Verification::single("values of g lie in D", w.g.values().iter().all(|y| dense.contains(&inst, y))),
        Verification::single("Σ(b_k − a_k) < ε", cut_displacement(&f, policy, &eps) < eps),
        check_cover(&inst, &dense, &v, side, &points)?.into(),
        round_trip(&w.g),
    ];
    Ok(Outcome { result: witness_to_json(&w), verification, exact: inst.is_exact() })
}

fn network_json(p: &NetworkSet<f64>) -> Value {
    match p {
        NetworkSet::Finite(points) => json!({ "set": points.iter().map(element_to_json).collect::<Vec<_>>() }),
        NetworkSet::ClosedBall { center, radius } => json!({ "center": element_to_json(center), "radius": rat(radius) }),
    }
}

/// `μ{r : b_k ≤ r < b_{k+1}, f(r) ∉ P_{k+1}}` by intersecting pieces with blocks.
fn q_bad_measure(f: &Step64, b: &[Rational], p: &[NetworkSet<f64>]) -> Result<Rational> {
    let mut total = Rational::zero();
    let mut start = Rational::zero();
    for (end, member) in b.iter().zip(p) {
        for (lo, hi, x) in f.pieces() {
            let from = if lo > &start { lo } else { &start };
            let to = if hi < end { hi } else { end };
            if from < to && !member.contains(f.instance(), x)? {
                total += to - from;
            }
        }
        start = end.clone();
    }
    Ok(total)
}

fn qset(ctx: &mut Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    let f = ctx.function()?;
    let inst = *f.instance();
    if let Some(n) = o.n {
        let b = input::rational_list(required("b", &o.b)?)?;
        let p = input::network_sets(&inst, required("P", &o.p)?)?;
        let inside = q_set_member(&f, n, &b, &p)?;
        let bad = q_bad_measure(&f, &b, &p)?;
        let threshold = Rational::new(1.into(), n.into());
        let verification =
            vec![Verification::single("membership ⇔ block-wise bad measure < 1/n", inside == (bad < threshold))];
        let result = json!({ "member": inside, "bad_measure": rat(&bad), "threshold": rat(&threshold) });
        return Ok(Outcome { result, verification, exact: inst.is_exact() });
    }
    let v = ctx.neighborhood(&inst)?;
    let eps = ctx.eps()?;
    let network = match &o.p {
        Some(text) => NetworkSpec::Explicit(input::network_sets(&inst, text)?),
        None => NetworkSpec::DyadicBalls,
    };
    let policy = input::cut_policy(o.cut_policy.as_deref(), CutPolicy::Dyadic)?;
    let q = build_q_set(&f, &v, &eps, &network, policy)?;
    let half = q.n / 2;
    let shift = q.b.iter().zip(f.partition().cuts()).fold(Rational::zero(), |acc, (b, a)| acc + (b - a));
    let mut between = true;
    for (x, p) in f.values().iter().zip(&q.p) {
        between &= p.contains(&inst, x)? && p.inside_translate(&inst, x, &v)?;
    }
    let samples = ctx.samples(100)?;
    let sandwich = sandwich_check(&Sampler::new(inst), &f, &v, &eps, &network, &mut ctx.rng, samples)?;
    let verification = vec![
        Verification::single("f ∈ Q(m, 2n, b, P)", q.contains(&f)?),
        Verification::single("1/n < ε", Rational::new(1.into(), half.into()) < eps),
        Verification::single("Σ(b_k − a_k) < 1/2n", shift < Rational::new(1.into(), q.n.into())),
        Verification::single("x_k ∈ P_k ⊆ x_k ⊕ V", between),
        sandwich.into(),
    ];
    let result = json!({
        "m": q.m(),
        "n": q.n,
        "b": q.b.iter().map(rat).collect::<Vec<_>>(),
        "P": q.p.iter().map(network_json).collect::<Vec<_>>(),
    });
    Ok(Outcome { result, verification, exact: inst.is_exact() })
}

fn from_parts(ctx: &Ctx) -> Result<Outcome> {
    let o = ctx.opts;
    let inst = ctx.instance()?;
    let values = input::element_list(&inst, required("values", &o.values)?)?;
    let cuts = input::rational_list(o.cuts.as_deref().unwrap_or(""))?;
    let f = StepFunction::from_parts(&inst, values.clone(), &cuts)?;
    let tuple = Partition::from_cuts(&cuts)?;
    let mut agree = true;
    for ((a, b), x) in tuple.intervals().zip(&values) {
        let mid = (a + b) / int(2);
        agree &= inst.equiv(f.eval(a)?, x) && inst.equiv(f.eval(&mid)?, x);
    }
    let canonical = f.values().windows(2).all(|w| !inst.equiv(&w[0], &w[1]));
    let gap = tuple.min_gap();
    let least_m = (gap.recip()).ceil();
    let verification = vec![
        Verification::single("f agrees with the tuple on every sub-interval", agree),
        Verification::single("adjacent values of f differ", canonical),
        round_trip(&f),
    ];
    let result = json!({
        "f": step_function_to_json(&f),
        "min_gap": rat(&gap),
        "least_m": rat(&least_m),
    });
    Ok(Outcome { result, verification, exact: inst.is_exact() })
}
