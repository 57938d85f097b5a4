use std::process::{Command, Output};

use gyrostep::json::step_function_from_value;
use gyrostep::Step64;
use serde_json::Value;

const Z5: &str = r#"{"kind":"cyclic","n":5}"#;
const F: &str = r#"{"instance":{"kind":"cyclic","n":5},"breakpoints":["0","1/3","1"],"values":[{"label":2},{"label":3}]}"#;
const G: &str = r#"{"instance":{"kind":"cyclic","n":5},"breakpoints":["0","1/2","1"],"values":[{"label":1},{"label":0}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gyrostep")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let json = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    (out.status.code().expect("exit code"), json)
}

fn all_passed(r: &Value) -> bool {
    let checks = r["verification"].as_array().expect("verification list");
    !checks.is_empty() && checks.iter().all(|c| c["passed"] == true)
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["verification"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name:?} in {r}"))
}

fn step(v: &Value) -> Step64 {
    step_function_from_value(v).expect("emitted step functions parse")
}

#[test]
fn cyclic_axioms_exhaustive() {
    let (code, r) = report(&["check-axioms", "--instance", Z5, "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mode"], "exhaustive");
    assert_eq!(r["arithmetic"], "exact");
    for law in ["G1 identity", "G2 inverse", "G3 left gyroassociativity", "G4 left loop property"] {
        assert_eq!(check(&r, law)["passed"], true);
    }
    assert!(all_passed(&r));
}

#[test]
fn sampled_axioms_on_the_disk() {
    let (code, r) = report(&["check-axioms", "--instance", r#"{"kind":"mobius"}"#, "--samples", "200"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["arithmetic"], "approximate");
    assert_eq!(check(&r, "G3 left gyroassociativity")["checked"], 200);
}

#[test]
fn exhaustive_needs_a_finite_carrier() {
    let (code, r) = report(&["check-axioms", "--instance", r#"{"kind":"einstein"}"#, "--exhaustive"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "Unsupported");
}

#[test]
fn path_at_one_half() {
    let (code, r) = report(&["path", "--f", F, "--t", "1/2"]);
    assert_eq!(code, 0);
    let phi = step(&r["result"]["phi_t"]);
    let pts: Vec<String> = phi.breakpoints().iter().map(ToString::to_string).collect();
    assert_eq!(pts, ["0", "1/6", "1/3", "2/3", "1"]);
    assert_eq!(r["result"]["measure_vs_0"], "1/2");
    assert_eq!(r["result"]["measure_vs_1"], "1/2");
    assert_eq!(check(&r, "μ{φ(t) ≠ φ(0)} ≤ |t − 0|")["passed"], true);
    assert_eq!(check(&r, "μ{φ(t) ≠ φ(1)} ≤ |t − 1|")["passed"], true);
}

#[test]
fn path_stays_in_the_neighborhood() {
    let v = r#"{"set":[{"label":2}]}"#;
    let (code, r) = report(&["path", "--f", F, "--t", "0.25", "--V", v, "--eps", "3/4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["f_in_neighborhood"], true);
    assert_eq!(check(&r, "f ∈ O(V, ε) ⇒ φ(t) ∈ O(V, ε)")["passed"], true);
    assert_eq!(r["result"]["t"], "1/4");
}

#[test]
fn separate_gives_a_checked_witness() {
    let (code, r) = report(&["separate", "--f", F]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["V"]["set"].as_array().unwrap().len(), 1);
    assert_eq!(r["result"]["eps"], "1/3");
    assert_eq!(r["result"]["scan"]["mode"], "exhaustive");
    assert!(all_passed(&r));
}

#[test]
fn separate_rejects_constants() {
    let c = r#"{"instance":{"kind":"cyclic","n":5},"breakpoints":["0","1"],"values":[{"label":4}]}"#;
    let (code, r) = report(&["separate", "--f", c]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "ConstantFunction");
}

#[test]
fn output_is_deterministic_per_seed() {
    let args = ["member", "--instance", r#"{"kind":"mobius"}"#, "--V", r#"{"ball":0.2}"#, "--eps", "1/3", "--samples", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    other.extend(["--seed", "7"]);
    assert_ne!(run(&other).stdout, a.stdout);
}

#[test]
fn emitted_functions_round_trip_and_chain() {
    let (code, r) = report(&["add", "--f", F, "--g", G]);
    assert_eq!(code, 0);
    let sum = &r["result"]["value"];
    let parsed = step(sum);
    assert_eq!(step(&serde_json::to_value(gyrostep::json::step_function_to_json(&parsed)).unwrap()), parsed);
    // feed the output back in: (f ⊕ g) ⊕ ⊖g = f for a group
    let text = sum.to_string();
    let neg_g = r#"{"instance":{"kind":"cyclic","n":5},"breakpoints":["0","1/2","1"],"values":[{"label":4},{"label":0}]}"#;
    let (code, back) = report(&["add", "--f", &text, "--g", neg_g]);
    assert_eq!(code, 0);
    assert_eq!(step(&back["result"]["value"]), step(&serde_json::from_str(F).unwrap()));
}

#[test]
fn element_arithmetic() {
    let (_, r) = report(&["add", "--instance", Z5, "--f", r#"{"label":2}"#, "--g", r#"{"label":4}"#]);
    assert_eq!(r["result"]["value"]["label"], 1);
    let (_, r) = report(&["coadd", "--instance", Z5, "--f", r#"{"label":2}"#, "--g", r#"{"label":4}"#]);
    assert_eq!(r["result"]["value"]["label"], 1);
    let e = r#"{"kind":"einstein"}"#;
    let (code, r) = report(&[
        "gyr",
        "--instance",
        e,
        "--f",
        r#"{"vx":0.5,"vy":0.1,"vz":0.0}"#,
        "--g",
        r#"{"vx":0.0,"vy":0.6,"vz":0.2}"#,
        "--h",
        r#"{"vx":0.1,"vy":0.1,"vz":0.1}"#,
    ]);
    assert_eq!(code, 0);
    assert!(all_passed(&r));
}

#[test]
fn dbullet_reports_exact_fraction() {
    let (code, r) = report(&["dbullet", "--f", F, "--g", G]);
    assert_eq!(code, 0);
    // f and g differ everywhere: 2≠1 on [0,1/3), 3≠1 on [1/3,1/2), 3≠0 after
    assert_eq!(r["result"]["exact"], "1");
    let h = r#"{"instance":{"kind":"cyclic","n":5},"breakpoints":["0","1/2","1"],"values":[{"label":2},{"label":3}]}"#;
    let (_, r) = report(&["dbullet", "--f", F, "--g", h]);
    assert_eq!(r["result"]["exact"], "1/6");
    assert_eq!(r["result"]["value"], "0.166666666667");
}

#[test]
fn membership_and_measure() {
    let v = r#"{"set":[{"label":2}]}"#;
    let (_, r) = report(&["measure", "--f", F, "--V", v]);
    assert_eq!(r["result"]["bad_measure"], "0");
    let v1 = r#"{"set":[{"label":1}]}"#;
    let (code, r) = report(&["member", "--f", F, "--V", v1, "--eps", "0.7"]);
    assert_eq!(code, 0, "a negative answer is not a failed check");
    assert_eq!(r["result"]["member"], false);
    assert_eq!(r["result"]["bad_measure"], "1");
    assert_eq!(r["result"]["eps"], "7/10");
}

#[test]
fn lift_through_the_catalog() {
    let f10 = r#"{"instance":{"kind":"cyclic","n":10},"breakpoints":["0","1/3","1"],"values":[{"label":7},{"label":2}]}"#;
    let (code, r) = report(&["lift", "--f", f10, "--hom", "mod", "--target", Z5]);
    assert_eq!(code, 0);
    let lifted = step(&r["result"]["lifted"]);
    assert!(lifted.is_constant());
    let (code, r) = report(&[
        "lift",
        "--f",
        F,
        "--hom",
        "inclusion,identity,mod",
        "--target",
        r#"[{"kind":"cyclic","n":10},{"kind":"cyclic","n":5}]"#,
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(check(&r, "(ψ ∘ φ)• = ψ• ∘ φ•")["passed"], true);
    let (code, _) = report(&["lift", "--f", F, "--hom", "mod", "--target", r#"{"kind":"cyclic","n":3}"#]);
    assert_eq!(code, 1);
}

#[test]
fn even_subgroup_preimage() {
    let (code, r) = report(&[
        "lift",
        "--f",
        F,
        "--hom",
        "inclusion",
        "--target",
        r#"{"kind":"cyclic","n":10}"#,
        "--V",
        r#"{"set":[{"label":1},{"label":4}]}"#,
        "--eps",
        "1/2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "(φ•)⁻¹(O(V, ε)) = O(H ∩ V, ε)")["checked"], 25);
}

#[test]
fn densify_on_a_grid() {
    let f = r#"{"instance":{"kind":"mobius"},"breakpoints":["0","1"],"values":[{"re":0.30000001,"im":0.0}]}"#;
    let args = ["densify", "--f", f, "--dense", r#"{"grid":6}"#, "--V", r#"{"ball":0.01}"#, "--eps", "1/8"];
    let (code, r) = report(&args);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["certificate"]["verified"], true);
    let g = step(&r["result"]["g"]);
    let y = g.constant_value().expect("constant f gives a constant witness");
    assert!(y.coordinates().iter().all(|c| (c * 64.0).fract() == 0.0));
}

#[test]
fn density_failure_exits_one() {
    let f = r#"{"instance":{"kind":"mobius"},"breakpoints":["0","1"],"values":[{"re":0.3,"im":0.0}]}"#;
    let dense = r#"{"points":[{"re":0.9,"im":0.0}]}"#;
    let (code, r) = report(&["densify", "--f", f, "--dense", dense, "--V", r#"{"ball":0.01}"#, "--eps", "1/8"]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "DensityViolated");
    assert!(r.get("result").is_none());
}

#[test]
fn cover_lookup_in_z5() {
    let f = r#"{"instance":{"kind":"cyclic","n":5},"breakpoints":["0","1"],"values":[{"label":3}]}"#;
    let dense = r#"{"points":[{"label":0},{"label":2},{"label":4}]}"#;
    let v = r#"{"set":[{"label":1}]}"#;
    let (code, r) = report(&["cover", "--f", f, "--dense", dense, "--V", v, "--eps", "1/4"]);
    assert_eq!(code, 0);
    assert_eq!(step(&r["result"]["g"]).constant_value().unwrap().label(), Some(2));
    let (code, r) = report(&["cover", "--f", f, "--dense", dense, "--V", v, "--eps", "1/4", "--side", "right"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn cover_with_decimal_cuts() {
    let f = r#"{"instance":{"kind":"cyclic","n":5},"breakpoints":["0","0.314159","1"],"values":[{"label":3},{"label":1}]}"#;
    let dense = r#"{"points":[{"label":0},{"label":2},{"label":4}]}"#;
    let v = r#"{"set":[{"label":1}]}"#;
    let args = ["cover", "--f", f, "--dense", dense, "--V", v, "--eps", "1/100", "--cut-policy", "dyadic"];
    let (code, r) = report(&args);
    assert_eq!(code, 0, "{r}");
    let g = step(&r["result"]["g"]);
    // simplest dyadic in [0.314159, 0.314159 + 1/100)
    assert_eq!(g.breakpoints()[1].to_string(), "41/128");
}

#[test]
fn qset_construction_and_membership() {
    let v = r#"{"set":[{"label":1}]}"#;
    let (code, r) = report(&["qset", "--f", F, "--V", v, "--eps", "1/3"]);
    assert_eq!(code, 0);
    assert!(all_passed(&r));
    assert_eq!(r["result"]["n"], 8);
    let p = r#"[{"set":[{"label":2}]},{"set":[{"label":3}]}]"#;
    let (_, r) = report(&["qset", "--f", F, "--n", "4", "--b", "1/3,1", "--P", p]);
    assert_eq!(r["result"]["member"], true);
    let (_, r) = report(&["qset", "--f", F, "--n", "4", "--b", "1/2,1", "--P", p]);
    // 3 on [1/3, 1/2) sits outside P₁ = {2}: measure 1/6 < 1/4
    assert_eq!(r["result"]["bad_measure"], "1/6");
    assert_eq!(r["result"]["member"], true);
    let (code, r) = report(&["qset", "--f", F, "--n", "4", "--b", "1/2", "--P", p]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "MalformedCutVector");
}

#[test]
fn from_parts_merges_and_classifies() {
    let values = r#"[{"label":1},{"label":1},{"label":2}]"#;
    let (code, r) = report(&["from-parts", "--instance", Z5, "--values", values, "--cuts", "1/4,0.5"]);
    assert_eq!(code, 0);
    let f = step(&r["result"]["f"]);
    assert_eq!(f.num_pieces(), 2);
    assert_eq!(r["result"]["min_gap"], "1/4");
    assert_eq!(r["result"]["least_m"], "4");
    let (code, r) = report(&["from-parts", "--instance", Z5, "--values", r#"[{"label":3}]"#]);
    assert_eq!(code, 0);
    assert!(step(&r["result"]["f"]).is_constant());
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        vec!["path", "--f", F, "--t", "1/0"],
        vec!["path", "--f", "{not json", "--t", "1/2"],
        vec!["path", "--f", F],
        vec!["from-parts", "--instance", Z5, "--values", r#"[{"label":1}]"#, "--cuts", "1/2"],
        vec!["from-parts", "--instance", Z5, "--values", r#"[{"label":1},{"label":7}]"#, "--cuts", "1/2"],
        vec!["member", "--f", F, "--V", r#"{"set":[]}"#, "--eps", "0"],
        vec!["dbullet", "--f", F, "--g", G, "--metric", "taxicab"],
    ] {
        let (code, r) = report(&args);
        assert_eq!(code, 2, "{args:?}: {r}");
        assert!(r["error"]["message"].is_string());
    }
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}
