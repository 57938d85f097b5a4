use gyrostep::cardinal::{CutPolicy, DenseSpec, NetworkSet, Side};
use gyrostep::json::{self, ElementDto, InstanceDto};
use gyrostep::rational::parse_rational;
use gyrostep::{Element64, GyroError, Instance64, Neighborhood64, Rational, Result, Step64};
use serde_json::{Map, Value};

use crate::Opts;

fn malformed(msg: impl Into<String>) -> GyroError {
    GyroError::Malformed(msg.into())
}

/// The flags as given: JSON payloads parsed, rationals kept verbatim.
pub fn echo(opts: &Opts) -> Value {
    let mut map = Map::new();
    let mut put_json = |name: &str, v: &Option<String>| {
        if let Some(text) = v {
            let value = serde_json::from_str(text).unwrap_or_else(|_| Value::String(text.clone()));
            map.insert(name.into(), value);
        }
    };
    put_json("instance", &opts.instance);
    put_json("f", &opts.f);
    put_json("g", &opts.g);
    put_json("h", &opts.h);
    put_json("V", &opts.v);
    put_json("target", &opts.target);
    put_json("dense", &opts.dense);
    put_json("P", &opts.p);
    put_json("values", &opts.values);
    let raw = [
        ("metric", &opts.metric),
        ("eps", &opts.eps),
        ("t", &opts.t),
        ("hom", &opts.hom),
        ("cut-policy", &opts.cut_policy),
        ("side", &opts.side),
        ("b", &opts.b),
        ("cuts", &opts.cuts),
    ];
    for (name, v) in raw {
        if let Some(text) = v {
            map.insert(name.into(), Value::String(text.clone()));
        }
    }
    if let Some(n) = opts.n {
        map.insert("n".into(), n.into());
    }
    if let Some(s) = opts.samples {
        map.insert("samples".into(), s.into());
    }
    if opts.exhaustive {
        map.insert("exhaustive".into(), true.into());
    }
    map.insert("seed".into(), opts.seed.into());
    Value::Object(map)
}

pub fn required<'a>(flag: &str, v: &'a Option<String>) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| malformed(format!("missing --{flag}")))
}

pub fn rational(text: &str) -> Result<Rational> {
    parse_rational(text)
}

pub fn instance(text: &str) -> Result<Instance64> {
    json::instance_from_json(text)
}

pub fn step_function(text: &str) -> Result<Step64> {
    json::step_function_from_json(text)
}

pub fn element(g: &Instance64, text: &str) -> Result<Element64> {
    json::element_from_json(g, text)
}

pub fn neighborhood(g: &Instance64, text: &str) -> Result<Neighborhood64> {
    json::neighborhood_from_json(g, text)
}

/// One instance object, or a JSON list of them.
pub fn instance_list(text: &str) -> Result<Vec<Instance64>> {
    let build = |v: &Value| {
        serde_json::from_value::<InstanceDto>(v.clone())
            .map_err(|e| malformed(e.to_string()))?
            .build()
    };
    match value(text)? {
        Value::Array(items) => items.iter().map(build).collect(),
        single => Ok(vec![build(&single)?]),
    }
}

fn value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

fn element_value(g: &Instance64, v: &Value) -> Result<Element64> {
    serde_json::from_value::<ElementDto>(v.clone())
        .map_err(|e| malformed(e.to_string()))?
        .build(g)
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(GyroError::RationalParse(other.to_string())),
    }
}

/// A JSON array of rationals, or a comma-separated list.
pub fn rational_list(text: &str) -> Result<Vec<Rational>> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return match value(trimmed)? {
            Value::Array(items) => items.iter().map(rational_value).collect(),
            _ => Err(malformed("expected a list of rationals")),
        };
    }
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed.split(',').map(parse_rational).collect()
}

pub fn element_list(g: &Instance64, text: &str) -> Result<Vec<Element64>> {
    match value(text)? {
        Value::Array(items) => items.iter().map(|v| element_value(g, v)).collect(),
        _ => Err(malformed("expected a list of elements")),
    }
}

/// `"full"`, `{"grid": bits}` or `{"points": [...]}`; defaults to the full
/// carrier of a finite instance and a `2^-10` grid otherwise.
pub fn dense(g: &Instance64, text: Option<&str>) -> Result<DenseSpec<f64>> {
    let Some(text) = text else {
        return match DenseSpec::full(g) {
            Some(d) => Ok(d),
            None => DenseSpec::grid(10),
        };
    };
    let parsed = value(text).unwrap_or_else(|_| Value::String(text.trim().to_string()));
    let spec = match &parsed {
        Value::String(s) if s == "full" => {
            DenseSpec::full(g).ok_or_else(|| GyroError::Unsupported(format!("full dense set of {g}")))?
        }
        Value::Object(m) if m.len() == 1 && m.contains_key("grid") => {
            let bits = m["grid"].as_u64().and_then(|b| u32::try_from(b).ok());
            DenseSpec::grid(bits.ok_or_else(|| malformed("grid resolution must be a small integer"))?)?
        }
        Value::Object(m) if m.len() == 1 && m.contains_key("points") => match &m["points"] {
            Value::Array(items) => {
                DenseSpec::Explicit(items.iter().map(|v| element_value(g, v)).collect::<Result<_>>()?)
            }
            _ => return Err(malformed("points must be a list of elements")),
        },
        _ => return Err(malformed(format!("unrecognized dense set {text}"))),
    };
    spec.validate(g)?;
    Ok(spec)
}

/// `[{"set": [...]} | {"center": e, "radius": "p/q"}, ...]`.
pub fn network_sets(g: &Instance64, text: &str) -> Result<Vec<NetworkSet<f64>>> {
    let Value::Array(items) = value(text)? else {
        return Err(malformed("expected a list of network members"));
    };
    items
        .iter()
        .map(|item| {
            let Value::Object(m) = item else {
                return Err(malformed("network members are objects"));
            };
            match (m.get("set"), m.get("center"), m.get("radius")) {
                (Some(Value::Array(points)), None, None) => Ok(NetworkSet::Finite(
                    points.iter().map(|v| element_value(g, v)).collect::<Result<_>>()?,
                )),
                (None, Some(center), Some(radius)) => {
                    let radius = rational_value(radius)?;
                    if radius < Rational::from_integer(0.into()) {
                        return Err(malformed("network ball radius must be non-negative"));
                    }
                    Ok(NetworkSet::ClosedBall { center: element_value(g, center)?, radius })
                }
                _ => Err(malformed(format!("unrecognized network member {item}"))),
            }
        })
        .collect()
}

pub fn cut_policy(text: Option<&str>, default: CutPolicy) -> Result<CutPolicy> {
    match text {
        None => Ok(default),
        Some("keep") => Ok(CutPolicy::Keep),
        Some("dyadic") => Ok(CutPolicy::Dyadic),
        Some(other) => Err(malformed(format!("unknown cut policy {other:?}"))),
    }
}

pub fn side(text: Option<&str>) -> Result<Side> {
    match text {
        None | Some("left") => Ok(Side::Left),
        Some("right") => Ok(Side::Right),
        Some(other) => Err(malformed(format!("unknown side {other:?}"))),
    }
}

/// Step function when the payload carries breakpoints, element otherwise.
#[derive(Clone, Debug)]
pub enum Operand {
    Step(Step64),
    Elem(Element64),
}

pub fn operands(instance_text: Option<&str>, texts: &[(&str, &Option<String>)]) -> Result<(Instance64, Vec<Operand>)> {
    let given = texts
        .iter()
        .map(|(flag, v)| required(flag, v))
        .collect::<Result<Vec<_>>>()?;
    let is_step = |t: &str| matches!(value(t), Ok(Value::Object(m)) if m.contains_key("breakpoints"));
    if given.iter().all(|t| is_step(t)) {
        let fs = given.iter().map(|t| step_function(t)).collect::<Result<Vec<_>>>()?;
        let g = *fs[0].instance();
        if let Some(other) = fs.iter().find(|f| !f.instance().same_structure(&g)) {
            return Err(GyroError::InstanceMismatch(g.to_string(), other.instance().to_string()));
        }
        return Ok((g, fs.into_iter().map(Operand::Step).collect()));
    }
    if given.iter().any(|t| is_step(t)) {
        return Err(malformed("operands mix step functions and elements"));
    }
    let g = instance(instance_text.ok_or_else(|| malformed("element operands need --instance"))?)?;
    let elems = given.iter().map(|t| element(&g, t).map(Operand::Elem)).collect::<Result<Vec<_>>>()?;
    Ok((g, elems))
}
