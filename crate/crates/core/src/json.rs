//! JSON forms of instances, elements, neighborhoods, step functions and
//! witnesses. Rationals travel as `"p/q"` strings; floats use the shortest
//! round-tripping decimal, so every value re-parses bit-exactly.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cardinal::Witness;
use crate::error::{GyroError, Result};
use crate::gyro::{Element, GyroInstance, Kind, NeighborhoodSpec};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::scalar::Real;
use crate::step::{Partition, StepFunction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceDto {
    Cyclic { n: usize },
    S3,
    Mobius,
    Einstein {
        #[serde(default = "unit_speed")]
        c: f64,
    },
}

fn unit_speed() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDto {
    Label { label: usize },
    Disk { re: f64, im: f64 },
    Velocity { vx: f64, vy: f64, vz: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum NeighborhoodDto {
    Set(Vec<ElementDto>),
    Ball(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFunctionDto {
    pub instance: InstanceDto,
    pub breakpoints: Vec<String>,
    pub values: Vec<ElementDto>,
}

fn malformed(e: impl std::fmt::Display) -> GyroError {
    GyroError::Malformed(e.to_string())
}

fn wide<F: Real>(x: F) -> f64 {
    x.approx()
}

fn narrow<F: Real>(x: f64) -> F {
    F::lit(x)
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(malformed)
}

impl InstanceDto {
    pub fn from_instance<F: Real>(g: &GyroInstance<F>) -> Self {
        match g.kind() {
            Kind::Cyclic { n } => Self::Cyclic { n },
            Kind::S3 => Self::S3,
            Kind::Mobius => Self::Mobius,
            Kind::Einstein { c } => Self::Einstein { c: wide(c) },
        }
    }

    pub fn build<F: Real>(&self) -> Result<GyroInstance<F>> {
        match *self {
            Self::Cyclic { n } => GyroInstance::cyclic(n),
            Self::S3 => Ok(GyroInstance::s3()),
            Self::Mobius => Ok(GyroInstance::mobius()),
            Self::Einstein { c } => GyroInstance::einstein(narrow(c)),
        }
    }
}

impl ElementDto {
    pub fn from_element<F: Real>(x: &Element<F>) -> Self {
        match *x {
            Element::Label(label) => Self::Label { label },
            Element::Disk(z) => Self::Disk { re: wide(z.re), im: wide(z.im) },
            Element::Velocity([a, b, c]) => Self::Velocity { vx: wide(a), vy: wide(b), vz: wide(c) },
        }
    }

    /// The element, checked against the carrier of `g`.
    pub fn build<F: Real>(&self, g: &GyroInstance<F>) -> Result<Element<F>> {
        let x = match *self {
            Self::Label { label } => Element::Label(label),
            Self::Disk { re, im } => Element::disk(narrow(re), narrow(im)),
            Self::Velocity { vx, vy, vz } => Element::Velocity([narrow(vx), narrow(vy), narrow(vz)]),
        };
        g.check(&x)?;
        Ok(x)
    }
}

impl NeighborhoodDto {
    pub fn from_spec<F: Real>(v: &NeighborhoodSpec<F>) -> Self {
        match (v.members(), v.radius()) {
            (Some(m), _) => Self::Set(m.iter().map(ElementDto::from_element).collect()),
            (None, Some(r)) => Self::Ball(wide(r)),
            (None, None) => unreachable!("a neighborhood is a set or a ball"),
        }
    }

    pub fn build<F: Real>(&self, g: &GyroInstance<F>) -> Result<NeighborhoodSpec<F>> {
        let v = match self {
            Self::Set(elems) => {
                let members = elems.iter().map(|e| e.build(g)).collect::<Result<Vec<_>>>()?;
                NeighborhoodSpec::set(g, members)?
            }
            Self::Ball(r) => NeighborhoodSpec::ball(narrow(*r))?,
        };
        v.validate(g)?;
        Ok(v)
    }
}

impl StepFunctionDto {
    pub fn from_function<F: Real>(f: &StepFunction<F>) -> Self {
        Self {
            instance: InstanceDto::from_instance(f.instance()),
            breakpoints: f.breakpoints().iter().map(format_rational).collect(),
            values: f.values().iter().map(ElementDto::from_element).collect(),
        }
    }

    /// The canonical function; breakpoints must run from 0 to 1.
    pub fn build<F: Real>(&self) -> Result<StepFunction<F>> {
        let g = self.instance.build()?;
        let points = self
            .breakpoints
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<Rational>>>()?;
        let partition = Partition::new(points)?;
        if self.values.len() != partition.len() {
            return Err(GyroError::LengthMismatch { expected: partition.len(), found: self.values.len() });
        }
        let values = self.values.iter().map(|e| e.build(&g)).collect::<Result<Vec<_>>>()?;
        StepFunction::on_partition(&g, partition, values)
    }
}

pub fn instance_to_json<F: Real>(g: &GyroInstance<F>) -> Value {
    serde_json::to_value(InstanceDto::from_instance(g)).expect("instances serialize")
}

pub fn instance_from_json<F: Real>(text: &str) -> Result<GyroInstance<F>> {
    parse::<InstanceDto>(text)?.build()
}

pub fn element_to_json<F: Real>(x: &Element<F>) -> Value {
    serde_json::to_value(ElementDto::from_element(x)).expect("elements serialize")
}

pub fn element_from_json<F: Real>(g: &GyroInstance<F>, text: &str) -> Result<Element<F>> {
    parse::<ElementDto>(text)?.build(g)
}

pub fn neighborhood_to_json<F: Real>(v: &NeighborhoodSpec<F>) -> Value {
    serde_json::to_value(NeighborhoodDto::from_spec(v)).expect("neighborhoods serialize")
}

pub fn neighborhood_from_json<F: Real>(g: &GyroInstance<F>, text: &str) -> Result<NeighborhoodSpec<F>> {
    parse::<NeighborhoodDto>(text)?.build(g)
}

pub fn step_function_to_json<F: Real>(f: &StepFunction<F>) -> Value {
    serde_json::to_value(StepFunctionDto::from_function(f)).expect("step functions serialize")
}

pub fn step_function_from_json<F: Real>(text: &str) -> Result<StepFunction<F>> {
    parse::<StepFunctionDto>(text)?.build()
}

pub fn step_function_from_value<F: Real>(value: &Value) -> Result<StepFunction<F>> {
    StepFunctionDto::deserialize(value).map_err(malformed)?.build()
}

/// `{g, certificate: {kind, parameters, verified}}`.
pub fn witness_to_json<F: Real>(w: &Witness<F>) -> Value {
    json!({
        "g": step_function_to_json(&w.g),
        "certificate": {
            "kind": w.kind,
            "parameters": w.parameters,
            "verified": w.verified,
        }
    })
}
