use gyrostep::{GyroError, LawCheck};
use serde::Serialize;
use serde_json::{json, Value};

/// One named invariant and how it fared on re-execution.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verification {
    pub fn single(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), passed, checked: 1, failures: usize::from(!passed), detail: None }
    }
}

impl From<LawCheck> for Verification {
    fn from(c: LawCheck) -> Self {
        Self {
            name: c.law.to_string(),
            passed: c.passed(),
            checked: c.checked,
            failures: c.failures,
            detail: c.first_failure,
        }
    }
}

/// What a command computed, before the report wrapper is added.
#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub verification: Vec<Verification>,
    pub exact: bool,
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub verification: Vec<Verification>,
    pub arithmetic: &'static str,
}

impl CommandReport {
    pub fn new(command: &'static str, inputs: Value, outcome: Outcome) -> Self {
        Self {
            command,
            inputs,
            result: outcome.result,
            verification: outcome.verification,
            arithmetic: if outcome.exact { "exact" } else { "approximate" },
        }
    }

    pub fn passed(&self) -> bool {
        self.verification.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Requested properties that turned out false exit with 1; everything
/// else is a problem with the input.
pub fn exit_code(e: &GyroError) -> u8 {
    match e {
        GyroError::VerificationFailed(_)
        | GyroError::DensityViolated(_)
        | GyroError::CoverFailed(_)
        | GyroError::NotInjective
        | GyroError::NotOnto
        | GyroError::NotHomomorphism(_)
        | GyroError::EscapesCarrier => 1,
        _ => 2,
    }
}

fn error_kind(e: &GyroError) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

pub fn failure_report(command: &str, inputs: Value, e: &GyroError) -> String {
    let report = json!({
        "command": command,
        "inputs": inputs,
        "error": { "kind": error_kind(e), "message": e.to_string() },
    });
    serde_json::to_string_pretty(&report).expect("reports serialize")
}
