use std::fmt;

use super::Gyrogroup;
use crate::error::Result;

/// Outcome of one named law over every case it was exercised on.
#[derive(Clone, Debug, PartialEq)]
pub struct LawCheck {
    pub law: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

impl fmt::Display for LawCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failures)", self.law, self.checked, self.failures)?;
        if let Some(msg) = &self.first_failure {
            write!(f, ": {msg}")?;
        }
        Ok(())
    }
}

pub const G1: &str = "G1 identity";
pub const G2: &str = "G2 inverse";
pub const G3: &str = "G3 left gyroassociativity";
pub const G4: &str = "G4 left loop property";
pub const GYR_AUT: &str = "gyr is a groupoid automorphism";
pub const GYR_INJ: &str = "gyr is injective";
pub const LEFT_CANCEL: &str = "left cancellation";
pub const RIGHT_CANCEL: &str = "right cancellation";
pub const COSUB_CANCEL: &str = "(y ⊖ x) ⊞ x = y";
pub const COADD_CANCEL: &str = "(y ⊞ ⊖x) ⊕ x = y";
pub const GYR_FORMULA: &str = "gyr agrees with ⊖(x⊕y)⊕(x⊕(y⊕z))";
pub const RIGHT_INJ: &str = "y ⊕ x = z ⊕ x only if y = z";
pub const COOP_INJ: &str = "x ⊞ y = x ⊞ z only if y = z";

const ORDER: [&str; 13] = [
    G1,
    G2,
    G3,
    G4,
    GYR_AUT,
    GYR_INJ,
    LEFT_CANCEL,
    RIGHT_CANCEL,
    COSUB_CANCEL,
    COADD_CANCEL,
    GYR_FORMULA,
    RIGHT_INJ,
    COOP_INJ,
];

/// Accumulates gyrogroup law checks over caller-driven cases.
///
/// `single` runs the per-element axioms, `pair` the cancellation laws and
/// `triple` everything involving a gyration. The distinctness laws only
/// make sense under exact equality and are skipped unless enabled.
pub struct LawSuite<'g, G: Gyrogroup> {
    g: &'g G,
    exact: bool,
    checks: Vec<LawCheck>,
}

impl<'g, G: Gyrogroup> LawSuite<'g, G> {
    pub fn new(g: &'g G, exact: bool) -> Self {
        let checks = ORDER
            .iter()
            .map(|law| LawCheck { law, checked: 0, failures: 0, first_failure: None })
            .collect();
        Self { g, exact, checks }
    }

    fn record(&mut self, law: &'static str, outcome: Result<bool>, case: impl FnOnce() -> String) {
        let entry = self
            .checks
            .iter_mut()
            .find(|c| c.law == law)
            .expect("law is registered");
        entry.checked += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(case()),
            Err(e) => Some(format!("{} ({e})", case())),
        };
        if let Some(msg) = failure {
            entry.failures += 1;
            entry.first_failure.get_or_insert(msg);
        }
    }

    pub fn single(&mut self, a: &G::Elem) {
        let g = self.g;
        let zero = g.identity();
        self.record(
            G1,
            (|| Ok(g.equiv(&g.op(&zero, a)?, a) && g.equiv(&g.op(a, &zero)?, a)))(),
            || format!("a = {a:?}"),
        );
        self.record(
            G2,
            (|| {
                let inv = g.inverse(a)?;
                Ok(g.equiv(&g.op(&inv, a)?, &zero) && g.equiv(&g.op(a, &inv)?, &zero))
            })(),
            || format!("a = {a:?}"),
        );
    }

    pub fn pair(&mut self, x: &G::Elem, y: &G::Elem) {
        let g = self.g;
        let case = || format!("x = {x:?}, y = {y:?}");
        self.record(LEFT_CANCEL, (|| Ok(g.equiv(&g.op(&g.inverse(x)?, &g.op(x, y)?)?, y)))(), case);
        self.record(
            RIGHT_CANCEL,
            (|| {
                let ny = g.inverse(y)?;
                let lhs = g.op(&g.op(x, &ny)?, &g.gyr(x, &ny, y)?)?;
                Ok(g.equiv(&lhs, x))
            })(),
            case,
        );
        self.record(COSUB_CANCEL, (|| Ok(g.equiv(&g.coadd(&g.sub(y, x)?, x)?, y)))(), case);
        self.record(
            COADD_CANCEL,
            (|| Ok(g.equiv(&g.op(&g.coadd(y, &g.inverse(x)?)?, x)?, y)))(),
            case,
        );
    }

    pub fn triple(&mut self, x: &G::Elem, y: &G::Elem, z: &G::Elem) {
        let g = self.g;
        let case = || format!("x = {x:?}, y = {y:?}, z = {z:?}");
        self.record(
            G3,
            (|| {
                let lhs = g.op(x, &g.op(y, z)?)?;
                let rhs = g.op(&g.op(x, y)?, &g.gyr(x, y, z)?)?;
                Ok(g.equiv(&lhs, &rhs))
            })(),
            case,
        );
        self.record(
            G4,
            (|| Ok(g.equiv(&g.gyr(&g.op(x, y)?, y, z)?, &g.gyr(x, y, z)?)))(),
            case,
        );
        self.record(
            GYR_AUT,
            (|| {
                let lhs = g.gyr(x, y, &g.op(z, x)?)?;
                let rhs = g.op(&g.gyr(x, y, z)?, &g.gyr(x, y, x)?)?;
                Ok(g.equiv(&lhs, &rhs))
            })(),
            case,
        );
        // gyr[y, x] is a left inverse of gyr[x, y]
        self.record(GYR_INJ, (|| Ok(g.equiv(&g.gyr(y, x, &g.gyr(x, y, z)?)?, z)))(), case);
        self.record(
            GYR_FORMULA,
            (|| Ok(g.equiv(&g.gyr(x, y, z)?, &g.gyr_formula(x, y, z)?)))(),
            case,
        );
        if self.exact && !g.equiv(y, z) {
            self.record(RIGHT_INJ, (|| Ok(!g.equiv(&g.op(y, x)?, &g.op(z, x)?)))(), case);
            self.record(COOP_INJ, (|| Ok(!g.equiv(&g.coadd(x, y)?, &g.coadd(x, z)?)))(), case);
        }
    }

    /// Checks, dropping laws that were never exercised.
    pub fn finish(self) -> Vec<LawCheck> {
        self.checks.into_iter().filter(|c| c.checked > 0).collect()
    }
}
