use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// One invariant check that ran while producing a result.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    /// `value` must exceed `bound` instead of staying below it.
    pub lower: bool,
    /// Numerical checks fail with exit code 3, structural ones with 2.
    pub numerical: bool,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        if self.lower {
            self.value > self.bound
        } else {
            self.value < self.bound
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "value": self.value,
            "bound": self.bound,
            "kind": if self.lower { "min" } else { "max" },
            "passed": self.passed(),
        })
    }
}

#[derive(Debug, Default)]
pub struct Verification {
    pub checks: Vec<CheckRecord>,
    /// Checks deliberately not run, with the reason.
    pub waived: Vec<(String, String)>,
}

impl Verification {
    /// Residual that must stay below `tolerance`.
    pub fn check(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.push(name, residual, tolerance, false, true);
    }

    /// Margin that must stay above `floor`.
    pub fn floor(&mut self, name: impl Into<String>, value: f64, floor: f64) {
        self.push(name, value, floor, true, true);
    }

    pub fn structural(&mut self, name: impl Into<String>, ok: bool) {
        self.push(name, if ok { 0.0 } else { 1.0 }, 0.5, false, false);
    }

    fn push(&mut self, name: impl Into<String>, value: f64, bound: f64, lower: bool, numerical: bool) {
        self.checks.push(CheckRecord { name: name.into(), value, bound, lower, numerical });
    }

    pub fn waive(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.waived.push((name.into(), why.into()));
    }

    fn to_json(&self) -> Value {
        json!({
            "checks": self.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
            "waived": self.waived.iter().map(|(n, w)| json!({"check": n, "reason": w})).collect::<Vec<_>>(),
        })
    }
}

/// Output of one command: result fields at top level, next to the task name,
/// the digest of the inputs and the verification report.
#[derive(Debug)]
pub struct Envelope {
    pub task: String,
    pub inputs_digest: String,
    pub result: Map<String, Value>,
    pub verification: Verification,
    pub wall_time: Option<f64>,
}

impl Envelope {
    pub fn render(&self) -> String {
        let mut out = self.result.clone();
        out.insert("task".into(), json!(self.task));
        out.insert("inputs_digest".into(), json!(self.inputs_digest));
        out.insert("verification".into(), self.verification.to_json());
        if let Some(t) = self.wall_time {
            out.insert("wall_time_s".into(), json!(t));
        }
        serde_json::to_string_pretty(&Value::Object(out)).expect("envelope serializes")
    }

    pub fn failed_checks(&self) -> Vec<String> {
        self.verification.checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect()
    }

    pub fn failure_code(&self) -> u8 {
        if self.verification.checks.iter().any(|c| !c.passed() && !c.numerical) {
            2
        } else {
            3
        }
    }
}

/// SHA-256 of the canonical (key-sorted, compact) JSON of the inputs.
pub fn digest(inputs: &Value) -> String {
    let bytes = serde_json::to_vec(inputs).expect("inputs serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}
