//! JSON rendering of exact values and reports.

use cyclozeta::dirichlet::ExampleReport;
use cyclozeta::{EvenFunction, Flag, IdentityReport, Rational, Status, ZetaProduct};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::parse::ZetaJson;

/// Integral values become JSON integers, the rest `"p/q"` strings.
pub fn rat_json(r: &Rational) -> Value {
    match (r.is_integer(), r.to_integer().to_i64()) {
        (true, Some(v)) => json!(v),
        _ => json!(r.to_string()),
    }
}

pub fn even_json(f: &EvenFunction) -> Value {
    Value::Array(f.values().iter().map(rat_json).collect())
}

pub fn zeta_json(z: &ZetaProduct) -> Value {
    json!({ "text": z.to_string(), "json": ZetaJson::from(z) })
}

pub fn flag_json(f: &Flag) -> Value {
    json!({ "id": f.id, "note": f.note })
}

pub fn report_json(r: &IdentityReport) -> Value {
    let first_failure = r.first_failure().map(|c| {
        let m = c.mismatch.as_ref().expect("failed check has a mismatch");
        json!({ "check": c.name, "at": m.at, "lhs": m.lhs, "rhs": m.rhs })
    });
    json!({
        "name": r.name,
        "status": r.status().as_str(),
        "checks": r.checks.len(),
        "failed": r.failures().count(),
        "first_failure": first_failure,
        "flags": r.flags.iter().map(flag_json).collect::<Vec<_>>(),
    })
}

/// `{example, n, params, order, status, first_mismatch}`.
pub fn example_json(r: &ExampleReport) -> Value {
    json!({
        "example": r.example,
        "n": r.n,
        "params": r.params,
        "order": r.order,
        "status": r.status().as_str(),
        "first_mismatch": r.first_mismatch.as_ref().map(|m| json!({ "k": m.k, "lhs": rat_json(&m.lhs), "rhs": rat_json(&m.rhs) })),
    })
}

/// The envelope every command prints in JSON mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Envelope {
    pub command: String,
    pub status: String,
    pub payload: Value,
}

/// A finished command: its status, JSON payload and text rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub text: String,
}

impl Outcome {
    pub fn envelope(&self) -> Envelope {
        Envelope {
            command: self.command.clone(),
            status: self.status.as_str().to_string(),
            payload: self.payload.clone(),
        }
    }

    /// 0 unless the status is a failure.
    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Fail {
            1
        } else {
            0
        }
    }
}
