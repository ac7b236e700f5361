//! Report records and their JSON form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever a field changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An outcome that is reported but not asserted.
    Recorded,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Recorded => "recorded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub values: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, anchor: &str, parameters: BTreeMap<String, Value>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            anchor: anchor.to_string(),
            parameters,
            checks: Vec::new(),
        }
    }

    /// Adds a pass/fail check.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, values: Value) -> &mut Check {
        self.push(name, Status::from_bool(ok), values)
    }

    pub fn record(&mut self, name: impl Into<String>, values: Value) -> &mut Check {
        self.push(name, Status::Recorded, values)
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, values: Value) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            status,
            witness: None,
            values,
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl Check {
    pub fn witness(&mut self, w: impl fmt::Display) -> &mut Self {
        self.witness = Some(w.to_string());
        self
    }
}

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
pub fn big(x: &BigUint) -> Value {
    x.to_u64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn bigint(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}
