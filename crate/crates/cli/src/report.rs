use crate::input::{InputError, SCHEMA};
use lltori::int::Int;
use lltori::zlin::{FgAb, IntMatrix};
use lltori::Error;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

pub fn check(name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Check {
    let w = if pass { None } else { Some(witness()) };
    Check { name: name.into(), pass, witness: w }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub result: serde_json::Map<String, Value>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.result.insert(key.to_string(), v);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Why a command stopped: bad input (exit 2) or a failed computation (exit 1).
#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    Math(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NotACycle(_) | Error::NotACocycle(_) | Error::LiftingFailed(_) | Error::TNFailed(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(InputError { path: String::new(), message: e.to_string() }),
        }
    }
}

pub fn canonical(input: &Value) -> String {
    serde_json::to_string(input).expect("JSON values serialize")
}

pub fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

pub fn to_json(command: &str, input: &Value, r: &Report) -> Value {
    let checks: Vec<Value> = r.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "witness": c.witness})).collect();
    json!({
        "schema": SCHEMA,
        "command": command,
        "digest": digest(&canonical(input)),
        "pass": r.pass(),
        "checks": checks,
        "result": Value::Object(r.result.clone()),
        "input": input,
    })
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.len() > 16 => format!("{} entries (see the JSON report)", a.len()),
        other => other.to_string(),
    }
}

pub fn to_text(command: &str, input: &Value, r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", command));
    out.push_str(&format!("digest: {}\n", digest(&canonical(input))));
    for (k, v) in &r.result {
        out.push_str(&format!("{}: {}\n", k, text_value(v)));
    }
    for c in &r.checks {
        out.push_str(&format!("[{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name));
        if let Some(w) = &c.witness {
            out.push_str(&format!(": {}", w));
        }
        out.push('\n');
    }
    out.push_str(&format!("result: {}\n", if r.pass() { "PASS" } else { "FAIL" }));
    out
}

pub fn ab(a: &FgAb) -> Value {
    Value::String(a.to_string())
}

pub fn int(x: &Int) -> Value {
    Value::String(x.to_string())
}

pub fn ints(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn mat(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}
