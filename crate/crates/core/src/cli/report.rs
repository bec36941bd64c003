//! Deterministic operation reports.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    /// A decider answered negatively and produced a witness.
    NegativeWithWitness,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::NegativeWithWitness => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub op: String,
    pub inputs: Value,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// All numbers are exact rationals rendered as strings.
    pub exact: bool,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(op: &str, inputs: Value, result: Value) -> Self {
        Report { op: op.to_string(), inputs, result, witness: None, exact: true, outcome: Outcome::Ok }
    }

    pub fn negative(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self.outcome = Outcome::NegativeWithWitness;
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "op: {}", self.op)?;
        writeln!(f, "inputs: {}", compact(&self.inputs))?;
        writeln!(f, "result: {}", compact(&self.result))?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {}", compact(w))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let r = Report::new("order-dense", json!({"L": "i(I)"}), json!(false)).negative(json!(["1", "0", "1", "0"]));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.outcome.exit_code(), 2);
        assert!(r.to_string().contains("witness"));
    }
}
