//! Report records and their JSON/CSV renderings.

use serde::Serialize;
use serde_json::{Map, Value};

/// Significant digits kept for every float in a report.
pub const SIG_DIGITS: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub branch: Option<String>,
}

impl ReportRecord {
    pub fn new(command: &str) -> Self {
        ReportRecord { command: command.to_string(), inputs: Map::new(), outputs: Map::new(), branch: None }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), to_value(v));
        self
    }

    pub fn output(mut self, key: &str, v: impl Serialize) -> Self {
        self.outputs.insert(key.to_string(), to_value(v));
        self
    }

    pub fn with_branch(mut self, branch: &str) -> Self {
        self.branch = Some(branch.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    /// Long format: one `section,key,value` line per scalar, with nested
    /// positions joined by dots (`outputs,inverse.2.3,...`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,key,value\n");
        out.push_str(&format!("command,,{}\n", self.command));
        for (section, map) in [("inputs", &self.inputs), ("outputs", &self.outputs)] {
            for (k, v) in map {
                flatten(section, k, v, &mut out);
            }
        }
        if let Some(b) = &self.branch {
            out.push_str(&format!("branch,,{b}\n"));
        }
        out
    }
}

fn flatten(section: &str, path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Array(items) => {
            for (idx, item) in items.iter().enumerate() {
                flatten(section, &format!("{path}.{}", idx + 1), item, out);
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                flatten(section, &format!("{path}.{k}"), item, out);
            }
        }
        other => out.push_str(&format!("{section},{path},{}\n", scalar_text(other))),
    }
}

pub fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Serializes `v` with every float rounded to [`SIG_DIGITS`] significant digits.
pub fn to_value(v: impl Serialize) -> Value {
    let mut value = serde_json::to_value(v).expect("report values are serializable");
    round_floats(&mut value);
    value
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().unwrap_or_default();
            if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_ten_digits() {
        assert_eq!(round_sig(11.139204545454545), 11.13920455);
        assert_eq!(round_sig(-0.000123456789012), -0.0001234567890);
        assert_eq!(round_sig(0.0), 0.0);
    }

    #[test]
    fn field_order_is_fixed() {
        let r = ReportRecord::new("trace").input("n", 4).output("trace", 4.0);
        let json = r.to_json();
        let c = json.find("\"command\"").unwrap();
        let i = json.find("\"inputs\"").unwrap();
        let o = json.find("\"outputs\"").unwrap();
        let b = json.find("\"branch\"").unwrap();
        assert!(c < i && i < o && o < b);
    }

    #[test]
    fn csv_flattens_nested_arrays() {
        let r = ReportRecord::new("invert").output("inverse", vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let csv = r.to_csv();
        assert!(csv.contains("outputs,inverse.2.1,3.0\n"));
    }
}
