use std::io::Write;

use mathieu_core::InequalityReport;
use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One emitted document.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Value>,
    pub timing_ms: f64,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self { schema_version: SCHEMA_VERSION, command: command.to_string(), inputs, results: Vec::new(), timing_ms: 0.0 }
    }

    pub fn push<T: Serialize>(&mut self, item: &T) {
        self.results.push(serde_json::to_value(item).expect("results serialize"));
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("record serializes");
        let mut s = serde_json::to_string_pretty(&seventeen_digits(v)).expect("value prints");
        s.push('\n');
        s
    }
}

/// Rewrites every non-integer number with 17 significant digits, which
/// round-trips any f64 exactly.
pub fn seventeen_digits(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::Number(fixed(&n)),
        Value::Array(a) => Value::Array(a.into_iter().map(seventeen_digits).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, seventeen_digits(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

fn fixed(n: &Number) -> Number {
    if n.is_u64() || n.is_i64() {
        return n.clone();
    }
    match n.as_f64() {
        Some(x) if x.is_finite() => {
            serde_json::from_str(&float17(x)).expect("formatted float parses as a JSON number")
        }
        _ => n.clone(),
    }
}

pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

const PARAMS: [&str; 7] = ["mu", "mu2", "nu", "r", "p", "eps", "m"];

/// One CSV row per inequality report.
pub fn write_csv<W: Write>(out: W, reports: &[&InequalityReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["check", "variant"];
    header.extend(PARAMS);
    header.extend(["lhs", "rhs", "margin", "err_budget", "verdict"]);
    w.write_record(&header)?;
    for r in reports {
        let p = &r.point;
        let opt = |x: Option<f64>| x.map(float17).unwrap_or_default();
        let mut row = vec![r.name.clone(), r.variant.clone().unwrap_or_default()];
        row.extend([p.mu, p.mu2, p.nu, p.r, p.p, p.eps, p.m].map(opt));
        row.extend([r.lhs, r.rhs, r.margin, r.err_budget].map(float17));
        row.push(r.verdict.as_str().to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_get_seventeen_digits_and_round_trip() {
        let x: f64 = 0.1 + 0.2;
        let v = seventeen_digits(serde_json::json!({ "a": x, "n": 7, "l": [1.5] }));
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("3.0000000000000004e-1"), "{s}");
        assert!(s.contains("\"n\":7"));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"].as_f64().unwrap().to_bits(), x.to_bits());
        assert_eq!(back["l"][0].as_f64().unwrap(), 1.5);
    }
}
