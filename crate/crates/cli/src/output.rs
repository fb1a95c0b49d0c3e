//! Serialization of command results: JSON with sorted keys and 17
//! significant digits, CSV and plain text.

use std::io::{self, Write};

use serde_json::ser::Formatter;
use serde_json::{Map, Value};

/// The result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub op: String,
    pub inputs: Map<String, Value>,
    pub value: Value,
    pub intermediates: Map<String, Value>,
    pub hypotheses: Value,
    pub warnings: Vec<String>,
    /// Present only when the command failed.
    pub error: Option<Value>,
}

impl Envelope {
    pub fn new(op: &str) -> Self {
        Self {
            op: op.to_string(),
            inputs: Map::new(),
            value: Value::Null,
            intermediates: Map::new(),
            hypotheses: Value::Array(Vec::new()),
            warnings: Vec::new(),
            error: None,
        }
    }

    pub fn inter(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.intermediates.insert(key.to_string(), v.into());
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("op".into(), Value::String(self.op.clone()));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("value".into(), self.value.clone());
        m.insert("intermediates".into(), Value::Object(self.intermediates.clone()));
        m.insert("hypotheses".into(), self.hypotheses.clone());
        m.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        if let Some(e) = &self.error {
            m.insert("error".into(), e.clone());
        }
        Value::Object(m)
    }
}

/// Formats a finite float with 17 significant digits, positional for
/// decimal exponents in `[-5, 16]` and scientific otherwise.
pub fn format_f64(v: f64) -> String {
    if !v.is_finite() {
        return "null".into();
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    if !(-5..=16).contains(&exp) {
        return format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..]);
    }
    if exp >= 0 {
        let cut = exp as usize + 1;
        let frac = &digits[cut..];
        format!(
            "{sign}{}.{}",
            &digits[..cut],
            if frac.is_empty() { "0" } else { frac }
        )
    } else {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    }
}

struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }
}

/// Compact JSON with sorted keys (serde_json maps are ordered) and the
/// 17-digit float format.
pub fn to_json(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    serde::Serialize::serialize(v, &mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("utf-8 JSON")
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format_f64(f),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => to_json(other),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar_text(v))),
    }
}

/// `key,value` rows of the value and intermediates.
pub fn to_key_value_rows(env: &Envelope) -> Vec<(String, String)> {
    let mut rows = vec![("op".to_string(), env.op.clone())];
    flatten("value", &env.value, &mut rows);
    flatten("intermediates", &Value::Object(env.intermediates.clone()), &mut rows);
    rows
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(env: &Envelope) -> String {
    let mut s = String::from("key,value\n");
    for (k, v) in to_key_value_rows(env) {
        s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
    }
    s
}

pub fn to_plain(env: &Envelope) -> String {
    let mut s = String::new();
    for (k, v) in to_key_value_rows(env) {
        s.push_str(&format!("{k}: {v}\n"));
    }
    for w in &env.warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(std::f64::consts::PI), "3.1415926535897931");
        assert_eq!(format_f64(2.0), "2.0000000000000000");
        assert_eq!(format_f64(-1.5e-3), "-0.0015000000000000000");
        assert_eq!(format_f64(1.0e20), "1.0000000000000000e20");
        assert_eq!(format_f64(0.5f64.powi(22)), "2.3841857910156250e-7");
        assert_eq!(format_f64(f64::NAN), "null");
    }

    #[test]
    fn round_trips() {
        for v in [0.1, 1.0 / 3.0, 9.869604401089358, 1e-300, 6.02e23, -7.25] {
            assert_eq!(format_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn keys_are_sorted() {
        let mut e = Envelope::new("t");
        e.inter("b", 1.0).inter("a", 2.0);
        let s = to_json(&e.to_value());
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.starts_with("{\"hypotheses\""));
    }
}
