use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use seshadri_core::scalar::decimal_places_for_bits;
use seshadri_core::{approximate, DivisorClass, Scalar, SeshadriValue, Verdict};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Bits of the decimal enclosure shown next to every exact value.
const ENCLOSURE_BITS: u32 = 53;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub surface: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub caveats: Vec<String>,
    pub exit: i32,
}

impl Report {
    pub fn new(surface: &str, command: &str) -> Self {
        Report {
            tool_version: TOOL_VERSION.to_string(),
            surface: surface.to_string(),
            command: command.to_string(),
            inputs: Value::Object(Map::new()),
            results: Value::Object(Map::new()),
            caveats: Vec::new(),
            exit: 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, color: bool, elapsed_ms: Option<u128>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seshadri {} :: {} on {}", self.tool_version, self.command, self.surface);
        if let Value::Object(m) = &self.inputs {
            for (k, v) in m {
                let _ = writeln!(out, "  input {k} = {}", inline(v));
            }
        }
        render_value(&mut out, &self.results, 1, color);
        for c in &self.caveats {
            let _ = writeln!(out, "  note: {c}");
        }
        if let Some(ms) = elapsed_ms {
            let _ = writeln!(out, "  time: {ms} ms");
        }
        let _ = writeln!(out, "  exit: {}", self.exit);
        out
    }
}

pub fn scalar(x: &Scalar) -> Value {
    let places = decimal_places_for_bits(ENCLOSURE_BITS);
    let (lo, hi) = approximate(x, ENCLOSURE_BITS).to_decimals(places);
    json!({
        "text": x.to_string(),
        "exact": x,
        "enclosure": [lo, hi],
    })
}

pub fn seshadri_value(v: &SeshadriValue) -> Value {
    match v {
        SeshadriValue::Exact(x) => scalar(x),
        SeshadriValue::SqrtOf(s) => {
            let places = decimal_places_for_bits(ENCLOSURE_BITS);
            let (lo, hi) = v.rational_bounds();
            let lo = seshadri_core::scalar::decimal_string(&lo, places, false);
            let hi = seshadri_core::scalar::decimal_string(&hi, places, true);
            json!({
                "text": v.to_string(),
                "sqrt_of": s,
                "enclosure": [lo, hi],
            })
        }
    }
}

pub fn class(d: &DivisorClass) -> Value {
    json!({ "text": d.to_string(), "exact": d })
}

pub fn verdict(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("verdict serializes")
}

fn is_number_like(m: &Map<String, Value>) -> bool {
    m.contains_key("text") && (m.contains_key("enclosure") || m.contains_key("exact"))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if is_number_like(m) => {
            let text = m["text"].as_str().unwrap_or_default();
            match m.get("enclosure").and_then(Value::as_array) {
                Some(e) if e.len() == 2 && e[0] != e[1] => {
                    format!("{text}  in [{}, {}]", e[0].as_str().unwrap_or(""), e[1].as_str().unwrap_or(""))
                }
                _ => text.to_string(),
            }
        }
        other => other.to_string(),
    }
}

fn paint(s: &str, color: bool) -> String {
    if !color {
        return s.to_string();
    }
    match s {
        "PASS" | "Certified" => format!("\x1b[32m{s}\x1b[0m"),
        "FAIL" | "Refuted" => format!("\x1b[31m{s}\x1b[0m"),
        _ => s.to_string(),
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize, color: bool) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(inner) if !is_number_like(inner) && !inner.is_empty() => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(out, x, depth + 1, color);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        let _ = writeln!(out, "{pad}{k}: [{}]", items.len());
                        for (i, item) in items.iter().enumerate() {
                            let _ = writeln!(out, "{pad}  - #{i}");
                            render_value(out, item, depth + 2, color);
                        }
                    }
                    Value::String(s) => {
                        let _ = writeln!(out, "{pad}{k}: {}", paint(s, color));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_rendering() {
        let v = scalar(&"15 - 6sqrt6".parse().unwrap());
        assert_eq!(v["text"], "15 - 6*sqrt6");
        let e = v["enclosure"].as_array().unwrap();
        assert!(e[0].as_str().unwrap().starts_with("0.303"));
        assert!(e[0].as_str().unwrap() < e[1].as_str().unwrap());
        let one = scalar(&Scalar::one());
        assert_eq!(one["enclosure"][0], one["enclosure"][1]);
    }

    #[test]
    fn report_round_trip() {
        let mut r = Report::new("ExE", "analyze");
        r.results = json!({ "x": scalar(&Scalar::sqrt2()), "n": 3 });
        r.caveats.push("box 10".into());
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
    }
}
