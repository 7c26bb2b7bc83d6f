use std::path::Path;

use serde_json::Value;

use crate::Format;

/// Fixed-point with at most ten decimals, trailing zeros dropped.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

/// A command result in both renderings.
pub struct Report {
    pub text: Vec<String>,
    pub json: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

pub fn emit(out: Option<&Path>, body: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
