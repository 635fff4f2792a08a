use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use skelsig_core::plane::RationalPoint;
use skelsig_core::Rational;

use crate::cli::Format;

/// Any failure that maps to exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Rendered output plus the exit code it implies.
pub struct Report {
    pub text: String,
    pub code: u8,
}

impl Report {
    pub fn new(text: String, code: u8) -> Self {
        Report { text, code }
    }
}

pub fn fraction(q: Rational) -> Value {
    json!({
        "exact": q.to_string(),
        "decimal": q.numer() as f64 / q.denom() as f64,
    })
}

pub fn point(p: &RationalPoint) -> Value {
    json!({ "h": fraction(p.h), "r": fraction(p.r) })
}

pub fn json_document(config: &Value, result: Value) -> String {
    let doc = json!({ "config": config, "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

/// CSV with the effective configuration as a leading `#` comment.
pub fn csv_document(config: &Value, header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("# config: {config}\n{header}\n");
    for row in rows {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

pub fn unsupported(command: &str, format: Format) -> CliError {
    CliError(format!("{command} does not support --format {}", format_name(format)))
}

pub fn format_name(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Svg => "svg",
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
