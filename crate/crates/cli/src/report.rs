use std::collections::BTreeMap;
use std::io::{self, Write};

use cdx_core::ncpoly::NcPolynomial;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

/// How a text line is styled when colour is on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Good,
    Bad,
}

/// Everything a command reports. Text and JSON are rendered from the same
/// fields, so they always carry the same numbers.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Vec<String>,
    pub result: Value,
    pub polynomials: BTreeMap<String, BTreeMap<String, Value>>,
    pub violations: Vec<String>,
    pub timings: BTreeMap<String, u64>,
    #[serde(skip)]
    pub lines: Vec<(Style, String)>,
    #[serde(skip)]
    pub exit: u8,
}

impl Report {
    pub fn new(command: &str, input: &[&str]) -> Report {
        Report {
            command: command.to_string(),
            input: input.iter().map(|s| s.to_string()).collect(),
            result: Value::Null,
            polynomials: BTreeMap::new(),
            violations: Vec::new(),
            timings: BTreeMap::new(),
            lines: Vec::new(),
            exit: 0,
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push((Style::Plain, text.into()));
    }

    pub fn good(&mut self, text: impl Into<String>) {
        self.lines.push((Style::Good, text.into()));
    }

    pub fn bad(&mut self, text: impl Into<String>) {
        self.lines.push((Style::Bad, text.into()));
    }

    /// Records a definite negative: the line is shown and the exit code is 1.
    pub fn fail(&mut self, text: impl Into<String>) {
        self.bad(text);
        self.exit = 1;
    }

    pub fn violation(&mut self, v: impl ToString) {
        let v = v.to_string();
        self.fail(v.clone());
        self.violations.push(v);
    }

    pub fn poly(&mut self, key: &str, p: &NcPolynomial) {
        self.polynomials.insert(key.to_string(), poly_map(p));
    }

    pub fn write(&self, json: bool, color: bool, out: &mut impl Write) -> io::Result<()> {
        if json {
            serde_json::to_writer_pretty(&mut *out, self)?;
            writeln!(out)
        } else {
            for (style, text) in &self.lines {
                writeln!(out, "{}", paint(*style, text, color))?;
            }
            Ok(())
        }
    }
}

fn paint(style: Style, text: &str, color: bool) -> String {
    match (color, style) {
        (false, _) | (true, Style::Plain) => text.to_string(),
        (true, Style::Good) => format!("\x1b[32m{text}\x1b[0m"),
        (true, Style::Bad) => format!("\x1b[31m{text}\x1b[0m"),
    }
}

/// A big integer as a JSON number when it fits, else as a string.
pub fn int(k: &BigInt) -> Value {
    match i64::try_from(k) {
        Ok(i) => Value::from(i),
        Err(_) => Value::from(k.to_string()),
    }
}

/// Word (as printed, `1` for the empty word) to coefficient.
pub fn poly_map(p: &NcPolynomial) -> BTreeMap<String, Value> {
    p.terms().map(|(w, k)| (w.to_string(), int(k))).collect()
}

/// Whether `CDX_COLOR` asks for ANSI colour.
pub fn color_from_env() -> bool {
    matches!(
        std::env::var("CDX_COLOR").as_deref(),
        Ok("1" | "always" | "yes" | "true")
    )
}
