//! JSON and CSV rendering of command results.

use serde_json::{json, Value};
use thue_area::Error;

/// A flat table for `--csv` output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

/// A command's result in both renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: Table,
}

impl Report {
    pub fn render(&self, csv: bool) -> String {
        if csv {
            self.table.to_csv()
        } else {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serialisable");
            s.push('\n');
            s
        }
    }
}

/// Shortest round-trip rendering, with an exponent for very small or
/// large magnitudes (as in the JSON output).
pub fn num(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float")
    } else {
        x.to_string()
    }
}

/// 1 for malformed input or arguments, 2 for mathematical domain errors.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) => 1,
        _ => 2,
    }
}

/// `{"error": "DegreeTooLow", "reason": "degree-too-low", "message": ...}`
pub fn error_json(e: &Error) -> Value {
    json!({ "error": e.name(), "reason": kebab(e.name()), "message": e.to_string() })
}

fn kebab(name: &str) -> String {
    let mut out = String::new();
    for (i, ch) in name.chars().enumerate() {
        if ch.is_ascii_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.push(ch.to_ascii_lowercase());
        } else {
            out.push(ch);
        }
    }
    out
}
