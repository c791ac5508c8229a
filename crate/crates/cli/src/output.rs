//! Rendering of command results as aligned tables, CSV or JSON.

use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::args::Format;

/// Significant digits of every printed float.
pub const SIG_DIGITS: usize = 10;

/// `x` with ten significant digits, trailing zeros removed. Moderate
/// magnitudes are printed positionally and the rest in scientific notation.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `x` rounded to the printed precision, so JSON and text agree.
fn rounded(x: f64) -> Value {
    let v: f64 = fmt_float(x).parse().unwrap_or(x);
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Big(BigUint),
    Float(f64),
    Text(String),
    Bool(bool),
    /// Rows of a Young diagram.
    Diagram(Vec<u32>),
    /// A list of diagrams.
    Diagrams(Vec<Vec<u32>>),
    Empty,
}

impl Cell {
    pub fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Big(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Diagram(rows) => diagram_text(rows),
            Cell::Diagrams(ds) => ds.iter().map(|d| diagram_text(d)).collect::<Vec<_>>().join(" "),
            Cell::Empty => String::new(),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Big(v) => match v.to_u64() {
                Some(x) => json!(x),
                None => Value::String(v.to_string()),
            },
            Cell::Float(v) => rounded(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Diagram(rows) => json!(rows),
            Cell::Diagrams(ds) => json!(ds),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Big(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Big(BigUint::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<BigUint> for Cell {
    fn from(v: BigUint) -> Self {
        Cell::Big(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

fn diagram_text(rows: &[u32]) -> String {
    let parts: Vec<String> = rows.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// `j` as an integer or half-integer string.
pub fn spin_text(two_j: u32) -> String {
    if two_j.is_multiple_of(2) {
        (two_j / 2).to_string()
    } else {
        format!("{two_j}/2")
    }
}

/// One command's result: echoed parameters, an optional table of rows and
/// a list of summary values.
#[derive(Debug, Default)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            ..Self::default()
        }
    }

    pub fn param(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.params.push((key, value.into()));
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Table => self.render_table(out),
            Format::Csv => self.render_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
        let mut results = Map::new();
        if !self.columns.is_empty() {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            results.insert("rows".into(), Value::Array(rows));
        }
        for (k, v) in &self.summary {
            results.insert(k.clone(), v.json());
        }
        json!({
            "command": self.command,
            "params": params,
            "results": results,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    fn render_table(&self, out: &mut impl Write) -> io::Result<()> {
        if !self.columns.is_empty() {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
            let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |fields: Vec<&str>| -> String {
                let padded: Vec<String> = fields
                    .iter()
                    .zip(&widths)
                    .map(|(f, w)| format!("{f:>w$}", w = *w))
                    .collect();
                padded.join("  ")
            };
            writeln!(out, "{}", line(self.columns.clone()))?;
            for row in &cells {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
            if !self.summary.is_empty() {
                writeln!(out)?;
            }
        }
        let width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            writeln!(out, "{k:<width$}  {}", v.text())?;
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut impl Write) -> io::Result<()> {
        if !self.columns.is_empty() {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row.iter().map(Cell::text))?;
            }
            w.flush()?;
            drop(w);
            if !self.summary.is_empty() {
                writeln!(out)?;
            }
        }
        if !self.summary.is_empty() {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["key", "value"])?;
            for (k, v) in &self.summary {
                w.write_record([k.clone(), v.text()])?;
            }
            w.flush()?;
        }
        Ok(())
    }
}
