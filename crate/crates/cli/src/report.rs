//! Report assembly and deterministic CSV/JSON rendering. Every real number
//! is written with 12 significant digits.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{Command, Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Real)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(x: $t) -> Self {
                Cell::Int(x as i64)
            }
        }
    )*};
}
int_cell!(i32, u32, usize);

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt_real(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Real(x) => real_value(*x),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Self {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: Command,
    pub config: RunConfig,
    /// Grids actually used, by role.
    pub grids: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub summary: Map<String, Value>,
    pub tables: Vec<Table>,
    /// False when a requested verification failed.
    pub passed: bool,
}

impl Report {
    pub fn new(command: Command, config: &RunConfig) -> Self {
        Self {
            command,
            config: config.clone(),
            grids: Map::new(),
            tolerances: Map::new(),
            summary: Map::new(),
            tables: Vec::new(),
            passed: true,
        }
    }

    pub fn grid(&mut self, role: &str, g: &spectra_core::Grid1D) {
        let v = serde_json::json!({
            "kind": g.kind().to_string(),
            "z_min": g.z_min(),
            "z_max": g.z_max(),
            "n_points": g.len(),
            "spacing": g.spacing(),
        });
        self.grids.insert(role.to_owned(), v);
    }

    pub fn tolerance(&mut self, key: &str, t: f64) {
        self.tolerances.insert(key.to_owned(), Value::from(t));
    }

    pub fn note<T: Serialize>(&mut self, key: &str, v: T) {
        let v = serde_json::to_value(v).unwrap_or(Value::Null);
        self.summary.insert(key.to_owned(), v);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn header(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.to_string()));
        m.insert("passed".into(), Value::from(self.passed));
        m.insert(
            "config".into(),
            round(serde_json::to_value(&self.config).unwrap_or(Value::Null)),
        );
        m.insert("grids".into(), round(Value::Object(self.grids.clone())));
        m.insert(
            "tolerances".into(),
            round(Value::Object(self.tolerances.clone())),
        );
        m.insert("summary".into(), round(Value::Object(self.summary.clone())));
        m
    }

    fn render_json(&self) -> String {
        let mut m = self.header();
        let tables: Map<String, Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect();
                (
                    t.name.to_owned(),
                    serde_json::json!({ "columns": t.columns, "rows": rows }),
                )
            })
            .collect();
        m.insert("tables".into(), Value::Object(tables));
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json values serialize");
        s.push('\n');
        s
    }

    fn render_csv(&self) -> String {
        let mut out = Vec::new();
        let h = self.header();
        for key in [
            "command",
            "passed",
            "config",
            "grids",
            "tolerances",
            "summary",
        ] {
            let v = &h[key];
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(out, "# {key}: {text}").expect("write to memory");
        }
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                writeln!(out).expect("write to memory");
            }
            writeln!(out, "# table: {}", t.name).expect("write to memory");
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&t.columns).expect("write to memory");
            for r in &t.rows {
                w.write_record(r.iter().map(Cell::text))
                    .expect("write to memory");
            }
            w.flush().expect("write to memory");
        }
        String::from_utf8(out).expect("csv output is utf-8")
    }
}

/// `x` rounded to 12 significant digits, in plain notation for moderate
/// magnitudes and scientific otherwise.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round12(x);
    let a = r.abs();
    if r == 0.0 {
        "0".into()
    } else if (1e-4..1e12).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn real_value(x: f64) -> Value {
    if x.is_finite() {
        Value::from(round12(x))
    } else {
        Value::from(fmt_real(x))
    }
}

fn round(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => real_value(n.as_f64().expect("f64 number")),
        Value::Array(a) => Value::Array(a.into_iter().map(round).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round(v))).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_real(-1.0 / 36.0), "-0.0277777777778");
        assert_eq!(fmt_real(0.25), "0.25");
        assert_eq!(fmt_real(-0.0), "0");
        assert_eq!(fmt_real(1.0 / 3.0 * 1e-9), "3.33333333333e-10");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(fmt_real(2.0_f64.sqrt() * 1e15), "1.41421356237e15");
    }
}
