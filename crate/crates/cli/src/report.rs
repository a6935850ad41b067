use std::collections::BTreeMap;
use std::fmt::Write;

use num_complex::Complex64;
use pickzeta::linalg::CMatrix;
use pickzeta::SCHEMA_VERSION;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, EXIT_OK};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.into())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Tabular view of a report for the csv and human formats.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub arguments: BTreeMap<String, Value>,
    pub config: RunConfig,
    /// `ok`, `infeasible`, `failed` or `not_applicable`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<Value>,
    pub result: Value,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub table: Table,
    #[serde(skip)]
    pub matrices: Vec<(String, CMatrix)>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            schema: SCHEMA_VERSION.into(),
            command: command.into(),
            arguments: BTreeMap::new(),
            config: config.clone(),
            status: "ok".into(),
            input: None,
            result: Value::Null,
            warnings: Vec::new(),
            table: Table::default(),
            matrices: Vec::new(),
            exit_code: EXIT_OK,
        }
    }

    pub fn arg(&mut self, key: &str, value: impl Serialize) {
        self.arguments.insert(key.into(), to_value(&value));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => render_csv(&self.table),
            Format::Human => self.render_human(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are finite JSON");
        s.push('\n');
        s
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}: {}", self.schema, self.command, self.status);
        for (name, m) in &self.matrices {
            let _ = writeln!(out, "\n{name}:");
            out.push_str(&format_matrix(m));
        }
        if !self.table.columns.is_empty() {
            out.push('\n');
            out.push_str(&render_aligned(&self.table));
        }
        if !self.warnings.is_empty() {
            let _ = writeln!(out, "\nwarnings:");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        out
    }
}

pub fn to_value(value: &impl Serialize) -> Value {
    serde_json::to_value(value).expect("serializable value")
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    schema: &'a str,
    command: &'a str,
    status: &'a str,
    error: &'a CliError,
}

pub fn error_body(command: &str, err: &CliError) -> String {
    let body = ErrorBody {
        schema: SCHEMA_VERSION,
        command,
        status: "error",
        error: err,
    };
    let mut s = serde_json::to_string_pretty(&body).expect("error body serializes");
    s.push('\n');
    s
}

/// Six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&e) {
        format!("{x:.5e}")
    } else {
        format!("{:.*}", (5 - e) as usize, x)
    }
}

pub fn sig6_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return sig6(z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", sig6(z.re), sig6(z.im.abs()))
}

fn format_matrix(m: &CMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| sig6_complex(m[(i, j)])).collect())
        .collect();
    let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", line.join("  "));
    }
    out
}

fn human_cell(c: &Cell) -> String {
    match c {
        Cell::Num(x) => sig6(*x),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Num(x) => format!("{x:?}"),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

fn render_aligned(t: &Table) -> String {
    let rows: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(human_cell).collect()).collect();
    let widths: Vec<usize> = (0..t.columns.len())
        .map(|j| rows.iter().map(|r| r[j].len()).chain([t.columns[j].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(&t.columns));
    for r in &rows {
        let _ = writeln!(out, "{}", line(r));
    }
    out
}

fn render_csv(t: &Table) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", t.columns.join(","));
    for r in &t.rows {
        let _ = writeln!(out, "{}", r.iter().map(csv_cell).collect::<Vec<_>>().join(","));
    }
    out
}
