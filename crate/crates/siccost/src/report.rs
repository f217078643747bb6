//! In-memory report: provenance, typed tables and assumption flags.

use siccost_core::rounding::round_to;
use siccost_core::RoundingMode;

/// One table cell. The variant fixes how the value is printed.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    /// EUR, printed with 4 decimals.
    Money(f64),
    /// EUR rounded to whole cents, printed with 2 decimals.
    Cents(f64),
    /// Yields and other fractions, up to 10 decimals.
    Fraction(f64),
    /// Ratios, elasticities and other plain numbers, up to 6 decimals.
    Number(f64),
    Bool(bool),
    /// A value that has no meaning for this row.
    Undefined,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn int(v: impl TryInto<i64>) -> Self {
        Cell::Int(v.try_into().unwrap_or(i64::MAX))
    }

    pub fn money_opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Undefined, Cell::Money)
    }

    pub fn number_opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Undefined, Cell::Number)
    }

    /// The value as printed, rounded to its display precision.
    pub fn numeric(&self) -> Option<f64> {
        let (v, dp) = match *self {
            Cell::Money(v) => (v, 4),
            Cell::Cents(v) => (v, 2),
            Cell::Fraction(v) => (v, 10),
            Cell::Number(v) => (v, 6),
            Cell::Int(v) => return Some(v as f64),
            _ => return None,
        };
        let r = round_to(v, dp);
        // no "-0"
        Some(if r == 0.0 { 0.0 } else { r })
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Money(_) => format!("{:.4}", self.numeric().unwrap()),
            Cell::Cents(_) => format!("{:.2}", self.numeric().unwrap()),
            Cell::Fraction(_) => trim(format!("{:.10}", self.numeric().unwrap())),
            Cell::Number(_) => trim(format!("{:.6}", self.numeric().unwrap())),
            Cell::Bool(b) => b.to_string(),
            Cell::Undefined => String::new(),
        }
    }
}

fn trim(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width does not match table `{}`",
            self.name
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn cell(&self, row: usize, column: &str) -> Option<&Cell> {
        self.rows.get(row)?.get(self.column(column)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub subcommand: String,
    pub scenario: String,
    /// SHA-256 of each input file, in the order they were read.
    pub input_digests: Vec<String>,
    pub tool_version: String,
    pub rounding_mode: RoundingMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub provenance: Provenance,
    pub tables: Vec<Table>,
    /// Inputs that are user-supplied judgement calls rather than data.
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }
}
