//! Report serialization: aligned text, CSV, JSON and Markdown.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::report::{Cell, Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" => Ok(Format::Markdown),
            other => Err(format!(
                "unknown format `{other}`; expected table, csv, json or markdown"
            )),
        }
    }
}

/// Serializes a report. Output depends only on the report contents.
pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Table => emit_table(report).into_bytes(),
        Format::Csv => emit_csv(report),
        Format::Json => emit_json(report).into_bytes(),
        Format::Markdown => emit_markdown(report).into_bytes(),
    }
}

fn provenance_lines(report: &Report) -> Vec<(&'static str, String)> {
    let p = &report.provenance;
    vec![
        ("subcommand", p.subcommand.clone()),
        ("scenario", p.scenario.clone()),
        ("input_sha256", p.input_digests.join(", ")),
        ("tool_version", p.tool_version.clone()),
        ("rounding_mode", p.rounding_mode.to_string()),
    ]
}

fn emit_table(report: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "{}", report.title).unwrap();
    writeln!(out, "{}", "=".repeat(report.title.chars().count())).unwrap();
    for (k, v) in provenance_lines(report) {
        writeln!(out, "{k:<14} {v}").unwrap();
    }
    for table in &report.tables {
        writeln!(out, "\n[{}]", table.name).unwrap();
        if table.rows.len() == 1 {
            // one record: print it vertically
            let width = table.columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (col, cell) in table.columns.iter().zip(&table.rows[0]) {
                let shown = match cell {
                    Cell::Undefined => "n/a".to_string(),
                    c => c.render(),
                };
                writeln!(out, "  {col:<width$}  {shown}").unwrap();
            }
            continue;
        }
        let rendered: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Undefined => "n/a".to_string(),
                        c => c.render(),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = table
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                rendered
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            format!("  {}", parts.join("  ")).trim_end().to_string()
        };
        writeln!(out, "{}", line(&table.columns)).unwrap();
        for row in &rendered {
            writeln!(out, "{}", line(row)).unwrap();
        }
    }
    if !report.assumptions.is_empty() {
        writeln!(out, "\nassumptions:").unwrap();
        for a in &report.assumptions {
            writeln!(out, "  * {a}").unwrap();
        }
    }
    if !report.notes.is_empty() {
        writeln!(out, "\nnotes:").unwrap();
        for n in &report.notes {
            writeln!(out, "  - {n}").unwrap();
        }
    }
    out
}

/// One CSV block per table (header row first), blocks separated by a blank
/// line. Provenance and assumptions are not part of the CSV body.
fn emit_csv(report: &Report) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, table) in report.tables.iter().enumerate() {
        if i > 0 {
            out.push(b'\n');
        }
        out.extend(csv_block(table));
    }
    out
}

fn csv_block(table: &Table) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(&table.columns).expect("in-memory write");
    for row in &table.rows {
        writer
            .write_record(row.iter().map(Cell::render))
            .expect("in-memory write");
    }
    writer.into_inner().expect("in-memory flush")
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Int(v) => json!(v),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Undefined => Value::Null,
        c => json!(c.numeric().unwrap()),
    }
}

fn emit_json(report: &Report) -> String {
    let p = &report.provenance;
    let provenance = json!({
        "subcommand": p.subcommand,
        "scenario": p.scenario,
        "input_sha256": p.input_digests,
        "tool_version": p.tool_version,
        "rounding_mode": p.rounding_mode.as_str(),
    });
    let tables: Vec<Value> = report
        .tables
        .iter()
        .map(|t| {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    Value::Object(
                        t.columns
                            .iter()
                            .cloned()
                            .zip(r.iter().map(json_cell))
                            .collect(),
                    )
                })
                .collect();
            json!({ "name": t.name, "columns": t.columns, "rows": rows })
        })
        .collect();
    let doc = json!({
        "title": report.title,
        "provenance": provenance,
        "tables": tables,
        "assumptions": report.assumptions,
        "notes": report.notes,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn emit_markdown(report: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "# {}\n", report.title).unwrap();
    for (k, v) in provenance_lines(report) {
        writeln!(out, "- **{k}**: `{v}`").unwrap();
    }
    for table in &report.tables {
        writeln!(out, "\n## {}\n", table.name).unwrap();
        writeln!(out, "| {} |", table.columns.join(" | ")).unwrap();
        let rule: Vec<&str> = table.columns.iter().map(|_| "---").collect();
        writeln!(out, "| {} |", rule.join(" | ")).unwrap();
        for row in &table.rows {
            let cells: Vec<String> = row.iter().map(|c| md_escape(&c.render())).collect();
            writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        }
    }
    if !report.assumptions.is_empty() {
        writeln!(out, "\n## Assumptions\n").unwrap();
        for a in &report.assumptions {
            writeln!(out, "- {a}").unwrap();
        }
    }
    if !report.notes.is_empty() {
        writeln!(out, "\n## Notes\n").unwrap();
        for n in &report.notes {
            writeln!(out, "- {n}").unwrap();
        }
    }
    out
}
