//! Output documents: one JSON shape, rendered as a table or CSV on request.

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Rows for the human and CSV renderings; `notes` only appear in tables.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), ..Table::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    fn render(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut widths: Vec<usize> = self.header.iter().map(|h| width(h)).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(width(cell));
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c}{}", " ".repeat(widths[i] - width(c))))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = Vec::new();
        if !self.header.is_empty() {
            out.push(line(&self.header));
            out.push(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
        }
        out.extend(self.rows.iter().map(|r| line(r)));
        out.extend(self.notes.iter().cloned());
        out.join("\n")
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if !self.header.is_empty() {
            w.write_record(&self.header).expect("in-memory write");
        }
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

pub struct Document {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub wall_ms: u128,
    pub table: Table,
}

impl Document {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": self.witnesses,
            "timing": { "wall_ms": self.wall_ms },
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("document serializes"),
            Format::Table => self.table.render(),
            Format::Csv => self.table.render_csv(),
        }
    }
}

/// `✓`, or `✗` followed by the witness.
pub fn mark(holds: bool, witness: Option<String>) -> String {
    match (holds, witness) {
        (true, _) => "✓".into(),
        (false, Some(w)) => format!("✗ {w}"),
        (false, None) => "✗".into(),
    }
}
