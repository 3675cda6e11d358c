//! Tabular output: CSV with `#` metadata comments at the top, or a JSON
//! object `{config, columns, rows}`. Everything is written with a fixed
//! decimal precision so identical configs produce byte-identical output.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Table {
    comments: Vec<String>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            comments: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: &mut W, precision: usize) -> io::Result<()> {
        for c in &self.comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.precision$}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self, config: Value, precision: usize) -> Value {
        let scale = 10f64.powi(precision as i32);
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::from(row.iter().map(|x| (x * scale).round() / scale).collect::<Vec<f64>>()))
            .collect();
        json!({
            "config": config,
            "columns": self.columns,
            "rows": rows,
        })
    }
}

/// Write a table to the given path or stdout.
pub fn emit(
    table: &Table,
    format: Format,
    out: Option<&Path>,
    precision: usize,
    config: Value,
) -> Result<()> {
    let rendered = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf, precision)?;
            buf
        }
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(&table.to_json(config, precision))?;
            buf.push(b'\n');
            buf
        }
    };
    write_bytes(&rendered, out)
}

/// Write raw bytes to the given path or stdout.
pub fn write_bytes(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let mut f = File::create(path)
                .with_context(|| format!("cannot create output file {}", path.display()))?;
            f.write_all(bytes)?;
        }
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}
