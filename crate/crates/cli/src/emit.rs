//! Writing reports as JSON or CSV.

use std::io::Write;
use std::path::Path;

use amlab_core::{Error, Result};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows for CSV output. Cells are already rendered.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// What a command produced: the JSON report, an optional table view, and its verdict.
#[derive(Debug)]
pub struct Output {
    pub json: Value,
    pub table: Option<Table>,
    pub pass: bool,
}

impl Output {
    pub fn new(json: Value, pass: bool) -> Self {
        Output { json, table: None, pass }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("cannot write `{}`: {e}", path.display()))
}

pub fn json_file(path: &Path, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| io_err(path, e))?;
    std::fs::write(path, text + "\n").map_err(|e| io_err(path, e))
}

fn csv_bytes(table: &Table) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).map_err(|e| Error::Parse(e.to_string()))?;
    for row in &table.rows {
        w.write_record(row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Error::Parse(e.to_string()))
}

/// Renders `out` in `format` to `path`, or to stdout when no path is given.
pub fn write(out: &Output, format: Format, path: Option<&Path>, command: &str) -> Result<()> {
    let bytes = match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&out.json).map_err(|e| Error::Parse(e.to_string()))?;
            text.push('\n');
            text.into_bytes()
        }
        Format::Csv => match &out.table {
            Some(t) => csv_bytes(t)?,
            None => return Err(Error::InvalidArgument(format!("`{command}` has no CSV form; use --format json"))),
        },
    };
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| io_err(p, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes).and_then(|_| stdout.flush()).map_err(|e| Error::Parse(e.to_string()))
        }
    }
}
