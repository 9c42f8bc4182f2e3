//! Column-ordered tables rendered as CSV or versioned JSON.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
    Text(String),
    Empty,
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(i) => s.serialize_u64(*i as u64),
            Cell::Float(x) => s.serialize_f64(*x),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Empty => s.serialize_none(),
        }
    }
}

/// Shortest decimal that round-trips, independent of locale.
fn float_text(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_owned()
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => float_text(*x),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// One row keyed by the table's column names, in column order.
struct Record<'a> {
    columns: &'a [&'static str],
    cells: &'a [Cell],
}

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.columns.len()))?;
        for (k, v) in self.columns.iter().zip(self.cells) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Extra single record after the rows, e.g. the kink of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub name: &'static str,
    pub columns: &'static [&'static str],
    /// `None` means "searched, nothing found".
    pub cells: Option<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    pub summary: Option<Summary>,
}

impl Table {
    pub fn new(command: &'static str, columns: &'static [&'static str]) -> Self {
        Table {
            command,
            columns,
            rows: Vec::new(),
            summary: None,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line, one line per row, then an optional `# name k=v,…` line.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        if let Some(Summary {
            name,
            columns,
            cells,
        }) = &self.summary
        {
            match cells {
                Some(cells) => {
                    let kv: Vec<String> = columns
                        .iter()
                        .zip(cells)
                        .map(|(k, v)| format!("{k}={}", v.csv()))
                        .collect();
                    let _ = writeln!(out, "# {name} {}", kv.join(","));
                }
                None => {
                    let _ = writeln!(out, "# {name} none");
                }
            }
        }
        out
    }

    /// `{"schema": 1, "command": …, "records": […], <summary>: {…}|null}`.
    pub fn to_json(&self) -> String {
        let records: Vec<Record> = self
            .rows
            .iter()
            .map(|cells| Record {
                columns: self.columns,
                cells,
            })
            .collect();
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::pretty(&mut buf);
        let result = (|| {
            let mut map = ser.serialize_map(None)?;
            map.serialize_entry("schema", &SCHEMA_VERSION)?;
            map.serialize_entry("command", self.command)?;
            map.serialize_entry("records", &records)?;
            if let Some(Summary {
                name,
                columns,
                cells,
            }) = &self.summary
            {
                let rec = cells.as_ref().map(|cells| Record { columns, cells });
                map.serialize_entry(name, &rec)?;
            }
            map.end()
        })();
        result.expect("serializing to memory cannot fail");
        let mut text = String::from_utf8(buf).expect("serde_json emits UTF-8");
        text.push('\n');
        text
    }
}
