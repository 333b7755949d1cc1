//! Record tables and their two text encodings. Every command prints one
//! table; TSV has a header line, JSON lines has one object per record with
//! string values in column order.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    JsonLines,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "jsonlines" | "jsonl" => Ok(Format::JsonLines),
            _ => Err(Error::Parse(format!(
                "unknown format {s:?} (tsv or jsonlines)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tsv => "tsv",
            Format::JsonLines => "jsonlines",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Panics if the row width differs from the header.
    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn encode(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.to_tsv(),
            Format::JsonLines => self.to_jsonlines(),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.columns).chain(&self.rows) {
            let cells: Vec<String> = line.iter().map(|c| escape(c)).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_jsonlines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .zip(row)
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            out.push_str(&Value::Object(obj).to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Table> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty TSV input".into()))?;
        let columns = split_tsv(header)?;
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let row = split_tsv(line)?;
            if row.len() != columns.len() {
                return Err(Error::Parse(format!(
                    "TSV line {} has {} fields, header has {}",
                    i + 2,
                    row.len(),
                    columns.len()
                )));
            }
            rows.push(row);
        }
        Ok(Table { columns, rows })
    }

    /// Needs the column order, since an empty input has no keys to read.
    pub fn parse_jsonlines(text: &str, columns: &[&str]) -> Result<Table> {
        let mut table = Table::new(columns);
        for (i, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let value: Value = serde_json::from_str(line)
                .map_err(|e| Error::Parse(format!("JSON line {}: {e}", i + 1)))?;
            let obj = value
                .as_object()
                .ok_or_else(|| Error::Parse(format!("JSON line {} is not an object", i + 1)))?;
            if obj.len() != columns.len() {
                return Err(Error::Parse(format!(
                    "JSON line {} has the wrong keys",
                    i + 1
                )));
            }
            let row = columns
                .iter()
                .map(|c| match obj.get(*c) {
                    Some(Value::String(s)) => Ok(s.clone()),
                    _ => Err(Error::Parse(format!(
                        "JSON line {}: missing string {c:?}",
                        i + 1
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// Backslash escapes for the characters TSV cannot carry.
pub fn escape(cell: &str) -> String {
    let mut out = String::with_capacity(cell.len());
    for c in cell.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out
}

pub fn unescape(cell: &str) -> Result<String> {
    let mut out = String::with_capacity(cell.len());
    let mut chars = cell.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            other => return Err(Error::Parse(format!("bad escape \\{other:?} in {cell:?}"))),
        }
    }
    Ok(out)
}

pub fn split_tsv(line: &str) -> Result<Vec<String>> {
    line.split('\t').map(unescape).collect()
}
