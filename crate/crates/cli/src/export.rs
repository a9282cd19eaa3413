//! Tabular documents shared by every subcommand, serialized as versioned
//! JSON, CSV or aligned text. Cells are strings in each object's own
//! notation, so they parse back with the library's `FromStr` impls.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "permadiag/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            _ => bail!("unknown format {s:?}; use json, csv or text"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    /// What the rows are, e.g. `diagonal.facets`.
    pub kind: String,
    pub params: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Document {
    pub fn new(kind: impl Into<String>, columns: &[&str]) -> Self {
        Document {
            schema: SCHEMA.into(),
            kind: kind.into(),
            params: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn push<I, T>(&mut self, row: I)
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        assert_eq!(row.len(), self.columns.len(), "row width for {}", self.kind);
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<impl Iterator<Item = &str>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(move |r| r[k].as_str()))
    }

    /// Parses one column with `T::from_str`.
    pub fn parse_column<T: FromStr>(&self, name: &str) -> Result<Vec<T>>
    where
        T::Err: std::error::Error + Send + Sync + 'static,
    {
        let col = self
            .column(name)
            .with_context(|| format!("{} has no column {name:?}", self.kind))?;
        col.map(|s| s.parse::<T>().with_context(|| format!("{name} = {s:?}")))
            .collect()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Text => Ok(self.text()),
        }
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("# {}", self.kind);
        for (k, v) in &self.params {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        out.push_str(&line(&self.columns));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out.push_str(&format!("# {} rows\n", self.rows.len()));
        out
    }

    /// Reads a JSON document back; checks the schema tag.
    pub fn from_json(s: &str) -> Result<Self> {
        let d: Document = serde_json::from_str(s).context("not a permadiag JSON document")?;
        if d.schema != SCHEMA {
            bail!("unsupported schema {:?}, expected {SCHEMA:?}", d.schema);
        }
        if let Some(r) = d.rows.iter().find(|r| r.len() != d.columns.len()) {
            bail!("row {r:?} does not have {} cells", d.columns.len());
        }
        Ok(d)
    }

    /// Reads CSV rows; kind and params are not stored in CSV and must be given.
    pub fn from_csv(kind: &str, s: &str) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(s.as_bytes());
        let columns: Vec<String> = rdr.headers()?.iter().map(String::from).collect();
        let rows = rdr
            .records()
            .map(|r| r.map(|r| r.iter().map(String::from).collect()))
            .collect::<std::result::Result<Vec<Vec<String>>, _>>()?;
        Ok(Document {
            schema: SCHEMA.into(),
            kind: kind.into(),
            params: BTreeMap::new(),
            columns,
            rows,
        })
    }
}
