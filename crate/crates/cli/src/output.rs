//! CSV and JSON emitters. Floats are written with 17 significant digits.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::config::{Format, Settings};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            // JSON has no NaN; failed measurements become null
            Cell::Num(x) if !x.is_finite() => s.serialize_none(),
            Cell::Num(x) => s.serialize_f64(*x),
            Cell::Int(n) => s.serialize_i64(*n),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&'static str]) -> Self {
        Table {
            name,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write_csv(&self, w: impl Write) -> anyhow::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::csv))?;
        }
        out.flush()?;
        Ok(())
    }
}

struct Record<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

struct Document<'a> {
    config: &'a Settings,
    tables: &'a [Table],
}

impl Serialize for Document<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.tables.len() + 1))?;
        m.serialize_entry("config", self.config)?;
        for t in self.tables {
            let rows: Vec<Record> = t.rows.iter().map(|r| Record(&t.header, r)).collect();
            m.serialize_entry(t.name, &rows)?;
        }
        m.end()
    }
}

/// `out.csv` + table `summary` → `out.summary.csv`.
pub fn sidecar(out: &Path, name: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = out
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    out.with_file_name(format!("{stem}.{name}.{ext}"))
}

fn create(path: &Path) -> anyhow::Result<File> {
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

/// JSON: one document holding the config and every table. CSV: the first
/// table goes to `--out` (or stdout), the rest to sidecar files (or stderr).
pub fn emit(settings: &Settings, tables: &[Table]) -> anyhow::Result<()> {
    match settings.format {
        Format::Json => {
            let doc = Document {
                config: settings,
                tables,
            };
            match &settings.out {
                Some(p) => {
                    let mut f = create(p)?;
                    serde_json::to_writer_pretty(&mut f, &doc)?;
                    writeln!(f)?;
                }
                None => {
                    let mut o = io::stdout().lock();
                    serde_json::to_writer_pretty(&mut o, &doc)?;
                    writeln!(o)?;
                }
            }
        }
        Format::Csv => {
            let Some((first, rest)) = tables.split_first() else {
                return Ok(());
            };
            match &settings.out {
                Some(p) => {
                    first.write_csv(create(p)?)?;
                    for t in rest {
                        t.write_csv(create(&sidecar(p, t.name))?)?;
                    }
                }
                None => {
                    first.write_csv(io::stdout().lock())?;
                    for t in rest {
                        t.write_csv(io::stderr().lock())?;
                    }
                }
            }
        }
    }
    Ok(())
}
