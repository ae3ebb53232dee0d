//! Positive-valued samples and CSV ingestion.

use std::fmt;
use std::ops::Deref;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{FigError, Result};

/// A validated sample: nonempty, every value positive and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    source: String,
}

impl Dataset {
    pub fn new(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(FigError::Data("dataset is empty".into()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(FigError::Data(format!("value {v} at position {i} is not positive and finite")));
        }
        Ok(Dataset { values, source: source.into() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * c).collect(), format!("{}*{c}", self.source))
    }
}

impl Deref for Dataset {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.values
    }
}

/// Which CSV column to read: a 0-based index or a header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl Default for Column {
    fn default() -> Self {
        Column::Index(0)
    }
}

impl FromStr for Column {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        })
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Index(i) => write!(f, "{i}"),
            Column::Name(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReject {
    /// 1-based line in the file.
    pub line: u64,
    pub raw: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub dataset: Dataset,
    pub rejects: Vec<RowReject>,
}

fn reader(path: &Path, has_header: bool) -> Result<csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path).map_err(|e| FigError::Io(format!("{}: {e}", path.display())))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn resolve_column(rdr: &mut csv::Reader<std::fs::File>, column: &Column, has_header: bool) -> Result<usize> {
    match column {
        Column::Index(i) => Ok(*i),
        Column::Name(name) => {
            if !has_header {
                return Err(FigError::Data(format!("column name {name:?} given but the file has no header")));
            }
            let headers = rdr.headers().map_err(|e| FigError::Data(e.to_string()))?;
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| FigError::Data(format!("no column named {name:?}")))
        }
    }
}

/// Reads one column of a CSV file. Rows whose value is missing,
/// unparseable, non-positive or non-finite are skipped and reported.
pub fn ingest_csv(path: impl AsRef<Path>, column: &Column, has_header: bool) -> Result<Ingested> {
    let path = path.as_ref();
    let mut rdr = reader(path, has_header)?;
    let idx = resolve_column(&mut rdr, column, has_header)?;
    let mut values = Vec::new();
    let mut rejects = Vec::new();
    let mut widest = 0;
    for record in rdr.records() {
        let record = record.map_err(|e| FigError::Data(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        widest = widest.max(record.len());
        let Some(raw) = record.get(idx) else {
            rejects.push(RowReject { line, raw: String::new(), reason: "missing value".into() });
            continue;
        };
        match raw.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => values.push(v),
            Ok(v) => rejects.push(RowReject {
                line,
                raw: raw.into(),
                reason: format!("value {v} is not positive and finite"),
            }),
            Err(_) if raw.is_empty() => {
                rejects.push(RowReject { line, raw: String::new(), reason: "missing value".into() })
            }
            Err(_) => rejects.push(RowReject { line, raw: raw.into(), reason: "not a decimal number".into() }),
        }
    }
    if widest > 0 && idx >= widest {
        return Err(FigError::Data(format!("column {column} does not exist ({widest} columns)")));
    }
    if values.is_empty() {
        return Err(FigError::Data(format!("no valid rows in {}", path.display())));
    }
    Ok(Ingested { dataset: Dataset::new(values, path.display().to_string())?, rejects })
}

/// Guess whether the first row is a header: true when its selected field
/// (or, for a named column, any field) is not a number.
pub fn detect_header(path: impl AsRef<Path>, column: &Column) -> Result<bool> {
    if let Column::Name(_) = column {
        return Ok(true);
    }
    let mut rdr = reader(path.as_ref(), false)?;
    let Some(first) = rdr.records().next() else {
        return Ok(false);
    };
    let first = first.map_err(|e| FigError::Data(e.to_string()))?;
    let idx = match column {
        Column::Index(i) => *i,
        Column::Name(_) => unreachable!(),
    };
    Ok(first.get(idx).is_some_and(|f| !f.is_empty() && f.parse::<f64>().is_err()))
}
