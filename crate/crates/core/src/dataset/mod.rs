//! Delimited-text datasets with typed columns.

use std::path::Path;

use crate::bignum::{format_real, parse_decimal, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::linalg::NumVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnData {
    Numeric(NumVector),
    Text(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub header: String,
    pub data: ColumnData,
}

/// Table of observations (rows) by variables (columns). All columns have
/// `rows` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    columns: Vec<Column>,
    rows: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ImportOptions {
    /// Field separator; detected from the first line when absent.
    pub delimiter: Option<u8>,
    /// Whether the first row holds headers; detected when absent.
    pub header: Option<bool>,
}

/// Tab when the first non-blank line has more tabs than commas.
pub fn detect_delimiter(text: &str) -> u8 {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let tabs = first.matches('\t').count();
    let commas = first.matches(',').count();
    if tabs > commas {
        b'\t'
    } else {
        b','
    }
}

fn is_number(cell: &str, ctx: &PrecisionContext) -> bool {
    parse_decimal(cell, ctx).is_ok()
}

/// A first row is a header when some column is numeric below it but not in
/// it. A lone row is a header only if none of its cells is a number.
pub fn detect_header(rows: &[Vec<String>], ctx: &PrecisionContext) -> bool {
    match rows {
        [] => false,
        [only] => only.iter().all(|c| !is_number(c, ctx)),
        [first, rest @ ..] => (0..first.len()).any(|j| {
            !is_number(&first[j], ctx) && rest.iter().all(|r| is_number(&r[j], ctx))
        }),
    }
}

impl Dataset {
    pub fn new(columns: Vec<Column>) -> Result<Dataset> {
        let rows = columns.first().map_or(0, Column::len);
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::Format(format!(
                "column '{}' has {} rows, expected {rows}",
                c.header,
                c.len()
            )));
        }
        Ok(Dataset { columns, rows })
    }

    /// Parses delimited text. Numeric cells are read at `ctx`.
    pub fn parse(text: &str, opts: ImportOptions, ctx: &PrecisionContext) -> Result<Dataset> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let delimiter = opts.delimiter.unwrap_or_else(|| detect_delimiter(text));
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .delimiter(delimiter)
            .quoting(delimiter != b'\t')
            .from_reader(text.as_bytes());
        let mut rows: Vec<Vec<String>> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
            let line = rec.position().map_or(rows.len() as u64 + 1, |p| p.line());
            let cells: Vec<String> = rec.iter().map(|c| c.trim().to_string()).collect();
            if cells.len() == 1 && cells[0].is_empty() {
                continue;
            }
            if let Some(first) = rows.first() {
                if cells.len() != first.len() {
                    return Err(Error::Format(format!(
                        "row {line} has {} fields, expected {}",
                        cells.len(),
                        first.len()
                    )));
                }
            }
            rows.push(cells);
        }
        if rows.is_empty() {
            return Err(Error::Format("empty file".into()));
        }
        let header = opts.header.unwrap_or_else(|| detect_header(&rows, ctx));
        let width = rows[0].len();
        let (names, body): (Vec<String>, &[Vec<String>]) = if header {
            (rows[0].clone(), &rows[1..])
        } else {
            ((0..width).map(|j| format!("col{j}")).collect(), &rows[..])
        };
        let mut columns = Vec::with_capacity(width);
        for (j, name) in names.into_iter().enumerate() {
            let cells: Vec<&str> = body.iter().map(|r| r[j].as_str()).collect();
            let parsed: Option<Vec<Real>> = if cells.is_empty() {
                None
            } else {
                cells.iter().map(|c| parse_decimal(c, ctx).ok()).collect()
            };
            let data = match parsed {
                Some(vals) => ColumnData::Numeric(NumVector::from_reals(vals, ctx)?),
                None => ColumnData::Text(cells.iter().map(|s| s.to_string()).collect()),
            };
            columns.push(Column { header: name, data });
        }
        Dataset::new(columns)
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn headers(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.header.as_str()).collect()
    }

    /// Copy of numeric column `index` (0-based).
    pub fn column(&self, index: i64) -> Result<NumVector> {
        let n = self.columns.len();
        if index < 0 || index as usize >= n {
            let valid = if n == 0 {
                "the dataset has no columns".to_string()
            } else {
                format!("valid 0..{}", n - 1)
            };
            return Err(Error::Index(format!("column {index} out of range ({valid})")));
        }
        let c = &self.columns[index as usize];
        match &c.data {
            ColumnData::Numeric(v) => Ok(v.clone()),
            ColumnData::Text(_) => Err(Error::Type(format!(
                "column {index} ('{}') holds text, not numbers",
                c.header
            ))),
        }
    }

    /// One-line description for object listings.
    pub fn summary(&self) -> String {
        format!(
            "{} columns x {} rows: {}",
            self.columns.len(),
            self.rows,
            self.headers().join(", ")
        )
    }

    /// CSV text with a header row. Numbers carry `digits` significant digits.
    pub fn to_csv(&self, digits: u32) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(self.headers()).map_err(io)?;
        for i in 0..self.rows {
            let rec: Vec<String> = self
                .columns
                .iter()
                .map(|c| match &c.data {
                    ColumnData::Numeric(v) => format_real(&v.elems()[i], digits),
                    ColumnData::Text(t) => t[i].clone(),
                })
                .collect();
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
    }
}

impl Column {
    pub fn len(&self) -> usize {
        match &self.data {
            ColumnData::Numeric(v) => v.len(),
            ColumnData::Text(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn import_dataset(path: &Path, opts: ImportOptions, ctx: &PrecisionContext) -> Result<Dataset> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Error::Format(format!("{} is not valid UTF-8", path.display())))?;
    Dataset::parse(&text, opts, ctx)
}

pub fn export_dataset(d: &Dataset, path: &Path, digits: u32) -> Result<()> {
    std::fs::write(path, d.to_csv(digits)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
