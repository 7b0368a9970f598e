//! Tabular output with a lossless CSV round trip.
//!
//! Dialect: comma separators, `.` decimal point, one header row, optional
//! `#`-prefixed metadata lines above the header, and numbers serialized at
//! 17 significant digits so every f64 survives parse → serialize unchanged.

use std::fmt::Write as _;

use crate::Error;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Self::Text(s.into())
    }
}

/// A column-structured table of results.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    /// `#`-prefixed lines emitted above the header (no timestamps —
    /// emission is deterministic for fixed inputs).
    pub metadata: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Significant digits for numeric cells.
    pub precision: usize,
}

impl OutputTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            metadata: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            precision: 17,
        }
    }

    pub fn meta(&mut self, line: impl Into<String>) {
        self.metadata.push(line.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<(), Error> {
        if row.len() != self.header.len() {
            return Err(Error::Domain(format!(
                "row arity {} does not match header arity {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    fn format_num(&self, v: f64) -> String {
        format!("{:.*e}", self.precision.saturating_sub(1), v)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.metadata {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let rendered: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Num(v) => self.format_num(*v),
                    Cell::Text(s) => s.clone(),
                    Cell::Empty => String::new(),
                })
                .collect();
            let _ = writeln!(out, "{}", rendered.join(","));
        }
        out
    }

    /// Parse a table emitted by [`Self::to_csv`]. Cells that re-render
    /// byte-identically as 17-digit numbers come back as [`Cell::Num`];
    /// everything else stays text.
    pub fn parse_csv(input: &str) -> Result<Self, Error> {
        let mut table = Self {
            metadata: Vec::new(),
            header: Vec::new(),
            rows: Vec::new(),
            precision: 17,
        };
        let mut lines = input.lines().peekable();
        while let Some(line) = lines.peek() {
            if let Some(rest) = line.strip_prefix("# ") {
                table.metadata.push(rest.to_string());
                lines.next();
            } else {
                break;
            }
        }
        let header = lines
            .next()
            .ok_or_else(|| Error::Domain("CSV input has no header row".into()))?;
        table.header = header.split(',').map(|s| s.to_string()).collect();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let row: Vec<Cell> = line
                .split(',')
                .map(|field| {
                    if field.is_empty() {
                        return Cell::Empty;
                    }
                    match field.parse::<f64>() {
                        Ok(v) if table.format_num(v) == field => Cell::Num(v),
                        _ => Cell::Text(field.to_string()),
                    }
                })
                .collect();
            if row.len() != table.header.len() {
                return Err(Error::Domain(format!(
                    "CSV row arity {} does not match header arity {}",
                    row.len(),
                    table.header.len()
                )));
            }
            table.rows.push(row);
        }
        Ok(table)
    }
}
