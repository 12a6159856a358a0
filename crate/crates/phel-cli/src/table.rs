//! CSV files written and read by the tool. Numbers carry 17 significant
//! digits so that every value survives a write/read cycle exactly.

use phel_numerics::{Sign, C64};
use phel_verify::Check;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("{path}: {detail}")]
    Format { path: String, detail: String },
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> TableError + '_ {
    move |source| TableError::Csv { path: path.display().to_string(), source }
}

fn format_err(path: &Path, detail: impl Into<String>) -> TableError {
    TableError::Format { path: path.display().to_string(), detail: detail.into() }
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_num(s: &str) -> Option<f64> {
    s.trim().parse().ok()
}

/// Label such as `-+-` for a list of component signs.
pub fn label(signs: &[Sign]) -> String {
    signs.iter().map(|s| if *s == Sign::Minus { '-' } else { '+' }).collect()
}

/// Raw table: header plus string cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<(), TableError> {
        let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
        w.write_record(&self.headers).map_err(csv_err(path))?;
        for r in &self.rows {
            w.write_record(r).map_err(csv_err(path))?;
        }
        w.flush().map_err(|e| csv_err(path)(e.into()))
    }

    pub fn read(path: &Path) -> Result<Self, TableError> {
        let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
        let headers = r.headers().map_err(csv_err(path))?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec.map_err(csv_err(path))?.iter().map(String::from).collect());
        }
        Ok(Self { headers, rows })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// A numeric column; empty cells read as `None`.
    pub fn numbers(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let c = self.column(name)?;
        self.rows
            .iter()
            .map(|r| if r[c].is_empty() { Some(None) } else { parse_num(&r[c]).map(Some) })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub coords: Vec<f64>,
    pub component: String,
    pub value: C64,
}

/// Field values at lattice points, one row per component:
/// `coords...,component,re,im`.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub coords: Vec<String>,
    pub rows: Vec<SnapshotRow>,
}

impl Snapshot {
    pub fn new(coords: &[&str]) -> Self {
        Self { coords: coords.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, coords: &[f64], component: String, value: C64) {
        self.rows.push(SnapshotRow { coords: coords.to_vec(), component, value });
    }

    pub fn to_table(&self) -> Table {
        let mut headers: Vec<&str> = self.coords.iter().map(String::as_str).collect();
        headers.extend(["component", "re", "im"]);
        let mut t = Table::new(&headers);
        for r in &self.rows {
            let mut cells: Vec<String> = r.coords.iter().map(|x| num(*x)).collect();
            cells.push(r.component.clone());
            cells.push(num(r.value.re));
            cells.push(num(r.value.im));
            t.push(cells);
        }
        t
    }

    pub fn write(&self, path: &Path) -> Result<(), TableError> {
        self.to_table().write(path)
    }

    pub fn read(path: &Path) -> Result<Self, TableError> {
        let t = Table::read(path)?;
        let n = t.headers.len();
        if n < 3 || t.headers[n - 3..] != ["component", "re", "im"] {
            return Err(format_err(path, "snapshot header must end with component,re,im"));
        }
        let mut s = Snapshot { coords: t.headers[..n - 3].to_vec(), rows: Vec::with_capacity(t.rows.len()) };
        for (i, r) in t.rows.iter().enumerate() {
            let bad = || format_err(path, format!("row {}: not a number", i + 2));
            let coords = r[..n - 3].iter().map(|c| parse_num(c).ok_or_else(bad)).collect::<Result<_, _>>()?;
            let re = parse_num(&r[n - 2]).ok_or_else(bad)?;
            let im = parse_num(&r[n - 1]).ok_or_else(bad)?;
            s.rows.push(SnapshotRow { coords, component: r[n - 3].clone(), value: C64::new(re, im) });
        }
        Ok(s)
    }
}

/// One line of a verification report as read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportLine {
    pub name: String,
    pub measured: f64,
    pub threshold: String,
    pub passed: bool,
}

pub fn report_table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["name", "measured", "threshold", "status"]);
    for c in checks {
        t.push(vec![c.name.clone(), num(c.measured), c.bound.to_string(), c.status().to_string()]);
    }
    t
}

pub fn read_report(path: &Path) -> Result<Vec<ReportLine>, TableError> {
    let t = Table::read(path)?;
    if t.headers != ["name", "measured", "threshold", "status"] {
        return Err(format_err(path, "report header must be name,measured,threshold,status"));
    }
    t.rows
        .iter()
        .map(|r| {
            let measured = parse_num(&r[1]).ok_or_else(|| format_err(path, format!("{}: bad measurement", r[0])))?;
            let passed = match r[3].as_str() {
                "PASS" => true,
                "FAIL" => false,
                other => return Err(format_err(path, format!("{}: status {other}", r[0]))),
            };
            Ok(ReportLine { name: r[0].clone(), measured, threshold: r[2].clone(), passed })
        })
        .collect()
}
