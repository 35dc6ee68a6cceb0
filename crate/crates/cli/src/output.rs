use std::fmt::Write as _;
use std::path::Path;

use crate::exit::CliError;

/// One CSV cell. Missing values render as an empty field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip decimal; infinities as `inf`/`-inf`, NaN as `nan`.
pub fn number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e15) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => number(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// Table whose column names carry their unit as `name[unit]`.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }
}

/// Curves as two-column text blocks separated by blank lines.
#[derive(Debug, Clone)]
pub struct Plot {
    pub name: String,
    pub curves: Vec<Vec<(f64, f64)>>,
}

impl Plot {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, curve) in self.curves.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            for (x, y) in curve {
                let _ = writeln!(out, "{} {}", number(*x), number(*y));
            }
        }
        out
    }
}

#[derive(Debug, Default)]
pub struct Report {
    pub tables: Vec<Table>,
    pub plots: Vec<Plot>,
}

impl Report {
    /// Writes `<name>.csv` and `<name>.dat` under `dir`, or prints the
    /// tables to stdout when no directory is given.
    pub fn emit(&self, dir: Option<&Path>) -> Result<(), CliError> {
        match dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                for t in &self.tables {
                    std::fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv()?)?;
                }
                for p in &self.plots {
                    std::fs::write(dir.join(format!("{}.dat", p.name)), p.render())?;
                }
            }
            None => {
                for (k, t) in self.tables.iter().enumerate() {
                    if k > 0 {
                        println!();
                    }
                    print!("{}", t.to_csv()?);
                }
                if !self.plots.is_empty() {
                    log::info!("plot data is only written with --out");
                }
            }
        }
        Ok(())
    }
}
