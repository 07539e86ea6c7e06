//! Rendering of result tables as aligned text, CSV or JSON lines.

use polylog::{Complex, Real};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Format {
    Table,
    Csv,
    JsonLines,
}

pub enum Annotation {
    Exact,
    Numeric { bits: u32, tol: f64 },
}

impl Annotation {
    fn text(&self) -> String {
        match self {
            Annotation::Exact => "exact".to_string(),
            Annotation::Numeric { bits, tol } => format!("{bits} bits, tol {tol:.0e}"),
        }
    }
}

/// Values below `tol` in magnitude print as `0`.
pub fn fmt_real(v: &Real, tol: f64, digits: usize) -> String {
    if v.abs().to_f64() < tol {
        "0".to_string()
    } else {
        v.to_decimal(digits)
    }
}

pub fn fmt_complex(v: &Complex, tol: f64, digits: usize) -> String {
    let clamp = |r: &Real| if r.abs().to_f64() < tol { Real::zero(r.prec()) } else { r.clone() };
    let z = Complex::new(clamp(&v.re), clamp(&v.im));
    if z.is_zero() {
        "0".to_string()
    } else {
        z.to_decimal(digits)
    }
}

pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn scalar(name: &str, value: String) -> Table {
        let mut t = Table::new(&[name]);
        t.push(vec![value]);
        t
    }

    /// Square matrix with columns `row, 0, 1, ..., size-1`.
    pub fn matrix(size: usize, entry: impl Fn(usize, usize) -> String) -> Table {
        let mut cols = vec!["row".to_string()];
        cols.extend((0..size).map(|j| j.to_string()));
        let mut t = Table { columns: cols, rows: Vec::new(), notes: Vec::new() };
        for i in 0..size {
            let mut r = vec![i.to_string()];
            r.extend((0..size).map(|j| entry(i, j)));
            t.rows.push(r);
        }
        t
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Free-text line shown after the table (as a comment in CSV).
    pub fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    pub fn render(&self, format: Format, ann: &Annotation) -> String {
        let mut out = String::new();
        match format {
            Format::Table => {
                out.push_str(&format!("# precision: {}\n", ann.text()));
                if self.columns.len() == 1 {
                    for r in &self.rows {
                        out.push_str(&r[0]);
                        out.push('\n');
                    }
                } else {
                    let widths: Vec<usize> = (0..self.columns.len())
                        .map(|j| self.rows.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0))
                        .collect();
                    let line = |cells: &[String]| {
                        let s: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                        s.join("  ").trim_end().to_string() + "\n"
                    };
                    out.push_str(&line(&self.columns));
                    for r in &self.rows {
                        out.push_str(&line(r));
                    }
                }
                for n in &self.notes {
                    out.push_str(&format!("# {n}\n"));
                }
            }
            Format::Csv => {
                out.push_str(&format!("# precision: {}\n", ann.text()));
                for n in &self.notes {
                    out.push_str(&format!("# {n}\n"));
                }
                out.push_str(&csv_line(&self.columns));
                for r in &self.rows {
                    out.push_str(&csv_line(r));
                }
            }
            Format::JsonLines => {
                for r in &self.rows {
                    let mut m = Map::new();
                    for (c, v) in self.columns.iter().zip(r) {
                        m.insert(c.clone(), Value::String(v.clone()));
                    }
                    m.insert("precision".into(), Value::String(ann.text()));
                    out.push_str(&Value::Object(m).to_string());
                    out.push('\n');
                }
                for n in &self.notes {
                    let mut m = Map::new();
                    m.insert("note".into(), Value::String(n.clone()));
                    m.insert("precision".into(), Value::String(ann.text()));
                    out.push_str(&Value::Object(m).to_string());
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn csv_line(cells: &[String]) -> String {
    let q: Vec<String> = cells
        .iter()
        .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
        .collect();
    q.join(",") + "\n"
}
