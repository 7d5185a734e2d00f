use frobenius_core::exact::{format_decimal, format_rational};
use frobenius_core::{PiecewisePolynomial, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Rat(Rational),
    Int(BigInt),
    Text(String),
    Bool(bool),
    List(Vec<Cell>),
}

impl From<Rational> for Cell {
    fn from(r: Rational) -> Self {
        Cell::Rat(r)
    }
}

impl From<&Rational> for Cell {
    fn from(r: &Rational) -> Self {
        Cell::Rat(r.clone())
    }
}

impl From<BigInt> for Cell {
    fn from(n: BigInt) -> Self {
        Cell::Int(n)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n.into())
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n.into())
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n.into())
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

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Vec<T>> for Cell {
    fn from(v: Vec<T>) -> Self {
        Cell::List(v.into_iter().map(Into::into).collect())
    }
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a subcommand produces, independent of the output format.
#[derive(Default)]
pub struct Report {
    pub request: Vec<(String, Cell)>,
    pub result: Vec<(String, Cell)>,
    pub table: Option<Table>,
    pub anchors: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn request(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.request.push((key.to_string(), value.into()));
        self
    }

    pub fn field(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.result.push((key.to_string(), value.into()));
        self
    }

    pub fn table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn anchor(mut self, a: &str) -> Self {
        self.anchors.push(a.to_string());
        self
    }
}

/// `"[lo, hi]: poly"` per piece.
pub fn pieces_cell(f: &PiecewisePolynomial) -> Cell {
    Cell::List(
        f.intervals()
            .map(|(lo, hi, p)| {
                Cell::Text(format!("[{}, {}]: {}", format_rational(lo), format_rational(hi), p.fmt_var("t")))
            })
            .collect(),
    )
}

pub struct Style {
    pub format: Format,
    pub decimal: Option<usize>,
}

impl Style {
    fn rational(&self, r: &Rational) -> String {
        match self.decimal {
            Some(k) => format_decimal(r, k),
            None => format_rational(r),
        }
    }

    fn text(&self, c: &Cell) -> String {
        match c {
            Cell::Rat(r) => self.rational(r),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(v) => {
                let sep = if self.format == Format::Csv { "; " } else { ", " };
                v.iter().map(|c| self.text(c)).collect::<Vec<_>>().join(sep)
            }
        }
    }

    fn json(&self, c: &Cell) -> Value {
        match c {
            Cell::Rat(r) => Value::String(self.rational(r)),
            Cell::Int(n) => match n.to_i64() {
                Some(v) => Value::from(v),
                None => Value::String(n.to_string()),
            },
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::List(v) => Value::Array(v.iter().map(|c| self.json(c)).collect()),
        }
    }

    fn object(&self, pairs: &[(String, Cell)]) -> Map<String, Value> {
        pairs.iter().map(|(k, v)| (k.clone(), self.json(v))).collect()
    }

    pub fn render(&self, r: &Report) -> String {
        match self.format {
            Format::Pretty => self.pretty(r),
            Format::Json => self.to_json(r),
            Format::Csv => self.csv(r),
        }
    }

    fn pretty(&self, r: &Report) -> String {
        let mut out = String::new();
        let width = r.result.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &r.result {
            match v {
                Cell::List(items) if items.iter().any(|c| matches!(c, Cell::Text(_))) => {
                    out += &format!("{k}:\n");
                    for item in items {
                        out += &format!("  {}\n", self.text(item));
                    }
                }
                _ => out += &format!("{k:<width$}  {}\n", self.text(v)),
            }
        }
        if let Some(t) = &r.table {
            if !r.result.is_empty() {
                out.push('\n');
            }
            let cells: Vec<Vec<String>> =
                t.rows.iter().map(|row| row.iter().map(|c| self.text(c)).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| {
                    cells
                        .iter()
                        .map(|row| row[i].chars().count())
                        .chain(std::iter::once(t.columns[i].chars().count()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |row: &[String]| {
                let parts: Vec<String> =
                    row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                parts.join("  ").trim_end().to_string() + "\n"
            };
            out += &line(&t.columns);
            for row in &cells {
                out += &line(row);
            }
        }
        out
    }

    fn to_json(&self, r: &Report) -> String {
        let mut result = self.object(&r.result);
        if let Some(t) = &r.table {
            let rows = t
                .rows
                .iter()
                .map(|row| {
                    Value::Object(
                        t.columns.iter().cloned().zip(row.iter().map(|c| self.json(c))).collect(),
                    )
                })
                .collect();
            result.insert("rows".into(), Value::Array(rows));
        }
        let mut doc = Map::new();
        doc.insert("request".into(), Value::Object(self.object(&r.request)));
        doc.insert("result".into(), Value::Object(result));
        doc.insert("anchors".into(), Value::from(r.anchors.clone()));
        serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize") + "\n"
    }

    fn csv(&self, r: &Report) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>, row: Vec<String>| {
            w.write_record(row).expect("writing to memory");
        };
        match &r.table {
            Some(t) => {
                write(&mut w, t.columns.clone());
                for row in &t.rows {
                    write(&mut w, row.iter().map(|c| self.text(c)).collect());
                }
            }
            None => {
                write(&mut w, r.result.iter().map(|(k, _)| k.clone()).collect());
                write(&mut w, r.result.iter().map(|(_, v)| self.text(v)).collect());
            }
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV is UTF-8")
    }
}
