//! Tabular reports and their JSON / CSV encodings.

use std::collections::BTreeMap;
use std::io::Write;

use beamsplit_core::Complex;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Real,
    Integer,
    Complex,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct Column {
    pub name: &'static str,
    pub kind: Kind,
}

pub const fn col(name: &'static str, kind: Kind) -> Column {
    Column { name, kind }
}

/// One table cell. `Null` marks a column that does not apply to the row.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Amp(Complex),
    Text(String),
    Null,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<Complex> for Cell {
    fn from(z: Complex) -> Self {
        Cell::Amp(z)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

/// Seventeen significant digits; round-trips every finite `f64`.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_owned()
    } else if x > 0.0 {
        "inf".to_owned()
    } else {
        "-inf".to_owned()
    }
}

fn raw_real(x: f64) -> Option<Box<RawValue>> {
    x.is_finite()
        .then(|| RawValue::from_string(format_real(x)).expect("exponent notation is valid JSON"))
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Real(x) => raw_real(*x).serialize(ser),
            Cell::Int(n) => ser.serialize_i64(*n),
            Cell::Amp(z) => {
                let mut seq = ser.serialize_seq(Some(2))?;
                seq.serialize_element(&raw_real(z.re))?;
                seq.serialize_element(&raw_real(z.im))?;
                seq.end()
            }
            Cell::Text(s) => ser.serialize_str(s),
            Cell::Null => ser.serialize_unit(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub status: Status,
    pub tolerance: Cell,
    pub parameters: BTreeMap<&'static str, Cell>,
    pub summary: BTreeMap<&'static str, Cell>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &'static str, tolerance: f64, columns: Vec<Column>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            status: Status::Pass,
            tolerance: Cell::Real(tolerance),
            parameters: BTreeMap::new(),
            summary: BTreeMap::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.parameters.insert(key, value.into());
    }

    pub fn summarize(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.insert(key, value.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Marks the report failed unless `ok`.
    pub fn require(&mut self, ok: bool) {
        if !ok {
            self.status = Status::Fail;
        }
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")
    }

    /// Complex columns split into `<name>_re` and `<name>_im`; `Null` is an empty field.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .delimiter(b',')
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let mut header = Vec::new();
        for c in &self.columns {
            match c.kind {
                Kind::Complex => {
                    header.push(format!("{}_re", c.name));
                    header.push(format!("{}_im", c.name));
                }
                _ => header.push(c.name.to_owned()),
            }
        }
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = Vec::with_capacity(header.len());
            for (cell, c) in row.iter().zip(&self.columns) {
                match (cell, c.kind) {
                    (Cell::Real(x), _) => rec.push(format_real(*x)),
                    (Cell::Int(n), _) => rec.push(n.to_string()),
                    (Cell::Amp(z), _) => {
                        rec.push(format_real(z.re));
                        rec.push(format_real(z.im));
                    }
                    (Cell::Text(s), _) => rec.push(s.clone()),
                    (Cell::Null, Kind::Complex) => rec.extend([String::new(), String::new()]),
                    (Cell::Null, _) => rec.push(String::new()),
                }
            }
            w.write_record(&rec)?;
        }
        w.flush()
    }
}
