//! Tabular results and their CSV / JSON encodings.

use std::io;

use serde_json::{json, Value};

use crate::scenario::Format;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(&'static str),
}

impl Cell {
    /// Floats use the shortest text that parses back to the same value.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Text(s) => (*s).to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn encode(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    /// Comma separated, header first, `\n` after every record.
    pub fn to_csv(&self) -> io::Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }

    /// `{"columns": [...], "rows": [[...], ...]}` followed by a newline.
    pub fn to_json(&self) -> Vec<u8> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let mut out = serde_json::to_vec(&json!({ "columns": self.columns, "rows": rows }))
            .expect("json values always serialize");
        out.push(b'\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["h", "residual_name", "value"]);
        t.push(vec![
            Cell::Float(0.02),
            Cell::Text("faraday"),
            Cell::Float(1.0 / 3.0),
        ]);
        t.push(vec![
            Cell::Float(1e-300),
            Cell::Text("wave"),
            Cell::Float(-0.0),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(sample().to_csv().unwrap()).unwrap();
        assert_eq!(
            text,
            "h,residual_name,value\n0.02,faraday,0.3333333333333333\n1e-300,wave,-0.0\n"
        );
    }

    #[test]
    fn floats_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            1e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            -2.5,
        ] {
            assert_eq!(Cell::Float(v).render().parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_slice(&sample().to_json()).unwrap();
        assert_eq!(v["columns"][1], "residual_name");
        assert_eq!(v["rows"][0][2].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(v["rows"][1][1], "wave");
    }
}
