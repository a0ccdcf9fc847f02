//! Command output, as aligned text or JSON.

use std::io::{self, Write};

use hypermass::{HPoint, Model};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Value {
    /// A number with its estimated absolute error.
    Scalar { value: f64, error: f64 },
    Point { model: Model, coords: Vec<f64>, error: f64 },
    List { values: Vec<f64> },
    Text { text: String },
}

impl Value {
    pub fn scalar(value: f64, error: f64) -> Self {
        Value::Scalar { value, error }
    }

    pub fn exact(value: f64) -> Self {
        Value::Scalar { value, error: 0.0 }
    }

    pub fn point(p: &HPoint, model: Model, error: f64) -> Self {
        Value::Point { model, coords: p.to_model(model).to_vec(), error }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text { text: s.into() }
    }
}

/// Shortest representation that parses back to the same double, switching to
/// exponent notation for very small or large magnitudes.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    /// Writes the table as CSV; floats use the shortest round-trip form.
    pub fn write_csv<W: Write>(&self, w: W) -> io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for r in &self.rows {
            out.write_record(r.iter().map(Cell::render))?;
        }
        out.flush()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub exit: i32,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, items: Vec::new(), table: None, exit: 0 }
    }

    pub fn push(&mut self, name: &str, value: Value) {
        self.items.push(Item { name: name.to_string(), value });
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.items.iter().find(|i| i.name == name).map(|i| &i.value)
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "command: {}", self.command.join(" "))?;
        for it in &self.items {
            match &it.value {
                Value::Scalar { value, error } => writeln!(w, "{}: {} +- {}", it.name, num(*value), num(*error))?,
                Value::Point { model, coords, error } => {
                    let c: Vec<String> = coords.iter().map(|x| num(*x)).collect();
                    writeln!(w, "{}: {} ({}) +- {}", it.name, model.name(), c.join(", "), num(*error))?
                }
                Value::List { values } => {
                    let c: Vec<String> = values.iter().map(|x| num(*x)).collect();
                    writeln!(w, "{}: [{}]", it.name, c.join(", "))?
                }
                Value::Text { text } => writeln!(w, "{}: {}", it.name, text)?,
            }
        }
        if let Some(t) = &self.table {
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([t.columns[j].len()]).max().unwrap_or(0))
                .collect();
            let line = |row: &[String]| -> String {
                row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
            };
            writeln!(w, "{}", line(&t.columns))?;
            for r in &cells {
                writeln!(w, "{}", line(r))?;
            }
        }
        writeln!(w, "exit: {}", self.exit)
    }
}
