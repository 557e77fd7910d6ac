use clap::ValueEnum;
use serde_json::Value;
use std::io::{self, Write};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(mut self, r: Vec<String>) -> Table {
        debug_assert_eq!(r.len(), self.header.len());
        self.rows.push(r);
        self
    }
}

/// A report in its JSON and tabular forms; `pass` drives the exit code.
pub struct Outcome {
    pub value: Value,
    pub table: Table,
    pub pass: bool,
}

impl Outcome {
    pub fn new(value: Value, table: Table) -> Outcome {
        Outcome { value, table, pass: true }
    }

    pub fn pass(mut self, pass: bool) -> Outcome {
        self.pass = pass;
        self
    }
}

pub fn emit(out: &Outcome, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &out.value)?;
            writeln!(w)
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            c.write_record(&out.table.header)?;
            for r in &out.table.rows {
                c.write_record(r)?;
            }
            c.flush()
        }
        Format::Table => {
            let t = &out.table;
            let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
            for r in &t.rows {
                for (wd, cell) in widths.iter_mut().zip(r) {
                    *wd = (*wd).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &wd)| format!("{c:<wd$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(w, "{}", line(&t.header))?;
            writeln!(w, "{}", widths.iter().map(|&wd| "-".repeat(wd)).collect::<Vec<_>>().join("  "))?;
            for r in &t.rows {
                writeln!(w, "{}", line(r))?;
            }
            Ok(())
        }
    }
}
