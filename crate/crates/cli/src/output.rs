use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Result of a command in both output shapes.
pub struct Artifact {
    pub command: &'static str,
    /// Top-level JSON fields besides `schema` and `command`.
    pub fields: Map<String, Value>,
    pub headers: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl Artifact {
    pub fn new(command: &'static str, headers: &'static [&'static str]) -> Self {
        Self {
            command,
            fields: Map::new(),
            headers,
            rows: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA_VERSION.into());
        m.insert("command".into(), self.command.into());
        m.extend(self.fields.clone());
        Value::Object(m)
    }

    fn write_to(&self, format: Format, out: impl Write) -> Result<()> {
        match format {
            Format::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &self.json())?;
                writeln!(out)?;
                out.flush()?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    /// Writes to `path`, or to stdout when no path is given.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => {
                let f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
                self.write_to(format, BufWriter::new(f))
            }
            None => match self.write_to(format, io::stdout().lock()) {
                // a closed downstream pipe (e.g. `| head`) is not a failure
                Err(e) if is_broken_pipe(&e) => Ok(()),
                other => other,
            },
        }
    }
}

/// Shortest round-trip form (exponential for very small or large values), so
/// identical runs give identical bytes.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|ce| matches!(ce.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe))
            || c.downcast_ref::<serde_json::Error>().is_some_and(|je| je.io_error_kind() == Some(io::ErrorKind::BrokenPipe))
    })
}
