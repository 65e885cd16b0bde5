use std::fmt::Display;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Record,
}

/// What a subcommand prints: human-readable lines, and the same facts as
/// `key=value` records. `ok` is false when the property under test fails.
pub struct Report {
    pub ok: bool,
    text: Vec<String>,
    records: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            ok: true,
            text: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn failed(mut self) -> Self {
        self.ok = false;
        self
    }

    pub fn line(mut self, s: impl Display) -> Self {
        self.text.push(s.to_string());
        self
    }

    pub fn record(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.records.push((key.into(), value.to_string()));
        self
    }

    /// A field printed both as `label: value` text and as a record.
    pub fn field(self, key: &str, value: impl Display) -> Self {
        let v = value.to_string();
        self.line(format!("{key}: {v}")).record(key, v)
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => {
                for l in &self.text {
                    println!("{l}");
                }
            }
            Format::Record => {
                for (k, v) in &self.records {
                    println!("{k}={v}");
                }
            }
        }
    }
}
