use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::Serialize;

use crate::args::Format;

/// One result line of `prank` and `sweep`.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub curve: String,
    pub p: u64,
    pub params: BTreeMap<&'static str, u64>,
    pub family: Option<String>,
    pub gamma: Option<String>,
    pub genus: Option<String>,
    pub method: String,
    pub supersingular: Option<bool>,
    pub agreement: Option<BTreeMap<String, String>>,
    pub status: String,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl OutputRecord {
    pub fn new(curve: String, p: u64) -> Self {
        OutputRecord {
            curve,
            p,
            params: BTreeMap::new(),
            family: None,
            gamma: None,
            genus: None,
            method: String::new(),
            supersingular: None,
            agreement: None,
            status: "ok".into(),
            error: None,
            elapsed_ms: 0,
        }
    }

    pub fn agreement_cell(&self) -> String {
        match &self.agreement {
            None => String::new(),
            Some(map) => map.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join("; "),
        }
    }
}

pub fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

/// Writes rows as a Markdown table, CSV with header, or one JSON object per line.
pub fn render<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    header: &[&str],
    records: &[T],
    cells: impl Fn(&T) -> Vec<String>,
) -> io::Result<()> {
    match format {
        Format::Md => {
            let rows: Vec<Vec<String>> = records.iter().map(&cells).collect();
            writeln!(out, "| {} |", header.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(header.len()))?;
            for row in rows {
                let escaped: Vec<String> = row.iter().map(|c| c.replace('|', "\\|")).collect();
                writeln!(out, "| {} |", escaped.join(" | "))?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
            w.write_record(header)?;
            for r in records {
                w.write_record(cells(r))?;
            }
            w.flush()?;
        }
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
