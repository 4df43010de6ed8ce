//! Table, CSV and JSON rendering of a [`CommandResult`].

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;

use crate::CommandResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// Shortest representation that parses back to the same f64; `-0` prints as `0`.
pub fn format_value(v: f64, digits: Option<usize>) -> String {
    let v = v + 0.0;
    match digits {
        Some(d) => format!("{v:.d$}"),
        None => format!("{v}"),
    }
}

pub fn render(result: &CommandResult, format: Format, digits: Option<usize>) -> io::Result<Vec<u8>> {
    match format {
        Format::Table => Ok(render_table(result, digits).into_bytes()),
        Format::Csv => render_csv(result, digits),
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(result).map_err(io::Error::other)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

fn render_csv(result: &CommandResult, digits: Option<usize>) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "value", "paper_anchor"])?;
    for row in &result.rows {
        w.write_record([row.name.as_str(), &format_value(row.value, digits), row.paper_anchor.as_str()])?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

fn render_table(result: &CommandResult, digits: Option<usize>) -> String {
    let values: Vec<String> = result.rows.iter().map(|r| format_value(r.value, digits)).collect();
    let w_name = result.rows.iter().map(|r| r.name.chars().count()).chain([4]).max().unwrap_or(4);
    let w_value = values.iter().map(|v| v.len()).chain([5]).max().unwrap_or(5);
    let w_anchor = result.rows.iter().map(|r| r.paper_anchor.chars().count()).chain([12]).max().unwrap_or(12);

    let mut out = format!("{}\n", result.command);
    out += &format!("{:<w_name$}  {:>w_value$}  {}\n", "name", "value", "paper_anchor");
    out += &format!("{}  {}  {}\n", "-".repeat(w_name), "-".repeat(w_value), "-".repeat(w_anchor));
    for (row, value) in result.rows.iter().zip(&values) {
        out += &format!("{:<w_name$}  {:>w_value$}  {}\n", row.name, value, row.paper_anchor);
    }
    if !result.notes.is_empty() || result.pass.is_some() {
        out.push('\n');
    }
    for note in &result.notes {
        out += &format!("note: {note}\n");
    }
    if let Some(pass) = result.pass {
        out += if pass { "result: PASS\n" } else { "result: FAIL\n" };
    }
    out
}

/// Writes to `path`, or to `stdout` when no path is given.
pub fn emit(
    result: &CommandResult,
    format: Format,
    digits: Option<usize>,
    path: Option<&Path>,
    stdout: &mut dyn Write,
) -> io::Result<()> {
    let bytes = render(result, format, digits)?;
    match path {
        Some(p) => File::create(p)?.write_all(&bytes),
        None => stdout.write_all(&bytes),
    }
}
