//! Report assembly and emission.
//!
//! A report is a metadata block (tool version, constants-table provenance,
//! full config echo, wall time) plus one results table. CSV renders the
//! metadata as leading `#` comment lines; JSON-lines renders it as a first
//! `meta` object followed by one `row` object per table row. Rerunning the
//! same config and seed reproduces the table bytes exactly; only the
//! wall-time line may differ.

use std::fs;
use std::io;
use std::path::Path;

use crate::config::ExperimentConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnKind {
    Text,
    Number,
}

#[derive(Clone, Debug)]
pub struct Column {
    pub name: &'static str,
    pub kind: ColumnKind,
}

pub fn text(name: &'static str) -> Column {
    Column {
        name,
        kind: ColumnKind::Text,
    }
}

pub fn number(name: &'static str) -> Column {
    Column {
        name,
        kind: ColumnKind::Number,
    }
}

/// A rectangular results table; cells are pre-rendered, `None` = empty.
#[derive(Clone, Debug)]
pub struct ResultsTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Option<String>>>,
}

impl ResultsTable {
    pub fn new(columns: Vec<Column>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Option<String>>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }
}

/// Deterministic float rendering: shortest round-trip decimal in a readable
/// band, exponent form outside it.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub struct RunReport {
    pub config: ExperimentConfig,
    pub table: ResultsTable,
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn render(&self) -> String {
        match self.config.format {
            crate::config::OutputFormat::Csv => self.render_csv(),
            crate::config::OutputFormat::JsonLines => self.render_json_lines(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# minangle v{}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!(
            "# experiment: {}\n",
            self.config.experiment.name()
        ));
        out.push_str(&format!("# seed: {}\n", self.config.seed));
        out.push_str(&format!(
            "# constants: version={} fingerprint={}\n",
            minangle::constants::table().version,
            minangle::constants::table_fingerprint()
        ));
        for (k, v) in self.config.echo() {
            out.push_str(&format!("# cfg {k} = {v}\n"));
        }
        out.push_str(&format!("# wall_time_ms: {}\n", self.wall_time_ms));
        let names: Vec<&str> = self.table.columns.iter().map(|c| c.name).collect();
        out.push_str(&names.join(","));
        out.push('\n');
        for row in &self.table.rows {
            let cells: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json_lines(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"meta\":{");
        out.push_str(&format!(
            "\"tool\":\"minangle\",\"version\":\"{}\"",
            env!("CARGO_PKG_VERSION")
        ));
        out.push_str(&format!(
            ",\"experiment\":\"{}\",\"seed\":{}",
            self.config.experiment.name(),
            self.config.seed
        ));
        out.push_str(&format!(
            ",\"constants_version\":{},\"constants_fingerprint\":\"{}\"",
            minangle::constants::table().version,
            minangle::constants::table_fingerprint()
        ));
        out.push_str(",\"config\":{");
        let echo = self.config.echo();
        for (i, (k, v)) in echo.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{k}\":\"{v}\""));
        }
        out.push_str(&format!("}},\"wall_time_ms\":{}}}}}\n", self.wall_time_ms));
        for row in &self.table.rows {
            out.push_str("{\"row\":{");
            let mut first = true;
            for (col, cell) in self.table.columns.iter().zip(row) {
                let Some(value) = cell else { continue };
                if !first {
                    out.push(',');
                }
                first = false;
                match col.kind {
                    ColumnKind::Number => out.push_str(&format!("\"{}\":{value}", col.name)),
                    ColumnKind::Text => out.push_str(&format!("\"{}\":\"{value}\"", col.name)),
                }
            }
            out.push_str("}}\n");
        }
        out
    }
}

/// Writes via a temp file in the same directory plus rename, so a failed or
/// interrupted run never leaves a partially overwritten report.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let tmp = path.with_extension(format!(
        "{}tmp",
        path.extension()
            .map(|e| format!("{}.", e.to_string_lossy()))
            .unwrap_or_default()
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn sample_report() -> RunReport {
        let config = parse_config("experiment = bound\n[bound]\nr = 1\n").unwrap();
        let mut table = ResultsTable::new(vec![number("r"), number("value"), text("kind")]);
        table.push_row(vec![
            Some("1".into()),
            Some(fmt_f64(0.7071067811865475)),
            Some("analytic".into()),
        ]);
        table.push_row(vec![Some("1".into()), None, Some("scan".into())]);
        RunReport {
            config,
            table,
            wall_time_ms: 5,
        }
    }

    #[test]
    fn csv_layout() {
        let text = sample_report().render_csv();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# minangle v"));
        assert!(lines
            .iter()
            .any(|l| l.starts_with("# cfg bound.m_grid = 256")));
        let header_idx = lines.iter().position(|l| !l.starts_with('#')).unwrap();
        assert_eq!(lines[header_idx], "r,value,kind");
        assert_eq!(lines[header_idx + 1], "1,0.7071067811865475,analytic");
        assert_eq!(lines[header_idx + 2], "1,,scan");
    }

    #[test]
    fn json_lines_layout() {
        let text = sample_report().render_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("{\"meta\":{\"tool\":\"minangle\""));
        assert_eq!(
            lines[1],
            "{\"row\":{\"r\":1,\"value\":0.7071067811865475,\"kind\":\"analytic\"}}"
        );
        // Empty cells are omitted.
        assert_eq!(lines[2], "{\"row\":{\"r\":1,\"kind\":\"scan\"}}");
    }

    #[test]
    fn float_formatting_bands() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(256.0), "256");
        assert_eq!(fmt_f64(1.13e-35), "1.13e-35");
        assert_eq!(fmt_f64(-2.5e20), "-2.5e20");
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "first\n").unwrap();
        write_atomic(&path, "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
        // No stray temp file left behind.
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1);
    }
}
