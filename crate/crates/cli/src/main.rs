//! Command-line experiment runner.
//!
//! Exit codes: 0 success, 2 validation failure, 3 computation failure,
//! 4 I/O failure.

mod config;
mod experiments;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use config::{parse_config, OutputFormat};
use report::write_atomic;

const EXIT_VALIDATION: u8 = 2;
const EXIT_COMPUTE: u8 = 3;
const EXIT_IO: u8 = 4;

const USAGE: &str = "\
minangle: numerical experiments on device-limited angular measurements

USAGE:
  minangle run <config-path> [--output PATH] [--format csv|json-lines]
  minangle validate <config-path>
  minangle version

The config format is a flat key/value file with one [section] per
experiment; see the repository README for the key tables and examples.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.first().map(String::as_str) {
        Some("run") => cmd_run(&args[1..]),
        Some("validate") => cmd_validate(&args[1..]),
        Some("version") => cmd_version(),
        Some("--help") | Some("-h") | Some("help") => {
            print!("{USAGE}");
            ExitCode::SUCCESS
        }
        Some(other) => {
            eprintln!("unknown command {other:?}\n\n{USAGE}");
            ExitCode::from(EXIT_VALIDATION)
        }
        None => {
            eprintln!("{USAGE}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

fn read_config_file(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read config {}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })
}

fn cmd_run(args: &[String]) -> ExitCode {
    let mut config_path: Option<PathBuf> = None;
    let mut output_override: Option<PathBuf> = None;
    let mut format_override: Option<OutputFormat> = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--output" => match it.next() {
                Some(p) => output_override = Some(PathBuf::from(p)),
                None => {
                    eprintln!("--output requires a path");
                    return ExitCode::from(EXIT_VALIDATION);
                }
            },
            "--format" => match it.next().map(|s| OutputFormat::from_str(s)) {
                Some(Ok(f)) => format_override = Some(f),
                Some(Err(msg)) => {
                    eprintln!("{msg}");
                    return ExitCode::from(EXIT_VALIDATION);
                }
                None => {
                    eprintln!("--format requires csv or json-lines");
                    return ExitCode::from(EXIT_VALIDATION);
                }
            },
            other if config_path.is_none() && !other.starts_with('-') => {
                config_path = Some(PathBuf::from(other));
            }
            other => {
                eprintln!("unexpected argument {other:?}\n\n{USAGE}");
                return ExitCode::from(EXIT_VALIDATION);
            }
        }
    }
    let Some(config_path) = config_path else {
        eprintln!("run requires a config path\n\n{USAGE}");
        return ExitCode::from(EXIT_VALIDATION);
    };

    let text = match read_config_file(&config_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let mut cfg = match parse_config(&text) {
        Ok(cfg) => cfg,
        Err(errors) => {
            for e in &errors {
                eprintln!("config error: {e}");
            }
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    if let Some(path) = output_override {
        cfg.output = path;
    }
    if let Some(format) = format_override {
        cfg.format = format;
    }

    let report = match experiments::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("computation failed: {e}");
            return ExitCode::from(EXIT_COMPUTE);
        }
    };
    let rendered = report.render();
    if let Err(e) = write_atomic(&cfg.output, &rendered) {
        eprintln!("cannot write report {}: {e}", cfg.output.display());
        return ExitCode::from(EXIT_IO);
    }
    println!(
        "wrote {} ({} rows, {} ms)",
        cfg.output.display(),
        report.table.rows.len(),
        report.wall_time_ms
    );
    ExitCode::SUCCESS
}

fn cmd_validate(args: &[String]) -> ExitCode {
    let [path] = args else {
        eprintln!("validate requires exactly one config path\n\n{USAGE}");
        return ExitCode::from(EXIT_VALIDATION);
    };
    let text = match read_config_file(Path::new(path)) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match parse_config(&text) {
        Ok(cfg) => {
            println!("OK: experiment {}", cfg.experiment.name());
            for (k, v) in cfg.echo() {
                println!("  {k} = {v}");
            }
            ExitCode::SUCCESS
        }
        Err(errors) => {
            for e in &errors {
                eprintln!("config error: {e}");
            }
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

fn cmd_version() -> ExitCode {
    println!(
        "minangle {} (constants table v{}, fingerprint {})",
        env!("CARGO_PKG_VERSION"),
        minangle::constants::table().version,
        minangle::constants::table_fingerprint()
    );
    ExitCode::SUCCESS
}
