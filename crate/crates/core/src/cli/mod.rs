//! `polylab` command-line front end: suites of checks, `report.json`, optional CSV and SVG.

pub mod config;
pub mod suites;

pub use config::{parse_nk, resolve, Args, RunConfig, Suite, SweepGrid};
pub use suites::{build, Outcome, Task};

use crate::{Error, Result};
use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_anchor: String,
    pub inputs: Value,
    pub value: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub internal_error: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub config_echo: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    CheckFailed = 1,
    ConfigError = 2,
    InternalError = 3,
}

fn run_task(t: &Task, timings: bool) -> CheckRecord {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(|| (t.body)()));
    let runtime_ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (value, detail, internal_error) = match res {
        Ok(Ok(Outcome { value, detail })) => (Some(value), detail, false),
        Ok(Err(e)) => (None, Some(e.to_string()), false),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (None, Some(format!("internal error: {msg}")), true)
        }
    };
    let pass = value.is_some_and(|v| v.is_finite() && v <= t.tolerance);
    CheckRecord {
        name: t.name.clone(),
        paper_anchor: t.paper_anchor.into(),
        inputs: t.inputs.clone(),
        value: value.filter(|v| v.is_finite()),
        tolerance: t.tolerance,
        pass,
        runtime_ms,
        detail,
        internal_error,
    }
}

/// Runs every check of the configured suite in parallel and assembles them in order.
pub fn execute(cfg: &RunConfig) -> Report {
    let tasks = build(cfg);
    let checks: Vec<CheckRecord> = tasks.par_iter().map(|t| run_task(t, cfg.timings)).collect();
    Report { version: REPORT_VERSION.into(), command: cfg.command.name().into(), config_echo: cfg.clone(), checks }
}

pub fn report_json(r: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(r).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

pub fn write_csv(r: &Report, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["name", "paper_anchor", "inputs", "value", "tolerance", "pass", "runtime_ms"]).map_err(io)?;
    for c in &r.checks {
        w.write_record([
            c.name.clone(),
            c.paper_anchor.clone(),
            c.inputs.to_string(),
            c.value.map(|v| format!("{v:e}")).unwrap_or_default(),
            format!("{:e}", c.tolerance),
            c.pass.to_string(),
            c.runtime_ms.map(|v| format!("{v:.3}")).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

/// One row per check: log₁₀ of value over tolerance, tolerance line at 0.
pub fn summary_svg(r: &Report) -> String {
    let row = 16.0;
    let (left, width) = (320.0, 300.0);
    let h = row * r.checks.len() as f64 + 40.0;
    let x_of = |v: f64| left + width / 2.0 + (v.clamp(-15.0, 15.0) / 15.0) * width / 2.0;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{h}" font-family="monospace" font-size="11">"#, left + width + 20.0);
    let _ = writeln!(s, r#"<line x1="{0}" y1="10" x2="{0}" y2="{1}" stroke="black"/>"#, x_of(0.0), h - 20.0);
    for (i, c) in r.checks.iter().enumerate() {
        let y = 20.0 + row * i as f64;
        let _ = writeln!(s, r#"<text x="4" y="{}">{}</text>"#, y + 4.0, c.name);
        let ratio = match c.value {
            Some(v) if c.tolerance > 0.0 => (v.abs().max(1e-300) / c.tolerance).log10(),
            Some(v) if v == 0.0 => -15.0,
            Some(_) => 15.0,
            None => 15.0,
        };
        let color = if c.pass { "green" } else { "red" };
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{y}" r="4" fill="{color}"/>"#, x_of(ratio));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}">log10(value / tolerance)</text>"#, left, h - 4.0);
    s.push_str("</svg>\n");
    s
}

pub fn write_outputs(r: &Report, cfg: &RunConfig) -> Result<()> {
    std::fs::create_dir_all(&cfg.out).map_err(io)?;
    std::fs::write(cfg.out.join("report.json"), report_json(r)?).map_err(io)?;
    if cfg.csv {
        write_csv(r, &cfg.out.join("report.csv"))?;
    }
    if cfg.svg {
        std::fs::write(cfg.out.join("report.svg"), summary_svg(r)).map_err(io)?;
    }
    Ok(())
}

fn print_summary(r: &Report) {
    for c in &r.checks {
        let v = c.value.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        let mark = if c.pass { "PASS" } else { "FAIL" };
        match &c.detail {
            Some(d) if !c.pass => println!("{mark} {:<48} {v:>11} <= {:.1e}  ({d})", c.name, c.tolerance),
            _ => println!("{mark} {:<48} {v:>11} <= {:.1e}", c.name, c.tolerance),
        }
    }
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    println!("{} checks, {} failed", r.checks.len(), failed);
}

/// Full run from a validated config; prints a summary and writes the report files.
pub fn run(cfg: &RunConfig) -> ExitStatus {
    let report = execute(cfg);
    print_summary(&report);
    if let Err(e) = write_outputs(&report, cfg) {
        eprintln!("error: {e}");
        return ExitStatus::InternalError;
    }
    if report.checks.iter().any(|c| c.internal_error) {
        ExitStatus::InternalError
    } else if report.all_pass() {
        ExitStatus::Pass
    } else {
        ExitStatus::CheckFailed
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { ExitStatus::ConfigError as i32 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match resolve(&parsed) {
        Ok(cfg) => run(&cfg) as i32,
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::ConfigError as i32
        }
    }
}
