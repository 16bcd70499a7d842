//! `mesml`: validate, export and report on MES-ML specifications.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use mesml_core::interchange::parse_spec_named;
use mesml_core::linker::{data_interfaces, deployment_map, LinkerError};
use mesml_core::reporting::{
    export_dot, link_report, model_stats, render_deployments, render_interfaces,
    render_link_report, render_stats, render_status, render_ts_tree, status_report,
};
use mesml_core::validator::render_text;
use mesml_core::{validate_spec, Diagnostic, MesSpec, RuleId, Severity, ViewTag};
use serde::Serialize;

/// Process exit status, ordered by how bad the outcome is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Clean = 0,
    Warnings = 1,
    Errors = 2,
    ParseFailure = 3,
    Usage = 4,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mesml",
    version,
    about = "Validate, export and report on MES-ML specifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a specification against the rule catalog.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Treat warnings like errors (exit 2).
        #[arg(long)]
        deny_warnings: bool,
        /// Only report these rule codes (repeatable).
        #[arg(long = "rule", value_name = "CODE", value_parser = RuleId::from_str)]
        rules: Vec<RuleId>,
    },
    /// Render one diagram as DOT (pp, mes) or the plant hierarchy as a tree (ts).
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        view: View,
        /// Subprocess path: activity ids or names separated by `/`.
        #[arg(long)]
        diagram: Option<String>,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a report derived from the specification.
    Report {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: ReportKind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum View {
    Pp,
    Mes,
    Ts,
}

impl From<View> for ViewTag {
    fn from(v: View) -> ViewTag {
        match v {
            View::Pp => ViewTag::Pp,
            View::Mes => ViewTag::Mes,
            View::Ts => ViewTag::Ts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Status,
    Stats,
    Links,
    Deployment,
    Interfaces,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Status::Usage.into()
            } else {
                Status::Clean.into()
            };
        }
    };
    let status = match cli.command {
        Command::Validate {
            file,
            format,
            deny_warnings,
            rules,
        } => validate(&file, format, deny_warnings, &rules),
        Command::Export {
            file,
            view,
            diagram,
            out,
        } => export(&file, view.into(), diagram.as_deref(), out.as_deref()),
        Command::Report { file, kind, format } => report(&file, kind, format),
    };
    status.into()
}

/// Reads and parses `path`, reporting failures on stderr.
fn load(path: &Path) -> Result<MesSpec, Status> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        Status::Usage
    })?;
    parse_spec_named(&path.display().to_string(), &text).map_err(|errors| {
        for e in &errors {
            eprintln!("{e}");
        }
        eprintln!("error: {} parse error(s)", errors.len());
        Status::ParseFailure
    })
}

fn emit(text: &str) -> Status {
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
    {
        Ok(()) => Status::Clean,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Status::Clean,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            Status::Usage
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Exit status for a set of findings.
fn verdict(found: &[Diagnostic], deny_warnings: bool) -> Status {
    match found.iter().map(|d| d.severity).min() {
        Some(Severity::Error) => Status::Errors,
        Some(Severity::Warning) if deny_warnings => Status::Errors,
        Some(Severity::Warning) => Status::Warnings,
        _ => Status::Clean,
    }
}

#[derive(Serialize)]
struct ValidationReport<'a> {
    file: String,
    errors: usize,
    warnings: usize,
    lints: usize,
    diagnostics: &'a [Diagnostic],
}

fn validate(path: &Path, format: Format, deny_warnings: bool, rules: &[RuleId]) -> Status {
    let spec = match load(path) {
        Ok(spec) => spec,
        Err(status) => return status,
    };
    let mut found = validate_spec(&spec);
    if !rules.is_empty() {
        found.retain(|d| rules.contains(&d.rule));
    }
    let count = |s| found.iter().filter(|d| d.severity == s).count();
    let (errors, warnings, lints) = (
        count(Severity::Error),
        count(Severity::Warning),
        count(Severity::Lint),
    );
    let output = match format {
        Format::Text => render_text(&found),
        Format::Structured => json(&ValidationReport {
            file: path.display().to_string(),
            errors,
            warnings,
            lints,
            diagnostics: &found,
        }),
    };
    if format == Format::Text {
        eprintln!("{errors} error(s), {warnings} warning(s), {lints} lint(s)");
    }
    emit(&output).max(verdict(&found, deny_warnings))
}

fn export(path: &Path, view: ViewTag, diagram: Option<&str>, out: Option<&Path>) -> Status {
    let spec = match load(path) {
        Ok(spec) => spec,
        Err(status) => return status,
    };
    let rendered = match (view, diagram) {
        (ViewTag::Ts, None) => render_ts_tree(&spec),
        _ => match export_dot(&spec, view, diagram) {
            Ok(dot) => dot,
            Err(e) => {
                eprintln!("error: {e}");
                return Status::Usage;
            }
        },
    };
    match out {
        None => emit(&rendered),
        Some(target) => match fs::write(target, rendered) {
            Ok(()) => Status::Clean,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", target.display());
                Status::Usage
            }
        },
    }
}

fn report(path: &Path, kind: ReportKind, format: Format) -> Status {
    let spec = match load(path) {
        Ok(spec) => spec,
        Err(status) => return status,
    };
    let structured = format == Format::Structured;
    let output = match kind {
        ReportKind::Status => {
            let r = status_report(&spec);
            if structured {
                json(&r)
            } else {
                render_status(&r)
            }
        }
        ReportKind::Stats => {
            let r = model_stats(&spec);
            if structured {
                json(&r)
            } else {
                render_stats(&r)
            }
        }
        ReportKind::Links => match link_report(&spec) {
            Ok(r) if structured => json(&r),
            Ok(r) => render_link_report(&r),
            Err(e) => return blocked(e),
        },
        ReportKind::Deployment => match deployment_map(&spec) {
            Ok(r) if structured => json(&r),
            Ok(r) => render_deployments(&r),
            Err(e) => return blocked(e),
        },
        ReportKind::Interfaces => match data_interfaces(&spec) {
            Ok(r) if structured => json(&r),
            Ok(r) => render_interfaces(&r),
            Err(e) => return blocked(e),
        },
    };
    emit(&output)
}

/// A linker precondition failed: name the links in the way.
fn blocked(e: LinkerError) -> Status {
    match &e {
        LinkerError::Precondition { offending, .. } => {
            for b in offending {
                eprintln!("{b}");
            }
            eprintln!("error: {e}");
        }
        LinkerError::Model(m) => eprintln!("error: {m}"),
    }
    Status::Errors
}
