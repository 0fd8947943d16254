//! `copri check`: parse models, run the wellformedness rules and the
//! competency-question checks, and print a report.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use copri_core::analysis::{self, AnalysisConfig, CheckGroup, CheckId, CheckSelection, Filters};
use copri_core::cml::parse_model;
use copri_core::model::{Level, SensitivityLevel};
use copri_core::report::{self, Report};
use copri_core::{wellformed, DiagCode, Diagnostic, ExecMode};

/// Exit statuses.
pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "copri", version, about = "Analyze privacy requirements models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one or more model files.
    Check(CheckArgs),
}

#[derive(Debug, clap::Args)]
struct CheckArgs {
    /// Model files (.cml).
    #[arg(required_unless_present = "list_checks")]
    files: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Comma-separated check ids, ranges (CQ16-CQ26), names or groups.
    #[arg(long, default_value = "all")]
    checks: String,

    /// Impact severity for CQ8 (L, M or H); all levels when omitted.
    #[arg(long, value_parser = parse_level)]
    severity: Option<Level>,

    /// Threat probability for CQ13 (L, M or H); all levels when omitted.
    #[arg(long, value_parser = parse_level)]
    probability: Option<Level>,

    /// Sensitivity for CQ3 (R, C, S or T); all levels when omitted.
    #[arg(long, value_parser = parse_sensitivity)]
    sensitivity: Option<SensitivityLevel>,

    /// Lowest outcome that makes the exit status non-zero.
    #[arg(long, value_enum, default_value_t = FailOn::Violation)]
    fail_on: FailOn,

    /// Permissions over composite information also cover its parts.
    #[arg(long)]
    parts_inherit_permissions: bool,

    /// Evaluate checks on the current thread only.
    #[arg(long)]
    sequential: bool,

    /// Print the available checks and groups, then exit.
    #[arg(long)]
    list_checks: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FailOn {
    Violation,
    Warning,
    Never,
}

fn parse_level(s: &str) -> Result<Level, String> {
    Level::from_code(&s.to_ascii_uppercase()).ok_or_else(|| format!("expected L, M or H, got `{s}`"))
}

fn parse_sensitivity(s: &str) -> Result<SensitivityLevel, String> {
    SensitivityLevel::from_code(&s.to_ascii_uppercase())
        .ok_or_else(|| format!("expected R, C, S or T, got `{s}`"))
}

/// Runs the command line and returns the exit status. Reports go to `out`,
/// diagnostics and usage errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_CLEAN } else { EXIT_ERROR };
        }
    };
    let Command::Check(args) = cli.command;

    if args.list_checks {
        let _ = out.write_all(list_checks().as_bytes());
        return EXIT_CLEAN;
    }

    let checks = match CheckSelection::parse(&args.checks) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let config = AnalysisConfig {
        checks,
        filters: Filters {
            sensitivity: args.sensitivity,
            severity: args.severity,
            probability: args.probability,
        },
        parts_inherit: args.parts_inherit_permissions,
        exec: if args.sequential { ExecMode::Sequential } else { ExecMode::default() },
    };

    let reports = check_files(&args.files, &config);

    for (path, report) in args.files.iter().zip(&reports) {
        for d in &report.diagnostics {
            let _ = writeln!(err, "{}: {d}", path.display());
        }
    }
    let rendered = match args.format {
        Format::Json if reports.len() == 1 => report::render_json(&reports[0]),
        Format::Json => report::render_json_many(&reports),
        Format::Text if reports.len() == 1 => report::render_text(&reports[0]),
        Format::Text => args
            .files
            .iter()
            .zip(&reports)
            .map(|(p, r)| format!("==> {} <==\n{}", p.display(), report::render_text(r)))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let _ = out.write_all(rendered.as_bytes());
    let _ = out.flush();

    exit_status(&reports, args.fail_on)
}

/// 2 on any error diagnostic; otherwise 1 when something reaches the
/// threshold; otherwise 0.
pub fn exit_status(reports: &[Report], fail_on: FailOn) -> i32 {
    if reports.iter().any(|r| r.counts.errors > 0) {
        return EXIT_ERROR;
    }
    let tripped = reports.iter().any(|r| match fail_on {
        FailOn::Violation => r.counts.violations > 0,
        FailOn::Warning => r.counts.violations > 0 || r.counts.warnings > 0,
        FailOn::Never => false,
    });
    if tripped {
        EXIT_FINDINGS
    } else {
        EXIT_CLEAN
    }
}

/// One report per file, in input order. Files are independent and are
/// processed concurrently unless running sequentially.
pub fn check_files(files: &[PathBuf], config: &AnalysisConfig) -> Vec<Report> {
    match config.exec {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            files.par_iter().map(|f| check_file(f, config)).collect()
        }
        _ => files.iter().map(|f| check_file(f, config)).collect(),
    }
}

/// Parse, then wellformedness; analysis only runs on a model free of
/// errors, since the checks assume typed, acyclic relations.
pub fn check_file(path: &Path, config: &AnalysisConfig) -> Report {
    let file = path.display().to_string();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let d = Diagnostic::error(DiagCode::IoError, None, format!("cannot read `{file}`: {e}"));
            return Report::new(None, vec![d], Vec::new());
        }
    };
    check_text(&text, &file, config)
}

pub fn check_text(text: &str, file: &str, config: &AnalysisConfig) -> Report {
    let graph = match parse_model(text, file) {
        Ok(g) => g,
        Err(diags) => return Report::new(None, diags, Vec::new()),
    };
    let wf = wellformed::check_all(&graph, config.exec);
    if wf.iter().any(Diagnostic::is_error) {
        return Report::new(graph.name().map(str::to_string), wf, Vec::new());
    }
    analysis::run_all(&graph, config).with_diagnostics(wf)
}

fn list_checks() -> String {
    let mut s = String::new();
    for c in CheckId::ALL {
        s.push_str(&format!("{:<5} {:<28} {:<16} {}\n", c.as_str(), c.slug(), c.kind().to_string(), c.title()));
    }
    s.push_str("\ngroups:");
    for g in CheckGroup::ALL {
        s.push_str(&format!(" {}", g.name()));
    }
    s.push('\n');
    s
}
