//! Command-line front end: system files in, text/JSON/SVG reports out.

pub mod analysis;
pub mod parse;
pub mod report;
pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use analysis::{analyze, Command, SystemReport, VerifyConfig};
use indicatrix::exactpoly::GaussianRational;
use indicatrix::Error;
use num_rational::BigRational;
use parse::{parse_system, ParseError, ParseErrorKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_DIMENSION: i32 = 4;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub json: bool,
    pub svg: Option<PathBuf>,
    pub at: Option<String>,
    pub dirs: Vec<String>,
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UnsupportedDimension(_) => EXIT_DIMENSION,
        Error::DimensionMismatch { .. } | Error::NonPositiveDirection => EXIT_PARSE,
        _ => EXIT_DEGENERATE,
    }
}

fn parse_exit(e: &ParseError) -> i32 {
    match e.kind {
        ParseErrorKind::Syntax => EXIT_PARSE,
        ParseErrorKind::Dimension => EXIT_DIMENSION,
    }
}

/// `*.sys` files directly inside `dir`, sorted by name.
pub fn system_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "sys"))
        .collect();
    out.sort();
    Ok(out)
}

fn parse_dirs(dirs: &[String]) -> Result<Vec<Vec<BigRational>>, ParseError> {
    dirs.iter()
        .map(|d| {
            parse::parse_point(d)?
                .into_iter()
                .map(|c| {
                    if c.is_real() {
                        Ok(c.re)
                    } else {
                        Err(ParseError {
                            line: 1,
                            col: 1,
                            message: format!("direction '{d}' must be real"),
                            kind: ParseErrorKind::Syntax,
                        })
                    }
                })
                .collect()
        })
        .collect()
}

/// Runs one command and writes its report; returns the process exit code.
pub fn execute(
    cmd: Command,
    target: &Path,
    opts: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let files = if target.is_dir() {
        if cmd != Command::Verify {
            let _ = writeln!(
                err,
                "{}: directories are only accepted by 'verify'",
                target.display()
            );
            return EXIT_PARSE;
        }
        match system_files(target) {
            Ok(f) => f,
            Err(e) => {
                let _ = writeln!(err, "{}: {e}", target.display());
                return EXIT_PARSE;
            }
        }
    } else {
        vec![target.to_path_buf()]
    };

    let at: Option<Vec<GaussianRational>> =
        match opts.at.as_deref().map(parse::parse_point).transpose() {
            Ok(v) => v,
            Err(e) => {
                let _ = writeln!(err, "--at: {e}");
                return EXIT_PARSE;
            }
        };
    let dirs = match parse_dirs(&opts.dirs) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "--dir: {e}");
            return EXIT_PARSE;
        }
    };

    let cfg = VerifyConfig::default();
    let mut reports: Vec<SystemReport> = Vec::new();
    let mut code = EXIT_OK;
    for file in &files {
        let name = file.display().to_string();
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "{name}: {e}");
                code = code.max(EXIT_PARSE);
                continue;
            }
        };
        let sys = match parse_system(&text) {
            Ok(s) => s,
            Err(e) => {
                let _ = writeln!(err, "{name}:{e}");
                code = code.max(parse_exit(&e));
                continue;
            }
        };
        match analyze(&name, &sys, cmd, at.as_deref(), &dirs, &cfg) {
            Ok(r) => {
                if !r.passed() {
                    code = code.max(EXIT_VIOLATION);
                }
                reports.push(r);
            }
            Err(e) => {
                let _ = writeln!(err, "{name}: {e}");
                code = code.max(exit_code_for(&e));
            }
        }
    }

    if let Some(path) = &opts.svg {
        match reports.first() {
            Some(r) if r.system.n() == 2 && r.theta.is_some() => {
                let gens: Vec<_> = r.indicator.generators().iter().cloned().collect();
                if let Err(e) =
                    std::fs::write(path, svg::render(r.theta.as_ref().expect("checked"), &gens))
                {
                    let _ = writeln!(err, "{}: {e}", path.display());
                    code = code.max(EXIT_PARSE);
                }
            }
            Some(r) if r.theta.is_some() => {
                let _ = writeln!(err, "--svg needs a system in 2 variables");
                code = code.max(EXIT_DIMENSION);
            }
            _ => {}
        }
    }

    if opts.json {
        let v = report::report_json(cmd, &reports);
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        );
    } else {
        for r in &reports {
            let _ = write!(out, "{}", report::system_text(cmd, r));
        }
        if cmd == Command::Verify {
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let _ = writeln!(out, "{} systems, {} with violations", reports.len(), failed);
        }
    }
    code
}
