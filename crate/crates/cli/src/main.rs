use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use indicatrix_cli::analysis::Command;
use indicatrix_cli::{execute, Options};

#[derive(Parser)]
#[command(
    name = "indicatrix",
    version,
    about = "Indicators, Newton polyhedra and zero-count bounds for polynomial systems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Basepoint overriding the file's `at:` line, e.g. "(1, -1)"
    #[arg(long, global = true, allow_hyphen_values = true)]
    at: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the indicator generators, σ and multitype
    Indicator { file: PathBuf },
    /// Print Θ⁺, its volume, the Newton number and the mass split
    Newton {
        file: PathBuf,
        /// Write the Newton polygon as SVG (2 variables only)
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print the bound chain and directional bounds
    Bounds {
        file: PathBuf,
        /// Positive direction, e.g. "1,2"; repeatable
        #[arg(long = "dir")]
        dirs: Vec<String>,
    },
    /// Count common zeros numerically (1 or 2 variables)
    Zeros { file: PathBuf },
    /// Run every inequality check on a file or on each *.sys in a directory
    Verify { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut opts = Options {
        json: cli.json,
        at: cli.at,
        ..Options::default()
    };
    let (cmd, path) = match cli.cmd {
        Cmd::Indicator { file } => (Command::Indicator, file),
        Cmd::Newton { file, svg } => {
            opts.svg = svg;
            (Command::Newton, file)
        }
        Cmd::Bounds { file, dirs } => {
            opts.dirs = dirs;
            (Command::Bounds, file)
        }
        Cmd::Zeros { file } => (Command::Zeros, file),
        Cmd::Verify { path } => (Command::Verify, path),
    };
    let code = execute(
        cmd,
        &path,
        &opts,
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code as u8)
}
