//! Command-line front end for `artinfold`.
//!
//! Exit codes: 0 when every reported check passes, 1 when at least one
//! fails, 2 on usage or parameter errors.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use artinfold::presentation::Label;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "artinfold",
    version,
    about = "Stallings folding toolkit for splittings of triangle Artin groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Pass threshold for numeric residuals.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Accept labels down to 3 (default floor is 4).
    #[arg(long, global = true)]
    pub override_range: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct Labels {
    /// Label M.
    #[arg(long)]
    pub m: Option<u32>,
    /// Label N.
    #[arg(long)]
    pub n: Option<u32>,
    /// Third label: 2 for Art_{2MN} or `inf` for Art_{MN,inf}.
    #[arg(long, default_value = "2")]
    pub third: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// The amalgamating subgroup C of an odd splitting.
    #[value(name = "artin-C")]
    ArtinC,
    /// The edge subgroup B of the both-even splitting.
    #[value(name = "artin-B")]
    ArtinB,
    /// The star presentation of Art_{2MN}.
    StarPresentation,
    /// The standard Artin presentation.
    Standard,
    /// The presentation read off the splitting.
    Splitting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportObject {
    /// The edge space X_C.
    Xc,
    /// The folded image of X_C over the rose on x, y.
    XcFolded,
    /// Core graph of the edge subgroup (C, or B when both labels are even).
    EdgeGroup,
    /// Fiber product of the edge subgroup graph with itself.
    Fiber,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the graph-of-groups data for Art_{2MN}.
    Split {
        #[command(flatten)]
        labels: Labels,
        /// Dihedral Artin group of label M instead.
        #[arg(long)]
        dihedral: bool,
    },
    /// Run the splitting checks for one label pair or a grid.
    Verify {
        #[command(flatten)]
        labels: Labels,
        /// Range A:B of labels; checks every (M, N) with A ≤ M, N ≤ B.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Classify conjugate intersections of an edge subgroup.
    Intersect {
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Half-label m (M = 2m, or 2m+1 with --odd).
        #[arg(long)]
        m: Option<u32>,
        /// Half-label n (N = 2n, or 2n+1 with --both-odd).
        #[arg(long)]
        n: Option<u32>,
        /// M is odd.
        #[arg(long)]
        odd: bool,
        /// Both M and N are odd.
        #[arg(long)]
        both_odd: bool,
        /// Comma-separated generators over x, y, instead of a preset.
        #[arg(long)]
        words: Option<String>,
    },
    /// Abelian invariants of Artin and splitting presentations.
    Abelianize {
        #[command(flatten)]
        labels: Labels,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Presentation file with `gens` and `rel` lines.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Residual-finiteness conditions in the von Dyck quotient.
    Rf {
        #[command(flatten)]
        labels: Labels,
        /// Order of x^-1.y in the quotient (default 7 when both labels are
        /// even, 6 otherwise).
        #[arg(long)]
        p: Option<u32>,
        /// Maximum number of syllables in the ping-pong enumeration.
        #[arg(long, default_value_t = 4)]
        syllables: usize,
    },
    /// Export a graph attached to the splitting.
    Export {
        #[command(flatten)]
        labels: Labels,
        #[arg(long, value_enum, default_value = "xc-folded")]
        object: ExportObject,
    },
}

/// A command's rendered output and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` (or `--out`) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match commands::dispatch(&cli) {
        Ok(o) => o,
        Err(commands::CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(commands::CliError::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_FAIL;
        }
    };
    let written = match &cli.output.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => out.write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_FAIL;
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
