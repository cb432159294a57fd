//! The `linkhom` command line.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::cache::Cache;
use super::parse::{parse_graph, parse_link, ParseError};
use super::render::{invariants_json, invariants_text, invariants_tsv, serialize_word};
use crate::decide::{closure_equivalent, gclosure_equivalent, DecisionOutcome, Verdict};
use crate::scheme::{invariant_count, level_count, ComponentDecomposition};
use crate::stringlink::{canonical_word, ColoredStringLink, InvariantVector};
use crate::{Error, Int};

pub const EXIT_IO: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_VALIDATION: i32 = 5;
pub const EXIT_USAGE: i32 = 6;

#[derive(Debug, Parser)]
#[command(name = "linkhom", version, about = "Invariants and homotopy classification of colored string links")]
struct Cli {
    /// Report errors as a JSON object on stderr.
    #[arg(long, global = true)]
    error_json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputFormat {
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every canonical invariant of a link.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Print the canonical representative word of a link.
    Canon { file: PathBuf },
    /// Exit 0 if two links are homotopic, 1 otherwise.
    Eq { left: PathBuf, right: PathBuf },
    /// Decide equivalence of closures: exit 0 equivalent, 1 distinct, 2 unknown.
    ClosureEq {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Print the witness moves or the distinguishing invariant.
        #[arg(long)]
        certificate: bool,
    },
    /// Count canonical invariants of a decomposition such as "2 1 1".
    Count {
        #[arg(long)]
        colors: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Like closure-eq, for links given by a graph header.
    GraphEq {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        certificate: bool,
    },
    /// Print the decomposition a graph header reduces to.
    ReduceGraph { file: PathBuf },
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, ParseError),
    Validation(Error),
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Io(..) => EXIT_IO,
            CliError::Parse(..) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(..) => "io",
            CliError::Parse(..) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Usage(_) => "usage",
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = json!({ "error": self.kind(), "code": self.code(), "message": self.to_string() });
        match self {
            CliError::Io(p, _) => v["file"] = json!(p.display().to_string()),
            CliError::Parse(p, e) => {
                v["file"] = json!(p.display().to_string());
                v["line"] = json!(e.line);
                v["column"] = json!(e.column);
                v["kind"] = json!(e.kind.name());
            }
            _ => {}
        }
        v
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Parse(p, e) => write!(f, "{}:{e}", p.display()),
            CliError::Validation(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Validation(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_link(path: &Path) -> CliResult<ColoredStringLink> {
    let doc = parse_link(&read(path)?).map_err(|e| CliError::Parse(path.to_path_buf(), e))?;
    Ok(ColoredStringLink::new(doc.ambient, doc.word)?)
}

fn load_graph_link(path: &Path) -> CliResult<ColoredStringLink> {
    let doc = parse_graph(&read(path)?).map_err(|e| CliError::Parse(path.to_path_buf(), e))?;
    Ok(ColoredStringLink::new(doc.link.ambient, doc.link.word)?)
}

/// Invariants through the on-disk cache when one is configured.
fn invariants(a: &ColoredStringLink, err: &mut dyn Write) -> CliResult<InvariantVector<Int>> {
    let cache = Cache::from_env();
    if let Some(v) = cache.as_ref().and_then(|c| c.load(a)) {
        return Ok(v);
    }
    let v = a.invariant_vector()?.clone();
    if let Some(c) = cache {
        if let Err(e) = c.store(a, &v) {
            let _ = writeln!(err, "warning: cache directory {} is not writable: {e}", c.dir().display());
        }
    }
    Ok(v)
}

fn same_ambient(a: &ColoredStringLink, b: &ColoredStringLink) -> CliResult<()> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch(a.ambient().to_string(), b.ambient().to_string()).into());
    }
    Ok(())
}

fn report(outcome: &DecisionOutcome, certificate: bool, out: &mut dyn Write) -> std::io::Result<i32> {
    let code = match outcome.verdict {
        Verdict::Equivalent => {
            writeln!(out, "equivalent")?;
            if certificate {
                let w = outcome.witness.as_deref().unwrap_or_default();
                writeln!(out, "witness: {} move{}", w.len(), if w.len() == 1 { "" } else { "s" })?;
                for m in w {
                    writeln!(out, "  {m}")?;
                }
            }
            0
        }
        Verdict::Distinct => {
            writeln!(out, "distinct")?;
            if let (true, Some(c)) = (certificate, &outcome.certificate) {
                writeln!(out, "certificate: {c}")?;
            }
            1
        }
        Verdict::Unknown => {
            writeln!(out, "unknown")?;
            if certificate {
                writeln!(
                    out,
                    "search exhausted: {} nodes expanded of budget {}",
                    outcome.stats.nodes_expanded, outcome.stats.budget
                )?;
            }
            2
        }
    };
    Ok(code)
}

fn run_command(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let io = |e: std::io::Error| CliError::Io(PathBuf::from("<stdout>"), e);
    match cmd {
        Command::Invariants { file, format } => {
            let a = load_link(&file)?;
            let v = invariants(&a, err)?;
            let text = if format.json {
                invariants_json(&v) + "\n"
            } else if format.tsv {
                invariants_tsv(&v)
            } else {
                invariants_text(&v)
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Canon { file } => {
            let a = load_link(&file)?;
            let v = invariants(&a, err)?;
            let (word, _) = canonical_word(&v)?;
            out.write_all(serialize_word(a.ambient(), &word).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Eq { left, right } => {
            let (a, b) = (load_link(&left)?, load_link(&right)?);
            same_ambient(&a, &b)?;
            let equal = invariants(&a, err)? == invariants(&b, err)?;
            writeln!(out, "{}", if equal { "equal" } else { "distinct" }).map_err(io)?;
            Ok(if equal { 0 } else { 1 })
        }
        Command::ClosureEq { left, right, budget, certificate } => {
            let (a, b) = (load_link(&left)?, load_link(&right)?);
            same_ambient(&a, &b)?;
            let outcome = closure_equivalent(&a, &b, budget)?;
            report(&outcome, certificate, out).map_err(io)
        }
        Command::GraphEq { left, right, budget, certificate } => {
            let (a, b) = (load_graph_link(&left)?, load_graph_link(&right)?);
            same_ambient(&a, &b)?;
            let outcome = gclosure_equivalent(&a, &b, budget)?;
            report(&outcome, certificate, out).map_err(io)
        }
        Command::Count { colors, level } => {
            let counts = colors
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("--colors: {e}")))?;
            let l = ComponentDecomposition::new(counts)?;
            let n = match level {
                Some(k) => level_count(&l, k),
                None => invariant_count(&l),
            };
            writeln!(out, "{n}").map_err(io)?;
            Ok(0)
        }
        Command::ReduceGraph { file } => {
            let doc = parse_graph(&read(&file)?).map_err(|e| CliError::Parse(file.clone(), e))?;
            out.write_all(serialize_word(&doc.link.ambient, &[]).as_bytes()).map_err(io)?;
            Ok(0)
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let error_json = args.iter().any(|a| a == "--error-json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let ce = CliError::Usage(text.trim_start_matches("error: ").trim_end().to_string());
            emit(&ce, error_json, err);
            return ce.code();
        }
    };
    match run_command(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            emit(&e, cli.error_json, err);
            e.code()
        }
    }
}

fn emit(e: &CliError, as_json: bool, err: &mut dyn Write) {
    let _ = if as_json {
        writeln!(err, "{}", e.to_json())
    } else {
        writeln!(err, "error: {e}")
    };
}
