//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{basis_from_json, float_matrix_from_json, parse_json};
use crate::report::{
    check_report, decompose_report, expm_report, hierarchy, suite_report, table1_report, ExpmMethod,
};
use crate::spec::{parse_group, parse_pi, parse_spec, FamilyKind, ParsedSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "jm", version, about = "Uniformization stability of Markov models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closure, module, minimality and stability verdicts for one model.
    Check {
        /// Model specification, e.g. `Symm@4` or `EqTR[G=(12);pi=random]@4`.
        spec: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        format: Format,
    },
    /// Stability of the equivariant time-reversible models on four states.
    Table1 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        format: Format,
    },
    /// Jordan-closed Sₙ-modules and their inclusions.
    Hierarchy {
        #[arg(long)]
        n: usize,
        /// Emit Graphviz DOT.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sₙ-irrep multiplicities of a model subspace.
    Decompose {
        spec: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json: bool,
    },
    /// Matrix exponential `exp(Qt)` of a rate matrix read from JSON.
    Expm {
        /// JSON file holding the rate matrix (`-` for stdin).
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Unif)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Run a named identity suite.
    Suite {
        name: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled distribution vectors.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// Distribution vector (`random` or `p1,p2,...`), overriding the spec.
    #[arg(long)]
    pi: Option<String>,
    /// Group used for the module check, as generators like `(12),(34)`.
    #[arg(long)]
    group: Option<String>,
    /// JSON file with a basis for `Custom@n`.
    #[arg(long)]
    basis: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Format {
    #[arg(long, conflicts_with = "md")]
    json: bool,
    #[arg(long)]
    md: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Unif,
    Ref,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, Some(err))) => Outcome {
            stdout,
            stderr: format!("error: {err}\n"),
            code: err.exit_code(),
        },
        Ok((stdout, None)) => Outcome { stdout, stderr: String::new(), code: 0 },
        Err(err) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: err.exit_code(),
        },
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Parse(format!("stdin: {e}")))
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn resolve_spec(text: &str, common: &Common) -> Result<ParsedSpec, CliError> {
    let mut parsed = parse_spec(text)?;
    if let Some(pi) = &common.pi {
        if !parsed.kind.needs_pi() {
            return Err(CliError::Parse(format!("{text} has no distribution parameter")));
        }
        parsed.pi = Some(parse_pi(pi, parsed.n)?);
    }
    if let Some(path) = &common.basis {
        if parsed.kind != FamilyKind::Custom {
            return Err(CliError::Parse(String::from("--basis only applies to Custom@n")));
        }
        let basis = basis_from_json(&parse_json(&read_input(path)?)?)?;
        if let Some(m) = basis.iter().find(|m| m.n() != parsed.n) {
            return Err(CliError::Parse(format!(
                "basis matrix is {}x{} but the spec has n = {}",
                m.n(),
                m.n(),
                parsed.n
            )));
        }
        parsed.basis = Some(basis);
    }
    Ok(parsed)
}

/// Returns the rendered output plus an error to report after printing it.
fn dispatch(command: Command) -> Result<(String, Option<CliError>), CliError> {
    match command {
        Command::Check { spec, common, format } => {
            let parsed = resolve_spec(&spec, &common)?;
            let group = common.group.as_deref().map(|g| parse_group(g, parsed.n)).transpose()?;
            let report = check_report(&parsed, group.as_ref(), common.samples, common.seed)?;
            let out = if format.json {
                to_json(&report)?
            } else if format.md {
                report.to_markdown()
            } else {
                report.to_text()
            };
            Ok((out, None))
        }
        Command::Table1 { common, format } => {
            let report = table1_report(common.samples, common.seed)?;
            let out = if format.json {
                to_json(&report)?
            } else if format.md {
                report.to_markdown()
            } else {
                report.to_text()
            };
            let err = (!report.all_match).then(|| {
                let bad: Vec<&str> = report.rows.iter().filter(|r| !r.matches).map(|r| r.model.as_str()).collect();
                CliError::Mismatch(format!("verdicts differ from the reference table for {}", bad.join(", ")))
            });
            Ok((out, err))
        }
        Command::Hierarchy { n, dot, json } => {
            let graph = hierarchy(n)?;
            let out = if dot {
                graph.to_dot()
            } else if json {
                to_json(&graph)?
            } else {
                graph.to_text()
            };
            Ok((out, None))
        }
        Command::Decompose { spec, common, json } => {
            let parsed = resolve_spec(&spec, &common)?;
            let report = decompose_report(&parsed, common.seed)?;
            let out = if json { to_json(&report)? } else { report.to_text() };
            let err = (!report.multiplicities.identity_holds)
                .then(|| CliError::Internal(String::from("multiplicities do not account for the dimension")));
            Ok((out, err))
        }
        Command::Expm { input, t, tol, method, json } => {
            let q = float_matrix_from_json(&parse_json(&read_input(&input)?)?)?;
            let method = match method {
                MethodArg::Unif => ExpmMethod::Uniformization,
                MethodArg::Ref => ExpmMethod::Reference,
            };
            let report = expm_report(&q, t, tol, method)?;
            let out = if json {
                to_json(&report)?
            } else {
                let mut s = String::new();
                for row in &report.matrix {
                    let cells: Vec<&str> = row.iter().map(|x| x.get()).collect();
                    s.push_str(&cells.join(" "));
                    s.push('\n');
                }
                if let (Some(l), Some(k), Some(b)) = (&report.lambda, report.terms_used, &report.truncation_bound) {
                    s.push_str(&format!("lambda {}  terms {}  tail bound {}\n", l.get(), k, b.get()));
                }
                s
            };
            Ok((out, None))
        }
        Command::Suite { name, common, json } => {
            let report = suite_report(&name, common.seed, common.samples)?;
            let out = if json { to_json(&report)? } else { report.to_text() };
            let err = (!report.passed).then(|| CliError::Mismatch(format!("suite {name} has failing checks")));
            Ok((out, err))
        }
    }
}
