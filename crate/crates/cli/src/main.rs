//! `achieve`: analyze, search, decide, construct and render achievable sets.
//!
//! Exit codes: 0 when a command completes with a definite answer, 2 when it
//! completes without one, 1 for usage and input errors, 3 when a search or
//! enumeration budget runs out.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use achieve_core::{
    build_general, catalog, decide, find_witness, necessary_report, noncyclic_search, obstruction_search, render_svg,
    DiscreteNSet, Error as CoreError, GeneratorSpec, Mode, NecessaryVerdict, SearchConfig, SetFile, SvgOptions,
    SymmetricSet, WitnessFile,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "achieve", version, about = "Achievable sets in Z^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Necessary conditions and obstruction certificates for a set.
    Analyze {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bounded witness search at a single resolution.
    Search {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Full decision pipeline: necessary conditions, obstructions, then
    /// exact searches for k = 3..=kmax.
    Decide {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Builds a witness from a planar generator specification.
    Construct {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The set achieved by a witness.
    Achieved {
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The ideal of finite sets realized as lattice points of one translate.
    Ideal {
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Every distinct achieved set at resolution k with |f| ≤ bound.
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// SVG drawing of a planar witness.
    Render {
        #[arg(long)]
        witness: PathBuf,
        /// Pixels per unit length.
        #[arg(long, default_value_t = 120)]
        scale: u32,
        /// Label each square with its cell coordinates.
        #[arg(long)]
        labels: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct SetArgs {
    #[arg(long)]
    set: PathBuf,
    /// Reject sets that are not symmetric or lack the origin instead of
    /// completing them.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest sup-norm of a translate.
    #[arg(long, default_value_t = 2)]
    bound: i64,
    /// Worker threads (0 = all cores). Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value_t = 100_000_000)]
    node_limit: u64,
    /// Accepted for uniformity with the test tooling; no command is random.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct OutArgs {
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Subset,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Subset => Mode::Subset,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NodeLimit(_) | CoreError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// How a completed command ended.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Definite,
    Unknown,
    Budget,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let field = if field == "." { "top level".to_string() } else { format!("field `{field}`") };
        CliError::Input(format!("{}: {field}: {}", path.display(), e.inner()))
    })
}

fn load_set(args: &SetArgs) -> Result<SymmetricSet, CliError> {
    let file: SetFile = read_json(&args.set)?;
    let (set, completed) = file
        .into_set(args.strict)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.set.display())))?;
    if completed {
        eprintln!("warning: {} was completed to the symmetric set {set}", args.set.display());
    }
    Ok(set)
}

fn load_witness(path: &Path) -> Result<DiscreteNSet, CliError> {
    let file: WitnessFile = read_json(path)?;
    DiscreteNSet::try_from(file).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit_text(out: &OutArgs, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

fn emit<T: Serialize>(out: &OutArgs, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit_text(out, &text)
}

fn search_config(args: &SearchArgs, k: usize, mode: Mode) -> SearchConfig {
    SearchConfig {
        k,
        bound: args.bound,
        mode,
        node_limit: args.node_limit,
        threads: args.threads,
    }
}

fn warn_all(messages: Vec<String>) {
    for m in messages {
        eprintln!("warning: {m}");
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze { set, out } => {
            let set = load_set(&set)?;
            let report = necessary_report(&set);
            let mut definite = !matches!(report.verdict, NecessaryVerdict::Inconclusive);
            let (certificate, conjectural) = if set.n() >= 2 && !definite {
                let certificate = if set.n() == 2 { obstruction_search(&set)? } else { None };
                definite = certificate.is_some();
                (certificate, noncyclic_search(&set)?)
            } else {
                (None, None)
            };
            emit(
                &out,
                &json!({
                    "set": set,
                    "report": report,
                    "certificate": certificate,
                    "conjectural_certificate": conjectural,
                }),
            )?;
            Ok(if definite { Outcome::Definite } else { Outcome::Unknown })
        }
        Command::Search {
            set,
            k,
            search,
            mode,
            out,
        } => {
            let set = load_set(&set)?;
            let cfg = search_config(&search, k, mode.into());
            warn_all(cfg.warnings(&set));
            let witness = find_witness(&set, &cfg)?;
            let outcome = if witness.is_some() { Outcome::Definite } else { Outcome::Unknown };
            emit(
                &out,
                &json!({ "k": k, "bound": cfg.bound, "mode": cfg.mode, "found": witness.is_some(), "witness": witness }),
            )?;
            Ok(outcome)
        }
        Command::Decide { set, kmax, search, out } => {
            let set = load_set(&set)?;
            let cfg = search_config(&search, 3, Mode::Exact);
            warn_all(cfg.warnings(&set));
            let verdict = decide(&set, kmax, &cfg);
            emit(&out, &verdict)?;
            Ok(if verdict.is_definite() { Outcome::Definite } else { Outcome::Unknown })
        }
        Command::Construct { spec, out } => {
            let spec: GeneratorSpec = read_json(&spec)?;
            emit(&out, &build_general(&spec)?)?;
            Ok(Outcome::Definite)
        }
        Command::Achieved { witness, out } => {
            emit(&out, &load_witness(&witness)?.achieved_set())?;
            Ok(Outcome::Definite)
        }
        Command::Ideal { witness, out } => {
            emit(&out, &load_witness(&witness)?.achieved_ideal()?)?;
            Ok(Outcome::Definite)
        }
        Command::Catalog { n, k, search, out } => {
            let cat = catalog(n, k, search.bound, search.node_limit, search.threads)?;
            let entries: Vec<_> = cat
                .entries
                .iter()
                .map(|e| json!({ "set": e.set, "witness": e.witness }))
                .collect();
            emit(&out, &entries)?;
            if cat.complete {
                Ok(Outcome::Definite)
            } else {
                eprintln!(
                    "partial catalog: node limit {} reached after {} maps ({} sets)",
                    search.node_limit,
                    cat.admitted,
                    entries.len()
                );
                Ok(Outcome::Budget)
            }
        }
        Command::Render {
            witness,
            scale,
            labels,
            out,
        } => {
            let opts = SvgOptions {
                scale,
                labels,
                ..SvgOptions::default()
            };
            emit_text(&out, &render_svg(&load_witness(&witness)?, &opts)?)?;
            Ok(Outcome::Definite)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the input-error code
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Definite) => ExitCode::SUCCESS,
        Ok(Outcome::Unknown) => ExitCode::from(2),
        Ok(Outcome::Budget) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
