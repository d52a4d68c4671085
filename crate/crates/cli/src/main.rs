use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod report;
mod verify;

use config::{ArityRange, CliError};

#[derive(Parser, Debug)]
#[command(name = "operad-forge", version, about = "Exact computations with free algebras given by multilinear identities")]
struct Cli {
    /// Suppress progress output on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Builtin presentation name.
    #[arg(long)]
    builtin: Option<String>,
    /// Presentation file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct OtherSource {
    /// Builtin presentation to compare against.
    #[arg(long)]
    with_builtin: Option<String>,
    /// Presentation file to compare against.
    #[arg(long)]
    with_file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variety {
    #[value(name = "nov_s")]
    NovS,
    #[value(name = "bicom_s")]
    BicomS,
    #[value(name = "dernov_dual")]
    DernovDual,
    Novikov,
    Bicommutative,
    Dernov,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpMap {
    Identity,
    Opposite,
    /// Try the identity, then the opposite.
    Any,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmbedMap {
    /// Two operations: a≺b ↦ a·d∂b, a≻b ↦ ∂a·db.
    Tau,
    /// One operation: a∘b ↦ a·db.
    TauNov,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    TauDernov,
    Split,
    IndependenceBicomDual,
    Census,
    SelfDuality,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of multilinear components.
    Dim {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "1..4")]
        arity: ArityRange,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Allow arities above the default cap.
        #[arg(long)]
        force: bool,
    },
    /// Koszul dual of a quadratic presentation.
    Dual {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Normal form of a term.
    Nf {
        #[arg(long, value_enum)]
        variety: Variety,
        term: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dimension table over several presentations.
    Table {
        /// Presentations to include (default: all builtins).
        #[arg(long = "builtin")]
        builtins: Vec<String>,
        #[arg(long, default_value = "1..4")]
        arity: ArityRange,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
    /// Whether two presentations generate the same relations.
    Eqv {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        other: OtherSource,
        #[arg(long, value_enum, default_value = "any")]
        map: OpMap,
        /// Largest arity compared.
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
    /// Image of a term in differential polynomials.
    Embed {
        #[arg(long, value_enum, default_value = "tau")]
        map: EmbedMap,
        term: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Largest arity checked (suite default if omitted).
        #[arg(long)]
        arity: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let progress = !cli.quiet;
    match cli.command {
        Command::Dim { source, arity, format, force } => commands::dim(&source, arity, format, force, progress),
        Command::Dual { source, format } => commands::dual(&source, format),
        Command::Nf { variety, term, format } => commands::nf(variety, &term, format),
        Command::Table { builtins, arity, format, force } => commands::table(&builtins, arity, format, force, progress),
        Command::Eqv { source, other, map, arity, format, force } => {
            commands::eqv(&source, &other, map, arity, format, force)
        }
        Command::Embed { map, term, format } => commands::embed(map, &term, format),
        Command::Verify { check, arity, format, force } => verify::run(check, arity, format, force),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(msg) = e.message() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(e.code())
        }
    }
}
