mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use commands::{ClassArg, ModalitiesArgs, OpName, Report};
use input::CliResult;

/// Finite meet-complemented lattices with necessity and possibility.
///
/// Structures are given as `catalog:NAME` or as a path to a structure file.
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "modlat", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file, one catalog entry, or (with no argument) the whole catalog.
    Validate { target: Option<String> },
    /// Elements, covers, atoms, coatoms and distributivity of a structure.
    #[command(group(ArgGroup::new("src").required(true).args(["lattice", "poset"])))]
    Info {
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        poset: Option<String>,
    },
    /// Operator tables.
    Op {
        #[arg(long)]
        lattice: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "neg,box,diamond,D,B")]
        ops: Vec<OpName>,
    },
    /// Operator totality flags and class memberships.
    Classify {
        #[arg(long)]
        lattice: String,
    },
    /// Run a law suite, or a single law, on an algebra.
    #[command(group(ArgGroup::new("what").required(true).args(["suite", "ineq"])))]
    Laws {
        #[arg(long)]
        lattice: String,
        /// Suite id, or `all`.
        #[arg(long)]
        suite: Option<String>,
        /// A single law, e.g. "Box x <= Box (Box x)".
        #[arg(long)]
        ineq: Option<String>,
        /// Also check the suite's documented counterexamples located in this algebra.
        #[arg(long, requires = "suite")]
        witnesses: bool,
    },
    /// Classify modal words over a family of algebras.
    #[command(group(ArgGroup::new("fam").required(true).multiple(true).args(["family", "class"])))]
    Modalities {
        /// Comma-separated structures.
        #[arg(long)]
        family: Option<String>,
        /// Restrict the family to a class; alone, use every catalog algebra in it.
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        /// Letters: N (¬), B (□), D (◇), U (dual negation D).
        #[arg(long, default_value = "NB")]
        alphabet: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Keep only words with at most this many □.
        #[arg(long)]
        max_box: Option<usize>,
        /// Write the class Hasse diagram as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the upset algebra of a poset as a lattice file.
    Upalg {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a poset is an S-poset.
    Sposet {
        #[arg(long)]
        poset: String,
    },
    /// Look for a counterexample among catalog algebras and small upset algebras.
    Search {
        #[arg(long)]
        ineq: String,
        #[arg(long, default_value_t = 5)]
        max_poset: usize,
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        /// Skip the catalog and scan generated algebras only.
        #[arg(long)]
        no_catalog: bool,
    },
    /// Built-in structures.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Graphviz Hasse diagram of a structure.
    #[command(group(ArgGroup::new("src").required(true).args(["lattice", "poset"])))]
    Dot {
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        poset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names, kinds and sizes.
    List,
    /// Print an entry in the structure file format.
    Dump { name: String },
}

fn run(cmd: Command) -> CliResult<Report> {
    match cmd {
        Command::Validate { target } => commands::validate(target.as_deref()),
        Command::Info { lattice, poset } => commands::info(&lattice.or(poset).expect("required group")),
        Command::Op { lattice, ops } => commands::op(&lattice, &ops),
        Command::Classify { lattice } => commands::classify(&lattice),
        Command::Laws {
            lattice,
            suite,
            ineq,
            witnesses,
        } => match (suite, ineq) {
            (Some(s), _) => commands::laws_suite(&lattice, &s, witnesses),
            (None, Some(i)) => commands::laws_ineq(&lattice, &i),
            (None, None) => unreachable!("required group"),
        },
        Command::Modalities {
            family,
            class,
            alphabet,
            max_len,
            max_box,
            dot,
        } => commands::modalities(ModalitiesArgs {
            family: family.as_deref(),
            class,
            alphabet: &alphabet,
            max_len,
            max_box,
            dot: dot.as_deref(),
        }),
        Command::Upalg { poset, out } => commands::upalg(&poset, out.as_deref()),
        Command::Sposet { poset } => commands::sposet(&poset),
        Command::Search {
            ineq,
            max_poset,
            class,
            no_catalog,
        } => commands::search(&ineq, max_poset, class, !no_catalog),
        Command::Catalog(CatalogCommand::List) => Ok(commands::catalog_list()),
        Command::Catalog(CatalogCommand::Dump { name }) => commands::catalog_dump(&name),
        Command::Dot { lattice, poset, out } => {
            commands::dot(&lattice.or(poset).expect("required group"), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("valid JSON"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
