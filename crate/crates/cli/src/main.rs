//! `defset`: construct, verify, inspect and search defining sets of
//! generalized Latin squares.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::SearchArgs;
use report::{CliError, CommandReport, EXIT_CODES_HELP};

#[derive(Parser)]
#[command(name = "defset", version, about, after_help = EXIT_CODES_HELP)]
struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the known uniquely completable partial colourings.
    #[command(after_help = EXIT_CODES_HELP)]
    Construct {
        /// two-n-minus-one (n even), five-eight (n = 5) or block-ten-m (n divisible by 10).
        kind: String,
        /// Order of the square; defaults to the smallest the construction allows.
        #[arg(long)]
        n: Option<usize>,
        /// Write the grid here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a grid has no, one or several completions.
    #[command(after_help = EXIT_CODES_HELP)]
    Verify {
        path: PathBuf,
        /// Stop after this many completions.
        #[arg(long, default_value_t = 2)]
        cap: usize,
        /// Abort after this many search nodes.
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Write the unique completion here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Look for empty-cell patterns that rule out a unique completion.
    #[command(after_help = EXIT_CODES_HELP)]
    Detect { path: PathBuf },
    /// Colour forced cells repeatedly and print each step.
    #[command(after_help = EXIT_CODES_HELP)]
    Propagate {
        path: PathBuf,
        /// Write the propagated grid here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the smallest defining set over all n x n squares on k colours.
    #[command(after_help = EXIT_CODES_HELP)]
    Search {
        n: usize,
        k: usize,
        /// Refuse searches whose estimated work exceeds this.
        #[arg(long, default_value_t = 1e10)]
        budget: f64,
        /// Write the witness grid here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Examine every square instead of one per symmetry class.
        #[arg(long)]
        no_symmetry: bool,
        /// Do not skip subsets containing blocking patterns.
        #[arg(long)]
        no_prune: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Verify { .. } => "verify",
            Command::Detect { .. } => "detect",
            Command::Propagate { .. } => "propagate",
            Command::Search { .. } => "search",
        }
    }

    fn run(self) -> Result<CommandReport, CliError> {
        match self {
            Command::Construct { kind, n, output } => {
                commands::construct(&kind, n, output.as_deref())
            }
            Command::Verify {
                path,
                cap,
                budget_nodes,
                output,
            } => commands::verify(&path, cap, budget_nodes, output.as_deref()),
            Command::Detect { path } => commands::detect(&path),
            Command::Propagate { path, output } => commands::propagate(&path, output.as_deref()),
            Command::Search {
                n,
                k,
                budget,
                output,
                threads,
                no_symmetry,
                no_prune,
            } => commands::search(&SearchArgs {
                n,
                k,
                budget,
                threads,
                no_symmetry,
                no_prune,
                out: output,
            }),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let report = match cli.command.run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            CommandReport::failed(name, String::new(), &e)
        }
    };
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.text),
    }
    ExitCode::from(report.exit_code)
}
