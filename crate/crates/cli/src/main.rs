use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rzk_core::exhaustive::{self, ExhaustiveOptions};
use rzk_core::invariants::CollapseOptions;
use rzk_core::oracle::DEFAULT_CELL_CAP;
use rzk_core::problem::parse_problem;
use rzk_core::report::{self, Format, RunOptions};
use rzk_core::Error;

#[derive(Parser)]
#[command(name = "rzk", version, about = "Equivariant invariants of real moment-angle complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one problem file.
    Analyze {
        file: PathBuf,
        /// Cross-check against the cellular model of RZ_K.
        #[arg(long)]
        oracle: bool,
        /// Search for a dimension-lowering collapse of K_supp(G), optionally
        /// with a per-run step budget.
        #[arg(long, value_name = "BUDGET", num_args = 0..=1, require_equals = true)]
        collapse: Option<Option<usize>>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_CELL_CAP)]
        max_cells: u64,
        /// Seed for randomized collapse restarts.
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run the property suites over every complex on at most N vertices.
    Exhaustive {
        #[arg(long, value_name = "N")]
        max_m: usize,
        /// Largest vertex count for which every (complex, subgroup) pair is analyzed.
        #[arg(long, value_name = "N", default_value_t = 4)]
        pairs_max_m: usize,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_CELL_CAP)]
        max_cells: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Returns the full output so nothing is printed on error.
fn run(command: Command) -> Result<(String, bool), Error> {
    match command {
        Command::Analyze {
            file,
            oracle,
            collapse,
            max_cells,
            seed,
            format,
        } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::MalformedInput {
                location: file.display().to_string(),
                message: e.to_string(),
            })?;
            let problem = parse_problem(&text)?;
            let opts = RunOptions {
                oracle,
                collapse: collapse.map(|budget| CollapseOptions {
                    budget,
                    seed,
                    ..CollapseOptions::default()
                }),
                max_cells,
                ..RunOptions::default()
            };
            let report = report::run_analyze(&problem, &opts)?;
            Ok((report.render(format.into()), true))
        }
        Command::Exhaustive {
            max_m,
            pairs_max_m,
            max_cells,
            format,
        } => {
            let opts = ExhaustiveOptions {
                pair_max_m: pairs_max_m,
                cell_cap: max_cells,
                ..ExhaustiveOptions::default()
            };
            let report = exhaustive::run_exhaustive(max_m, &opts)?;
            let out = match format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            Ok((out, report.all_passed()))
        }
    }
}
