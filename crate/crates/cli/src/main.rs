use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use factorial_ratio::{SearchConfig, SporadicCatalog};
use fratio_cli::{
    cmd_chebyshev, cmd_check, cmd_classify, cmd_convert, cmd_hypergeom, cmd_search, load_catalog,
    render_pretty, Direction, Outcome, SearchOptions, EXIT_INPUT,
};

#[derive(Parser)]
#[command(
    name = "fratio",
    version,
    about = "Integral factorial ratios: check, classify, search"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether u_n(a, b) is an integer for every n.
    Check {
        /// Params document; `-` or omitted reads stdin.
        input: Option<PathBuf>,
        /// Also print u_n for this n.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Tag an integral ratio as a family member or a sporadic entry.
    Classify {
        input: Option<PathBuf>,
        /// Catalog file to use instead of the bundled sporadic list.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Convert between factorial parameters and step-function moduli.
    Convert {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "to-step")]
        direction: DirectionArg,
    },
    /// Enumerate integral ratios with L = K + 1 and write a catalog.
    Search {
        #[arg(long, default_value_t = 4)]
        max_terms: usize,
        #[arg(long, default_value_t = 30)]
        max_entry: u64,
        #[arg(long, default_value_t = 60)]
        max_sum: u64,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, default_value = "catalog.jsonl")]
        out: PathBuf,
        /// Persist finished shards here and reuse them on restart.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        /// Write only the sporadic records.
        #[arg(long)]
        sporadic_only: bool,
    },
    /// Hypergeometric parameters of the generating function.
    Hypergeom {
        input: Option<PathBuf>,
        /// Also print the scale constant as a reduced fraction.
        #[arg(long)]
        expand: bool,
    },
    /// Chebyshev-style prime counting constants.
    Chebyshev { input: Option<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    ToStep,
    ToFactorial,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Outcome> {
    let fail = |e: io::Error, what: &str| Outcome {
        exit_code: EXIT_INPUT,
        report: serde_json::json!({ "error": format!("cannot read {what}: {e}") }),
    };
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| fail(e, &p.display().to_string()))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| fail(e, "stdin"))?;
            Ok(s)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { input, n } => match read_input(input) {
            Ok(text) => cmd_check(&text, *n),
            Err(o) => o,
        },
        Command::Classify { input, catalog, n } => {
            let loaded;
            let cat = match catalog {
                Some(path) => match load_catalog(path) {
                    Ok(c) => {
                        loaded = c;
                        &loaded
                    }
                    Err(o) => return o,
                },
                None => SporadicCatalog::builtin(),
            };
            match read_input(input) {
                Ok(text) => cmd_classify(&text, cat, *n),
                Err(o) => o,
            }
        }
        Command::Convert { input, direction } => match read_input(input) {
            Ok(text) => cmd_convert(
                &text,
                match direction {
                    DirectionArg::ToStep => Direction::ToStep,
                    DirectionArg::ToFactorial => Direction::ToFactorial,
                },
            ),
            Err(o) => o,
        },
        Command::Search {
            max_terms,
            max_entry,
            max_sum,
            shards,
            out,
            checkpoint_dir,
            sporadic_only,
        } => cmd_search(&SearchOptions {
            config: SearchConfig {
                max_terms: *max_terms,
                max_entry: *max_entry,
                max_sum: *max_sum,
                shards: *shards,
            },
            out: Some(out.clone()),
            checkpoint_dir: checkpoint_dir.clone(),
            sporadic_only: *sporadic_only,
        }),
        Command::Hypergeom { input, expand } => match read_input(input) {
            Ok(text) => cmd_hypergeom(&text, *expand),
            Err(o) => o,
        },
        Command::Chebyshev { input } => match read_input(input) {
            Ok(text) => cmd_chebyshev(&text),
            Err(o) => o,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if cli.pretty {
        print!("{}", render_pretty(&outcome.report));
    } else {
        println!("{}", outcome.report);
    }
    if let Some(e) = outcome.report.get("error") {
        eprintln!("fratio: {}", e.as_str().unwrap_or_default());
    }
    ExitCode::from(outcome.exit_code as u8)
}
