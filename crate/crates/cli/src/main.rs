use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use walkspec::enumerate::{census_at, CensusKind, SearchOptions};
use walkspec::planar::catalog::{load_catalog, load_catalog_from, verify_catalog, CatalogEntry};
use walkspec::reproduce::{reproduce, Target};
use walkspec::Error;

mod input;
mod report;

use report::Render;

#[derive(Parser, Debug)]
#[command(name = "walkspec", version, about = "Cospectral vertices, walk-regular graphs and polyhedral audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (json by default; dot for `catalog export`).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,

    /// Maximum generation-tree nodes per search level.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    /// Write output here instead of stdout (a directory for `catalog export`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report cospectral blocks, orbits and walk-regularity for each graph in a file.
    Check {
        /// graph6 lines or JSON `{n, edges, loops}` (object or array); `-` reads stdin.
        file: PathBuf,
    },
    /// Rerun a published result and compare with the expected numbers.
    Reproduce {
        #[arg(value_parser = parse_target)]
        target: Target,
    },
    /// Search all graphs on N vertices for cospectral, non-similar vertices.
    Search {
        #[arg(long = "n")]
        n: usize,
        /// Only D-regular graphs.
        #[arg(long)]
        regular: Option<usize>,
        /// Look for walk-regular graphs that are not vertex-transitive instead.
        #[arg(long)]
        walk_regular: bool,
        /// Only connected graphs.
        #[arg(long)]
        connected: bool,
    },
    /// Audit or export the polyhedral catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the edge complement of each graph in a file.
    Complement { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Check every entry, the prism and antiprism families, and the walk constants.
    Verify {
        /// Largest prism / antiprism parameter audited.
        #[arg(long, default_value_t = 12)]
        m_max: usize,
        /// Directory holding catalog.json and catalog.sha256.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
    /// Write one DOT file per entry.
    Export {
        /// Export only this entry.
        #[arg(long)]
        entry: Option<String>,
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    G6,
    Dot,
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command: rendered output and whether all checks passed.
struct Outcome {
    text: String,
    passed: bool,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded(_) => 3,
        Error::AuditFailure { .. } | Error::HypothesisUnmet(_) => 1,
        _ => 2,
    }
}

fn render<T: Render>(value: &T, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value).expect("reports serialise") + "\n"),
        Format::Text => Ok(value.text()),
        Format::G6 => value.g6(),
        Format::Dot => value.dot(),
    }
}

fn load(data_dir: &Option<PathBuf>) -> Result<Vec<CatalogEntry>, Error> {
    match data_dir {
        Some(dir) => load_catalog_from(dir),
        None => load_catalog(),
    }
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let opts = SearchOptions { budget: cli.budget };
    let format = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Check { file } => {
            let graphs = input::read_graphs(file)?;
            let report = report::check(&graphs);
            Ok(Outcome { text: render(&report, format)?, passed: true })
        }
        Command::Reproduce { target } => {
            let r = reproduce(*target, &opts)?;
            Ok(Outcome { passed: r.passed, text: render(&r, format)? })
        }
        Command::Search { n, regular, walk_regular, connected } => {
            let kind = if *walk_regular { CensusKind::WalkRegularNonVt } else { CensusKind::NonSimilarCospectral };
            let r = census_at(kind, *n, *regular, *connected, &opts)?;
            Ok(Outcome { text: render(&r, format)?, passed: true })
        }
        Command::Catalog { action: CatalogAction::Verify { m_max, data_dir } } => {
            let r = verify_catalog(&load(data_dir)?, *m_max)?;
            Ok(Outcome { passed: r.passed, text: render(&r, format)? })
        }
        Command::Catalog { action: CatalogAction::Export { entry, data_dir } } => {
            let mut entries = load(data_dir)?;
            if let Some(name) = entry {
                entries.retain(|e| &e.name == name);
                if entries.is_empty() {
                    return Err(Error::Parse(format!("no catalog entry named {name:?}")));
                }
            }
            match (&cli.out, entry) {
                (None, Some(_)) => Ok(Outcome { text: entries[0].to_dot(), passed: true }),
                (out, _) => {
                    let dir = out.clone().unwrap_or_else(|| PathBuf::from("."));
                    std::fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
                    let mut listing = String::new();
                    for e in &entries {
                        let path = dir.join(format!("{}.dot", file_stem(&e.name)));
                        write_file(&path, &e.to_dot())?;
                        listing.push_str(&format!("{}\n", path.display()));
                    }
                    Ok(Outcome { text: listing, passed: true })
                }
            }
        }
        Command::Complement { file } => {
            let graphs = input::read_graphs(file)?;
            let complements = graphs.iter().map(|g| g.complement()).collect::<Result<Vec<_>, _>>()?;
            let format = cli.format.unwrap_or(Format::G6);
            Ok(Outcome { text: render(&report::GraphList(complements), format)?, passed: true })
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), reason: e.to_string() }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global().expect("thread pool starts once");
    }
    let exporting = matches!(cli.command, Command::Catalog { action: CatalogAction::Export { .. } });
    match run(&cli) {
        Ok(outcome) => {
            let written = match (&cli.out, exporting) {
                (Some(path), false) => write_file(path, &outcome.text),
                _ => {
                    let mut stdout = std::io::stdout().lock();
                    stdout.write_all(outcome.text.as_bytes()).map_err(|e| io_error(Path::new("<stdout>"), e))
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Ok(()) if outcome.passed => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
