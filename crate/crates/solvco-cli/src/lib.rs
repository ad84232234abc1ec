//! Command-line interface for the solvmanifold calculator: exact Betti and
//! Hodge tables, hard Lefschetz verdicts, and regeneration of the reference
//! tables and verification reports.
//!
//! Exit codes: `0` success, `2` input error, `3` mathematical check failure,
//! `4` internal assertion.  Every command is deterministic — identical
//! descriptors produce byte-identical JSON up to the timing metadata field.

pub mod betti;
pub mod descriptor;
pub mod document;
pub mod error;
pub mod examples;
pub mod hlc;
pub mod markdown;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::descriptor::ModelDescriptor;
use crate::document::ResultDocument;
use crate::error::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "solvco",
    version,
    about = "Exact cohomology, symplectic and lattice checks for two families of solvmanifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers by two independent routes, with representative tables.
    Betti(BettiArgs),
    /// Hard Lefschetz verification for a symplectic form on the model.
    Hlc(HlcArgs),
    /// Regenerate the reference tables, figures and verification reports.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, default_value = "both", value_parser = ["json", "md", "both"])]
    format: String,
    /// Directory to write `<command>.json` / `<command>.md` into; stdout
    /// when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker thread count (affects wall time only, never results).
    #[arg(long)]
    parallel: Option<usize>,
}

#[derive(Args)]
struct BettiArgs {
    /// Path to the model descriptor JSON file.
    descriptor: PathBuf,
    /// Restrict the representative table to a single degree.
    #[arg(long)]
    degree: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HlcArgs {
    /// Path to the model descriptor JSON file.
    descriptor: PathBuf,
    /// Symplectic form: "default", "example-5.3", or inline JSON overrides.
    #[arg(long)]
    omega: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Directory the reference artifacts are written into.
    out_dir: PathBuf,
    /// Worker thread count (affects wall time only, never results).
    #[arg(long)]
    parallel: Option<usize>,
}

/// Parses the process arguments and runs the requested command, returning
/// the process exit code.
pub fn run_cli() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Betti(args) => with_pool(args.output.parallel, || betti_command(&args)),
        Command::Hlc(args) => with_pool(args.output.parallel, || hlc_command(&args)),
        Command::Examples(args) => with_pool(args.parallel, || examples_command(&args)),
    }
}

/// Runs `f`, inside a dedicated rayon pool when a thread count was given.
fn with_pool<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> CliResult<T> + Send,
) -> CliResult<T> {
    match threads {
        None => f(),
        Some(0) => Err(CliError::input("--parallel must be at least 1")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Internal(format!("cannot build thread pool: {e}")))?
            .install(f),
    }
}

fn read_descriptor(path: &Path) -> CliResult<ModelDescriptor> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io("read", path, &e))?;
    ModelDescriptor::from_json(&text)
}

fn betti_command(args: &BettiArgs) -> CliResult<i32> {
    let started = Instant::now();
    let descriptor = read_descriptor(&args.descriptor)?;
    let mut outcome = betti::compute(&descriptor, args.degree, true)?;
    outcome.doc.meta.timing_ms = Some(started.elapsed().as_millis() as u64);
    emit(&args.output, "betti", &outcome.doc, &outcome.markdown)?;
    Ok(0)
}

fn hlc_command(args: &HlcArgs) -> CliResult<i32> {
    let started = Instant::now();
    let descriptor = read_descriptor(&args.descriptor)?;
    let choice = hlc::parse_omega(args.omega.as_deref())?;
    let mut outcome = hlc::compute(&descriptor, &choice)?;
    outcome.doc.meta.timing_ms = Some(started.elapsed().as_millis() as u64);
    emit(&args.output, "hlc", &outcome.doc, &outcome.markdown)?;
    if outcome.holds {
        Ok(0)
    } else {
        let k = outcome.first_failing.expect("a failing power exists");
        eprintln!("error: the hard Lefschetz condition fails: L^{k} is not bijective");
        Ok(3)
    }
}

fn examples_command(args: &ExamplesArgs) -> CliResult<i32> {
    let written = examples::run(&args.out_dir)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(0)
}

/// Writes or prints the JSON and Markdown renderings per the output flags.
fn emit(
    output: &OutputArgs,
    stem: &str,
    doc: &ResultDocument,
    markdown: &str,
) -> CliResult<()> {
    let json = document::to_json(doc);
    let want_json = output.format == "json" || output.format == "both";
    let want_md = output.format == "md" || output.format == "both";
    match &output.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::io("create directory", dir, &e))?;
            if want_json {
                let path = dir.join(format!("{stem}.json"));
                fs::write(&path, &json).map_err(|e| CliError::io("write", &path, &e))?;
                println!("wrote {}", path.display());
            }
            if want_md {
                let path = dir.join(format!("{stem}.md"));
                fs::write(&path, markdown).map_err(|e| CliError::io("write", &path, &e))?;
                println!("wrote {}", path.display());
            }
        }
        None => {
            if want_json {
                print!("{json}");
            }
            if want_json && want_md {
                println!("---");
            }
            if want_md {
                print!("{markdown}");
            }
        }
    }
    Ok(())
}
