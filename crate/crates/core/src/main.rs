use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semigroup_forge::bounds::{BoundContext, BoundId};
use semigroup_forge::enumerate::{self, SweepOptions, TreeOptions, DEFAULT_SPLIT_DEPTH};
use semigroup_forge::report::{
    CheckPayload, CountPayload, ExtremalPayload, Format, InfoPayload, OutputRecord, SweepPayload,
    WitnessPayload,
};
use semigroup_forge::{apery_partition_witness, pf_partition_witness, Error, Semigroup};

#[derive(Parser)]
#[command(name = "semigroup-forge", version)]
#[command(about = "Numerical semigroup invariants, Wilf-type bounds and exhaustive sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, PF(S), Ap(S,g1) and symmetry class
    Info {
        gens: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Evaluate bounds for one semigroup
    Check {
        gens: String,
        /// Comma-separated bound ids or `all`
        #[arg(long, default_value = "all")]
        bounds: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Dump a partition witness
    Witness {
        gens: String,
        #[arg(long, value_parser = ["apery", "pf"])]
        kind: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Exhaustive sweep over all semigroups up to a genus
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "all")]
        bounds: String,
        /// Also construct and verify both partition witnesses
        #[arg(long)]
        witnesses: bool,
        /// Compare the tree against the brute-force gap-set enumeration
        #[arg(long)]
        oracle_crosscheck: bool,
    },
    /// Number of semigroups per genus
    Count {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Least-slack semigroups per bound
    Extremal {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "all")]
        bounds: String,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    max_genus: u32,
    /// Allow a genus above the cap
    #[arg(long)]
    force: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SPLIT_DEPTH)]
    split_depth: u32,
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::WitnessViolation(_) => EXIT_VIOLATION,
            Error::Overflow { .. } | Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Info { gens, format } => {
            let s = parse_semigroup(&gens)?;
            let payload = InfoPayload::new(&s)?;
            let text = match format {
                Format::Text => payload.to_text(),
                Format::Json => OutputRecord::new("info", payload).to_json_line(),
                Format::Csv => return Err(Failure::usage("csv format is not available for info")),
            };
            print!("{text}");
            Ok(0)
        }
        Command::Check {
            gens,
            bounds,
            format,
        } => {
            let s = parse_semigroup(&gens)?;
            let (ids, all) = parse_bounds(&bounds)?;
            let ctx = BoundContext::new(&s)?;
            let reports = ids
                .into_iter()
                .filter(|&id| !(all && id == BoundId::CorollaryAS && !ctx.almost_symmetric))
                .map(|id| ctx.check(id))
                .collect::<Result<Vec<_>, _>>()?;
            let failed = reports.iter().any(|r| !r.holds);
            let payload = CheckPayload {
                gens: s.gens().to_vec(),
                reports,
            };
            print!(
                "{}",
                match format {
                    Format::Text => payload.to_text(),
                    Format::Json => OutputRecord::new("check", payload).to_json_line(),
                    Format::Csv => payload.to_csv(),
                }
            );
            Ok(if failed { EXIT_VIOLATION } else { 0 })
        }
        Command::Witness { gens, kind, format } => {
            let s = parse_semigroup(&gens)?;
            let witness = if kind == "apery" {
                apery_partition_witness(&s)?
            } else {
                pf_partition_witness(&s)?
            };
            let payload = WitnessPayload {
                gens: s.gens().to_vec(),
                witness,
            };
            let text = match format {
                Format::Text => payload.to_text(),
                Format::Json => OutputRecord::new("witness", payload).to_json_line(),
                Format::Csv => {
                    return Err(Failure::usage("csv format is not available for witness"))
                }
            };
            print!("{text}");
            Ok(0)
        }
        Command::Sweep {
            run,
            bounds,
            witnesses,
            oracle_crosscheck,
        } => {
            let tree = tree_options(&run)?;
            let (bounds, _) = parse_bounds(&bounds)?;
            let summary = enumerate::sweep(&SweepOptions {
                max_genus: run.max_genus,
                bounds,
                witnesses,
                tree,
            })?;
            eprintln!(
                "swept {} semigroups in {:.2?}",
                summary.checked, summary.wall_time
            );
            let crosscheck = if oracle_crosscheck {
                Some(enumerate::oracle_crosscheck(run.max_genus, &tree)?)
            } else {
                None
            };
            let mut code = if summary.violations.is_empty() {
                0
            } else {
                EXIT_VIOLATION
            };
            if crosscheck.as_ref().is_some_and(|c| !c.equal) {
                code = EXIT_VIOLATION;
            }
            let payload = SweepPayload {
                summary,
                crosscheck,
            };
            let text = match run.format {
                Format::Text => payload.to_text(),
                Format::Json => OutputRecord::new("sweep", payload).to_json_line(),
                Format::Csv => payload.to_csv(),
            };
            emit(&run, &text)?;
            Ok(code)
        }
        Command::Count { run } => {
            let tree = tree_options(&run)?;
            let counts = enumerate::count_by_genus(run.max_genus, &tree)?;
            let payload = CountPayload {
                max_genus: run.max_genus,
                total: counts.iter().sum(),
                counts,
            };
            let text = match run.format {
                Format::Text => payload.to_text(),
                Format::Json => OutputRecord::new("count", payload).to_json_line(),
                Format::Csv => return Err(Failure::usage("csv format is not available for count")),
            };
            emit(&run, &text)?;
            Ok(0)
        }
        Command::Extremal { run, bounds } => {
            let tree = tree_options(&run)?;
            let (bounds, _) = parse_bounds(&bounds)?;
            let summary = enumerate::sweep(&SweepOptions {
                max_genus: run.max_genus,
                bounds,
                witnesses: false,
                tree,
            })?;
            let code = if summary.violations.is_empty() {
                0
            } else {
                EXIT_VIOLATION
            };
            let payload = ExtremalPayload::new(&summary);
            let text = match run.format {
                Format::Text => payload.to_text(),
                Format::Json => OutputRecord::new("extremal", payload).to_json_line(),
                Format::Csv => payload.to_csv(),
            };
            emit(&run, &text)?;
            Ok(code)
        }
    }
}

fn emit(run: &RunArgs, text: &str) -> Result<(), Failure> {
    match &run.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tree_options(run: &RunArgs) -> Result<TreeOptions, Failure> {
    let mut opts = TreeOptions::from_env();
    if run.max_genus > opts.cap {
        if !run.force {
            return Err(Failure::usage(format!(
                "max genus {} exceeds cap {} (use --force)",
                run.max_genus, opts.cap
            )));
        }
        opts.cap = run.max_genus;
    }
    let workers = run.workers.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    if workers == 0 {
        return Err(Failure::usage("--workers must be at least 1"));
    }
    opts.workers = workers;
    opts.split_depth = run.split_depth;
    Ok(opts)
}

/// Accepts `3,5,7`, `<3,5,7>` and whitespace around tokens.
fn parse_gens(input: &str) -> Result<Vec<i64>, Failure> {
    let trimmed = input.trim();
    let inner = trimmed
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .unwrap_or(trimmed);
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Failure::usage(format!("invalid generator token '{}'", tok.trim())))
        })
        .collect()
}

fn parse_semigroup(input: &str) -> Result<Semigroup, Failure> {
    let gens = parse_gens(input)?;
    Ok(Semigroup::from_generators(&gens)?)
}

/// Returns the requested bounds and whether `all` was used.
fn parse_bounds(input: &str) -> Result<(Vec<BoundId>, bool), Failure> {
    if input.trim().eq_ignore_ascii_case("all") {
        return Ok((BoundId::ALL.to_vec(), true));
    }
    let mut ids = input
        .split(',')
        .map(|tok| tok.parse::<BoundId>().map_err(Failure::usage))
        .collect::<Result<Vec<_>, _>>()?;
    ids.sort();
    ids.dedup();
    Ok((ids, false))
}
