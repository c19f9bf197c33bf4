use clap::{Args, Parser, Subcommand};
use perverse_kit::scenario::{self, Aggregate, FileResult, Outcome, ScenarioError};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Scenario runner for the exact-arithmetic decomposition toolkit.
#[derive(Parser)]
#[command(name = "perverse-kit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file of any kind.
    Run(RunArgs),
    /// Run every scenario in a directory and aggregate the results.
    CheckAll(CheckAllArgs),
    /// Contraction criterion for a curve configuration.
    Grauert(RunArgs),
    /// Fiber-cycle quotient criterion.
    Zariski(RunArgs),
    /// Curve-fibration germ decomposition.
    Fibration(RunArgs),
    /// Intersection cohomology stalk from link data.
    IcStalk(RunArgs),
    /// Circle-bundle cohomology, optionally chained into the stalk.
    Gysin(RunArgs),
    /// Surface contraction germ splitting.
    GermDecompose(RunArgs),
    /// Perverse truncation of a point germ.
    GermTruncate(RunArgs),
    /// Koszul cohomology of a normal-crossing local system.
    Koszul(RunArgs),
    /// Hard Lefschetz verification for a graded package.
    HlCheck(RunArgs),
    /// Perverse filtration of a threefold resolution package.
    PerverseFiltration(RunArgs),
    /// Algebraic limit of pencil kernels.
    LimitPrimitives(RunArgs),
    /// Two-operator primitive decomposition with orthogonality.
    EtalDecomposition(RunArgs),
    /// Projectors realizing intersection cohomology.
    Motive(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file.
    path: PathBuf,
    /// Write the machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Invert the exit code: a failing scenario exits 0, a passing one 2.
    #[arg(long)]
    expect_fail: bool,
    /// Suppress the human-readable report.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct CheckAllArgs {
    /// Directory of scenario files.
    dir: PathBuf,
    /// Write the aggregate report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Worker threads; scenarios are independent.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Suppress the per-file listing.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(args) => run_one(&args, None),
        Command::CheckAll(args) => run_all(&args),
        Command::Grauert(args) => run_one(&args, Some("grauert")),
        Command::Zariski(args) => run_one(&args, Some("zariski")),
        Command::Fibration(args) => run_one(&args, Some("fibration")),
        Command::IcStalk(args) => run_one(&args, Some("ic_stalk")),
        Command::Gysin(args) => run_one(&args, Some("gysin")),
        Command::GermDecompose(args) => run_one(&args, Some("germ_decompose")),
        Command::GermTruncate(args) => run_one(&args, Some("germ_truncate")),
        Command::Koszul(args) => run_one(&args, Some("koszul")),
        Command::HlCheck(args) => run_one(&args, Some("hl_check")),
        Command::PerverseFiltration(args) => run_one(&args, Some("perverse_filtration")),
        Command::LimitPrimitives(args) => run_one(&args, Some("limit_primitives")),
        Command::EtalDecomposition(args) => run_one(&args, Some("etal_decomposition")),
        Command::Motive(args) => run_one(&args, Some("motive")),
    };
    ExitCode::from(code)
}

fn run_one(args: &RunArgs, want_kind: Option<&str>) -> u8 {
    let started = Instant::now();
    let outcome = match scenario::run_file(&args.path) {
        Ok(o) => o,
        Err(e) => return report_error(e),
    };
    if let Some(kind) = want_kind {
        if outcome.kind != kind {
            return report_error(ScenarioError::Schema(format!(
                "scenario has kind {:?}, this subcommand runs {kind:?}",
                outcome.kind
            )));
        }
    }
    let timing = started.elapsed().as_millis();
    if let Some(path) = &args.json {
        let report = outcome.report(timing);
        if let Err(e) = std::fs::write(path, format!("{report:#}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return 64;
        }
    }
    if !args.quiet {
        print_outcome(&outcome);
    }
    let code = outcome.exit_code();
    let code = if args.expect_fail {
        match code {
            0 => 2,
            2 => 0,
            other => other,
        }
    } else {
        code
    };
    code as u8
}

fn run_all(args: &CheckAllArgs) -> u8 {
    let aggregate = match scenario::check_all(&args.dir, args.threads) {
        Ok(a) => a,
        Err(e) => return report_error(e),
    };
    if let Some(path) = &args.json {
        let report = aggregate.report();
        if let Err(e) = std::fs::write(path, format!("{report:#}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return 64;
        }
    }
    if !args.quiet {
        print_aggregate(&aggregate);
    }
    aggregate.exit_code() as u8
}

fn report_error(e: ScenarioError) -> u8 {
    eprintln!("error: {e}");
    e.exit_code() as u8
}

fn print_outcome(outcome: &Outcome) {
    println!("scenario {} ({})", outcome.name, outcome.kind);
    if !outcome.description.is_empty() {
        println!("  {}", outcome.description);
    }
    for check in &outcome.checks {
        let details = if check.details.is_empty() {
            String::new()
        } else {
            format!("  {}", check.details)
        };
        println!("  [{}] {}{details}", check.status, check.id);
    }
    for (name, table) in &outcome.tables {
        println!("  {name}: {table}");
    }
    println!("status: {}", outcome.status());
}

fn print_aggregate(aggregate: &Aggregate) {
    for (file, result) in &aggregate.entries {
        match result {
            FileResult::Evaluated(o) => {
                let marker = if o.matches_expected() { "ok" } else { "MISMATCH" };
                println!(
                    "{file}: {} (expected {}) {marker}",
                    o.status(),
                    o.expected
                );
            }
            FileResult::Failed(e) => println!("{file}: error {e}"),
        }
    }
    let report = aggregate.report();
    println!(
        "{} scenario(s), {}; hash {}",
        aggregate.entries.len(),
        if aggregate.all_ok() { "all ok" } else { "with mismatches" },
        report["content_hash"].as_str().unwrap_or("")
    );
}
