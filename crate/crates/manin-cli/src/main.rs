use clap::{Args, Parser, Subcommand, ValueEnum};
use manin::identities::{fuzz, registry, run_suite, FuzzConfig, Report, SuiteConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "manin", version, about = "Verify identities for Manin matrices by exact computation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a suite of identity checks.
    Run(RunArgs),
    /// Check structural invariants on random Manin matrices.
    Fuzz(FuzzArgs),
    /// List the registered checks.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// `all` or a comma-separated list of check names.
    #[arg(long)]
    suite: Option<String>,
    /// A single check; may be repeated.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Ring family for checks that accept one: manin_generic, free,
    /// commutative or cartier_foata.
    #[arg(long)]
    ring: Option<String>,
    /// Run only this size instead of the suite's size range.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    /// Truncation degree for series checks.
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance variant, e.g. `m=3` or `capelli(2,2,2)`.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory with golden residual files overriding the built-in ones.
    #[arg(long)]
    golden_dir: Option<PathBuf>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Record wall time per check. Timed output is not reproducible.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// rank_one, closure_rank_one or closure_cartier_foata.
    #[arg(long)]
    kind: Option<String>,
    /// is_manin, column_antisymmetry or multiplicativity.
    #[arg(long)]
    invariant: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn selection(args: &RunArgs) -> Option<Vec<String>> {
    let mut names: Vec<String> = Vec::new();
    match args.suite.as_deref() {
        None | Some("all") => {}
        Some(list) => names.extend(list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty())),
    }
    names.extend(args.checks.iter().cloned());
    if names.is_empty() {
        None
    } else {
        Some(names)
    }
}

fn emit(reports: &[Report], format: Format) -> ExitCode {
    let failed = reports.iter().filter(|r| !r.passed()).count();
    match format {
        Format::Json => {
            let v: Vec<_> = reports.iter().map(Report::to_json).collect();
            println!("{}", serde_json::to_string_pretty(&v).expect("reports serialize"));
        }
        Format::Text => {
            for r in reports {
                println!("{}", r.to_text());
            }
            println!("{} checks, {} passed, {} failed", reports.len(), reports.len() - failed, failed);
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage_error(e: manin::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn run(args: RunArgs) -> ExitCode {
    let cfg = SuiteConfig {
        checks: selection(&args),
        n: args.n,
        n_max: args.n_max,
        variant: args.variant.clone(),
        degree: args.degree,
        seed: args.seed,
        ring: args.ring.clone(),
        golden_dir: args.golden_dir.clone(),
        jobs: args.jobs,
        timings: args.timings,
    };
    match run_suite(&cfg) {
        Ok(reports) => emit(&reports, args.format),
        Err(e) => usage_error(e),
    }
}

fn run_fuzz(args: FuzzArgs) -> ExitCode {
    let cfg = FuzzConfig {
        n: args.n,
        count: args.count,
        seed: args.seed,
        kind: args.kind,
        invariant: args.invariant,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| fuzz(&cfg)) {
        Ok(reports) => emit(&reports, args.format),
        Err(e) => usage_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run(args) => run(args),
        Cmd::Fuzz(args) => run_fuzz(args),
        Cmd::List => {
            for def in registry() {
                println!("{:<24} {}", def.name, def.about);
            }
            ExitCode::SUCCESS
        }
    }
}
