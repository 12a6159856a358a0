use clap::{Args, Parser, Subcommand};
use phel_cli::{Scenario, Session, Verb, DEFAULT_SEED};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Photon between electrons on a line: free, two-body and leaky three-body
/// evolution with verification.
#[derive(Parser)]
#[command(name = "phel", version)]
struct Cli {
    #[command(subcommand)]
    verb: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Worker threads for the compute modules (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed of the randomized property checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario's mode.
    Run { scenario: Option<PathBuf> },
    /// Run the verification suite and write report.csv.
    Verify { scenario: Option<PathBuf> },
    /// Run the ε ladder and write convergence.csv and report.csv.
    Converge { scenario: Option<PathBuf> },
    /// Print the scenario after default resolution.
    Inspect { scenario: Option<PathBuf> },
}

const INPUT_ERROR: u8 = 2;

fn load(path: Option<&Path>) -> Result<Scenario, String> {
    match path {
        Some(p) => Scenario::load(p).map_err(|e| e.to_string()),
        None => Ok(Scenario::shipped()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verb, path) = match &cli.verb {
        Command::Run { scenario } => (Some(Verb::Run), scenario),
        Command::Verify { scenario } => (Some(Verb::Verify), scenario),
        Command::Converge { scenario } => (Some(Verb::Converge), scenario),
        Command::Inspect { scenario } => (None, scenario),
    };
    let scenario = match load(path.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    let Some(verb) = verb else {
        print!("{}", scenario.to_toml());
        return ExitCode::SUCCESS;
    };
    let g = &cli.global;
    if g.threads == Some(0) {
        eprintln!("error: --threads must be >= 1");
        return ExitCode::from(INPUT_ERROR);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = g.threads {
        pool = pool.num_threads(n);
    }
    if let Err(e) = pool.build_global() {
        eprintln!("error: cannot start worker threads: {e}");
        return ExitCode::from(INPUT_ERROR);
    }
    if let Err(e) = std::fs::create_dir_all(&g.out) {
        eprintln!("error: cannot create {}: {e}", g.out.display());
        return ExitCode::from(INPUT_ERROR);
    }
    eprintln!("scenario {} (hash {})", path.as_deref().map_or("<shipped>".into(), |p| p.display().to_string()), scenario.hash());
    for line in scenario.to_toml().lines() {
        eprintln!("  {line}");
    }
    let mut session = Session::new(&scenario, &g.out, rayon::current_num_threads(), g.seed, scenario.run.mode);
    session.log = Box::new(|line| eprintln!("{line}"));
    let ok = session.execute(verb);
    let r = &session.record;
    for c in &session.checks {
        println!("{c}");
    }
    if let Some(e) = &r.error {
        eprintln!("error: {e}");
        eprintln!("outputs in {} are incomplete", g.out.display());
    }
    eprintln!("wrote {} to {}", r.manifest.join(", "), g.out.display());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
