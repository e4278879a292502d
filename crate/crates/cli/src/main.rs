//! `teamgame` command-line tool.
//!
//! Every subcommand prints one JSON document on stdout (sweeps can also write
//! a CSV file). Exit codes: 0 success, 1 a verification check failed, 2 bad
//! input, 3 computation budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "teamgame", version, about = "Exact equilibria of two-team selection competitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the game comes from: a JSON spec file or a built-in example.
#[derive(Args, Debug, Clone)]
pub struct SpecSource {
    /// Path to a JSON spec file with fields T, P and U.
    pub spec: Option<PathBuf>,
    /// Built-in instance: card, ex1, ex2, ex3, ex4:T or ex5:T.
    #[arg(long, conflicts_with = "spec")]
    pub example: Option<String>,
    /// Replace the utility table with UE (expected wins) or UM (majority).
    #[arg(long)]
    pub utility: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Maximum number of history classes per solve.
    #[arg(long)]
    pub budget: Option<u128>,
    /// Also write the JSON document to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a competition: root value and root strategies.
    Solve {
        #[command(flatten)]
        source: SpecSource,
        /// Include every class value and mixture.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Value the free team can force against a fixed strategy of the other team.
    BestResponse {
        #[command(flatten)]
        source: SpecSource,
        /// Team whose strategy is fixed (1 or 2).
        #[arg(long, default_value_t = 1)]
        team: u8,
        /// Fixed strategy: uniform or equilibrium.
        #[arg(long, default_value = "uniform")]
        strategy: String,
        #[command(flatten)]
        common: Common,
    },
    /// Weakest, dominated and transitivity flags for both teams.
    Classify {
        #[command(flatten)]
        source: SpecSource,
        #[command(flatten)]
        common: Common,
    },
    /// Value lost by a team when some of its players are removed.
    AbandonDelta {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long, default_value_t = 1)]
        team: u8,
        /// Comma-separated 1-based player numbers to remove.
        #[arg(long, value_delimiter = ',', required = true)]
        players: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Build and solve the threshold game with parameters C, a, b.
    Gamma {
        #[arg(long = "C")]
        c: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        /// theorem1, theorem2, theorem3, theorem4, lemma2, lemma5, lemma6 or all.
        suite: String,
        #[command(flatten)]
        source: SpecSource,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        instances: Option<usize>,
        /// Restrict to a single round count.
        #[arg(long = "T")]
        rounds: Option<usize>,
        /// Largest C for the threshold-game grid.
        #[arg(long = "Cmax", default_value_t = 4)]
        c_max: usize,
        /// Team to check for theorem2 on a single instance.
        #[arg(long, default_value_t = 1)]
        team: u8,
        /// Maximum number of pure strategies to enumerate.
        #[arg(long)]
        enum_budget: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Search random instances for the largest gain from recruiting dominated players.
    Sweep {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        instances: usize,
        /// UE or UM.
        #[arg(long, default_value = "UM")]
        utility: String,
        /// Largest round count (smallest is 2).
        #[arg(long = "T", default_value_t = 4)]
        rounds: usize,
        /// Largest team size before recruiting.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value_t = 4)]
        max_recruits: usize,
        #[arg(long, default_value_t = 6)]
        denominator_bound: u32,
        /// Leave out the identity instances that are otherwise listed first.
        #[arg(long)]
        no_witnesses: bool,
        #[arg(long)]
        budget: Option<u128>,
        /// Write the per-instance CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include every record in the JSON output.
        #[arg(long)]
        full: bool,
    },
    /// Monte Carlo play-out of the equilibrium strategies.
    Simulate {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(commands::Status::Pass) => ExitCode::SUCCESS,
        Ok(commands::Status::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            let budget = e
                .downcast_ref::<teamgame::Error>()
                .is_some_and(teamgame::Error::is_budget);
            eprintln!("error: {e:#}");
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}
