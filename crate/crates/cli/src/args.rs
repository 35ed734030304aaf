use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "specker",
    version,
    about = "Contextuality proofs, witnesses and measurement simulations"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// RNG seed for every randomized command.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Trials, rounds or sampled states, depending on the command.
    #[arg(long, global = true)]
    pub trials: Option<usize>,

    #[command(subcommand)]
    pub command: Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Kochen-Specker non-colorability.
    #[command(subcommand)]
    Ks(KsCommand),
    /// Classical bound and quantum value of the context-product witness.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Three-box parable simulations.
    #[command(subcommand)]
    Parable(ParableCommand),
    /// Detector-level experiments.
    #[command(subcommand)]
    Detect(DetectCommand),
    /// World and history counting.
    #[command(subcommand)]
    Counts(CountsCommand),
}

#[derive(Debug, Args)]
pub struct SystemSource {
    /// Ray-system JSON document; the bundled 18-ray system when omitted.
    #[arg(long, conflicts_with = "hypergraph")]
    pub rays: Option<PathBuf>,

    /// Abstract hypergraph JSON: {"vertex_count": n, "edges": [[..], ..]}.
    #[arg(long)]
    pub hypergraph: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Worker threads for exhaustive search. Results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    /// Largest vertex count the search accepts.
    #[arg(long, default_value_t = specker_core::ks::DEFAULT_SEARCH_CAP)]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum KsCommand {
    /// Parity certificate plus exhaustive search.
    Verify {
        #[command(flatten)]
        source: SystemSource,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Look for a noncontextual {0,1} assignment.
    Search {
        #[command(flatten)]
        source: SystemSource,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Exact noncontextual maximum of the witness.
    Bound {
        #[arg(long)]
        rays: Option<PathBuf>,
        #[arg(long, default_value = "-1", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: i64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Quantum value on |0> and on `--trials` random states.
    Quantum {
        #[arg(long)]
        rays: Option<PathBuf>,
        #[arg(long, default_value = "-1", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: i64,
    },
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(format!("expected +1 or -1, got {other:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParableModelArg {
    /// Fresh random filling of A, B, C each round.
    Noncontextual,
    /// One filling for every round (see --assignment).
    Fixed,
    /// Precommitted outcome table.
    Prophet,
    /// Signalling machine.
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum ParableCommand {
    /// Play rounds under one outcome model.
    Run {
        #[arg(long, value_enum, default_value_t = ParableModelArg::Prophet)]
        model: ParableModelArg,
        /// Contents of A, B, C for the fixed model, e.g. 100.
        #[arg(long, default_value = "100")]
        assignment: String,
        /// Probability that a prophet cell reads 10.
        #[arg(long, default_value_t = 0.5)]
        bias: f64,
        /// Comma-separated pairs (AB,AC,BC,...) instead of a uniform chooser.
        #[arg(long)]
        chooser: Option<String>,
        /// Write the round-by-round log as JSON lines.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Exact noncontextual floor on the same-outcome probability.
    Bound,
    /// Time-ordered openings simulated by the signalling machine.
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MzModelArg {
    Quantum,
    Path,
}

#[derive(Debug, Subcommand)]
pub enum DetectCommand {
    /// Mach-Zehnder interferometer.
    Mz {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phase: f64,
        #[arg(long, value_enum, default_value_t = MzModelArg::Quantum)]
        model: MzModelArg,
    },
    /// One quantum, two or three exclusive detectors.
    Exclusivity {
        #[arg(long, default_value_t = 2)]
        detectors: usize,
        /// Comma-separated detector probabilities; uniform when omitted.
        #[arg(long, allow_hyphen_values = true)]
        probs: Option<String>,
    },
    /// CHSH value for the singlet against the local bound.
    Chsh {
        /// a1,a2,b1,b2 in radians; the optimal setting when omitted.
        #[arg(long, allow_hyphen_values = true)]
        angles: Option<String>,
    },
    /// Classify two events as space-, time- or light-like separated.
    Separation {
        /// t,x of the first event (s, m).
        #[arg(long, allow_hyphen_values = true)]
        e1: String,
        /// t,x of the second event (s, m).
        #[arg(long, allow_hyphen_values = true)]
        e2: String,
        /// Signal speed in m/s.
        #[arg(long, default_value_t = 299_792_458.0)]
        c: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterpretationArg {
    MwOutcomes,
    MwCompleted,
    ApwChoices,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    Rounded,
    Physical,
}

#[derive(Debug, Subcommand)]
pub enum CountsCommand {
    Worlds {
        #[arg(long, value_enum)]
        interpretation: InterpretationArg,
        #[arg(long, default_value_t = 3)]
        choices: u64,
        #[arg(long, default_value_t = 4)]
        outcomes: u64,
        #[arg(long, default_value_t = 1)]
        rounds: u64,
    },
    Histories {
        #[arg(long, default_value_t = 3)]
        choices: u64,
        #[arg(long, default_value_t = 8)]
        rounds: u64,
        #[arg(long, default_value_t = 1)]
        agents: u64,
    },
    Infuturabilien {
        /// CosmicParams JSON; overrides --preset.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PresetArg::Rounded)]
        preset: PresetArg,
    },
    Boltzmann {
        #[arg(long)]
        molecules: u64,
    },
}
