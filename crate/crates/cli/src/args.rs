use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "constlab",
    version,
    about = "Self-maintaining voting rules and oligarchy dynamics"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "CONSTLAB_THREADS")]
    pub threads: Option<usize>,

    /// Seed for the order in which candidates are processed; results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run machine checks of the stability and jury results.
    VerifyTheorems(VerifyArgs),
    /// List every self-maintaining rule for one belief.
    Classify(ClassifyArgs),
    /// Search small uniform beliefs that make a rule vote itself out.
    Refute(RefuteArgs),
    /// Build the replacement graph over a universe of rules.
    Graph(GraphArgs),
    /// Stable oligarchy sizes over a (lambda, p) grid.
    JuryGrid(JuryGridArgs),
    /// Basins of attraction of the oligarchy motion graph.
    JuryDynamics(JuryDynamicsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Stability,
    Jury,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Voter count for the exhaustive checks (only 3 is supported).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Electorate used for the jury grid checks.
    #[arg(long, default_value_t = 500)]
    pub jury_n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct BeliefArgs {
    /// iid belief with this probability of a 1-vote, e.g. 1/3.
    #[arg(long, group = "belief_source")]
    pub iid: Option<String>,
    /// JSON belief file: {"n": .., "pmf": {"101": "1/2", ..}}.
    #[arg(long, group = "belief_source")]
    pub belief: Option<PathBuf>,
    /// File listing a lexicographic order of profiles (binary strings).
    #[arg(long, group = "belief_source")]
    pub lexicographic: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub belief: BeliefArgs,
    /// Tie-breaking rule: arbitrary or sqb.
    #[arg(long = "tie", default_value = "arbitrary")]
    pub tie: String,
    /// Challenger universe: all or thresholds.
    #[arg(long, default_value = "all")]
    pub universe: String,
    /// Allow exhaustive classification at n=4.
    #[arg(long)]
    pub extended: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RefuteArgs {
    #[arg(long)]
    pub n: usize,
    /// Rule to test: a name such as dictatorship:0 or a canonical table.
    #[arg(long, required_unless_present = "all")]
    pub scf: Option<String>,
    /// Test every rule over n voters.
    #[arg(long, conflicts_with = "scf")]
    pub all: bool,
    #[arg(long = "tie", default_value = "sqb")]
    pub tie: String,
    #[arg(long, default_value_t = 3)]
    pub budget: usize,
    #[arg(long, default_value = "all")]
    pub universe: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub belief: BeliefArgs,
    #[arg(long = "tie", default_value = "arbitrary")]
    pub tie: String,
    #[arg(long, default_value = "all")]
    pub universe: String,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct JuryCommon {
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub epsilon: f64,
    /// Score an even split as correct with probability 1/2.
    #[arg(long)]
    pub half_credit_ties: bool,
}

#[derive(Args, Debug)]
pub struct JuryGridArgs {
    #[command(flatten)]
    pub common: JuryCommon,
    /// Range start:stop:step or comma list.
    #[arg(long, default_value = "0.1:0.9:0.1")]
    pub lambdas: String,
    #[arg(long, default_value = "0.6:0.95:0.05")]
    pub ps: String,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct JuryDynamicsArgs {
    #[command(flatten)]
    pub common: JuryCommon,
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}
