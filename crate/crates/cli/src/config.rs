use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use cuntzlab_core::dynamics::DEFAULT_BUDGET;

#[derive(Parser, Debug, Clone)]
#[command(name = "cuntzlab", version, about = "Exact computations with endomorphisms of the Cuntz algebras O_N")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Global options. Each flag can also be set through a `CUNTZLAB_*`
/// environment variable.
#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Number of generators N.
    #[arg(long = "n-gens", global = true, env = "CUNTZLAB_N_GENS", default_value_t = 2)]
    pub n_gens: usize,

    /// Rank k of the permutation (length of the words it acts on).
    #[arg(long, global = true, env = "CUNTZLAB_RANK", default_value_t = 2)]
    pub rank: usize,

    /// Permutation: cycles "(1 2)(3 4)", "perm-word 2134", id, shift or flip.
    #[arg(long, global = true, env = "CUNTZLAB_PERM")]
    pub perm: Option<String>,

    /// Permutation in one-line notation, images of 1..N^k.
    #[arg(long = "perm-word", global = true, env = "CUNTZLAB_PERM_WORD")]
    pub perm_word: Option<String>,

    /// Element, e.g. "s[1] t[2] + 1/2 * s[21]".
    #[arg(long, global = true, env = "CUNTZLAB_ELEMENT", allow_hyphen_values = true)]
    pub element: Option<String>,

    /// Commutative subalgebra for entropy: standard or ef.
    #[arg(long, global = true, env = "CUNTZLAB_MASA", default_value = "standard")]
    pub masa: String,

    /// Largest cylinder depth p.
    #[arg(long, global = true, env = "CUNTZLAB_DEPTH", default_value_t = 4)]
    pub depth: usize,

    /// Largest number of iterates n in the join counts.
    #[arg(long, global = true, env = "CUNTZLAB_STEPS", default_value_t = 16)]
    pub steps: usize,

    /// Cap on the words enumerated by one count.
    #[arg(long, global = true, env = "CUNTZLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    #[arg(long, global = true, env = "CUNTZLAB_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Same as --format json.
    #[arg(long, global = true, env = "CUNTZLAB_JSON", action = ArgAction::SetTrue)]
    pub json: bool,

    /// Seed for the randomized checks.
    #[arg(long, global = true, env = "CUNTZLAB_SEED", default_value_t = 2024)]
    pub seed: u64,
}

impl Config {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.n_gens < 2 || self.n_gens > 9 {
            return Err(format!("--n-gens must be in 2..=9, got {}", self.n_gens));
        }
        if self.rank < 1 {
            return Err("--rank must be at least 1".into());
        }
        if self.depth < 1 || self.steps < 1 {
            return Err("--depth and --steps must be at least 1".into());
        }
        if self.budget == 0 {
            return Err("--budget must be positive".into());
        }
        if self.perm.is_some() && self.perm_word.is_some() {
            return Err("give either --perm or --perm-word, not both".into());
        }
        Ok(())
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Apply ρ to --element and print the canonical result.
    Apply,
    /// Entropy of the map induced on a masa by --perm (or by the unitary --element).
    Entropy,
    /// Recompute the rank-2 entropy table for O_2 and compare with the expected values.
    Table1,
    /// Run a named property suite, or all of them.
    Verify {
        /// relations, lemma1, lemma2, cocycle, psi-formulas, trace-invariance, oracles or ef.
        suite: Option<String>,
    },
    /// Operator norm of --element.
    Norm,
    /// The matrix Ψ_k(X) of --element with k = --rank, and its coefficient matrices.
    Psi,
}
