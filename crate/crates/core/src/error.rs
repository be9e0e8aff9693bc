use thiserror::Error;

/// Errors raised by the algebra, endomorphism and dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),

    #[error("alphabet size {0} is not supported (need 2 <= N <= 255)")]
    BadAlphabet(usize),

    #[error("letter {letter} outside 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("leveling target {target} is below current right-length {current} in degree {degree}")]
    LevelTargetTooSmall {
        degree: i64,
        target: usize,
        current: usize,
    },

    #[error("element is not gauge-homogeneous")]
    NotHomogeneous,

    #[error("element has nonzero gauge degree {0}")]
    NonzeroDegree(i64),

    #[error("rank {k} is too small for an element in F_({p},{l})")]
    RankTooSmall { k: usize, p: usize, l: usize },

    #[error("matrix dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("power iteration did not converge in {0} iterations")]
    NoConvergence(usize),

    #[error("not a permutation: {0}")]
    BadPermutation(String),

    #[error("element is not unitary")]
    NonUnitary,

    #[error("masa not invariant: {0}")]
    MasaNotInvariant(String),

    #[error("partition violated: {0}")]
    PartitionViolated(String),

    #[error("enumeration budget exceeded: {needed} words > cap {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
