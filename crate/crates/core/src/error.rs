use thiserror::Error;

/// Errors raised when constructing model values or combining incompatible ones.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("beliefs[{index}] = {value} is outside [0, 1]")]
    BeliefOutOfRange { index: usize, value: f64 },

    #[error("belief configuration must contain at least one agent")]
    EmptyConfig,

    #[error("influence weight ({from}, {to}) = {value} is outside [0, 1]")]
    WeightOutOfRange { from: usize, to: usize, value: f64 },

    #[error("influence weight ({index}, {index}) = {value}; agents are self-confident, diagonal must be 1")]
    NonUnitDiagonal { index: usize, value: f64 },

    #[error("influence matrix row {row} has {len} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("graph has {graph} agents but belief configuration has {config}")]
    DimensionMismatch { graph: usize, config: usize },

    #[error("invalid discretization boundaries: {0}")]
    BadBoundaries(String),

    #[error("value {0} is outside [0, 1]")]
    ValueOutOfRange(f64),

    #[error("invalid distribution: {0}")]
    BadDistribution(String),

    #[error(
        "polarization parameters require K > 0 and alpha in (0, 2); got K = {k}, alpha = {alpha}"
    )]
    BadPolarizationParams { k: f64, alpha: f64 },

    #[error("agent {agent} out of range for {n} agents")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("group must be a non-empty proper subset of the agents")]
    BadGroup,

    #[error("not an influence path: {0}")]
    BadPath(String),

    #[error("{preset} requires at least {min} agents, got {n}")]
    TooFewAgents {
        preset: &'static str,
        min: usize,
        n: usize,
    },

    #[error("unknown named example {0:?}")]
    UnknownExample(String),

    #[error("hypotheses unmet: {0}")]
    HypothesesUnmet(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
