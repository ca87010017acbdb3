use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("graph is not weakly connected")]
    Disconnected,
    #[error("expected {expected} restricted edge(s), found {found}")]
    RestrictedCount { expected: usize, found: usize },
    #[error("partition size s={s} outside [1, {n}]")]
    BadPartitionSize { s: usize, n: usize },
    #[error("node id {0} out of range")]
    BadNode(u32),
    #[error("recursion depth {depth} exceeded safety cap {cap} (this indicates a bug, not bad luck)")]
    DepthExceeded { depth: usize, cap: usize },
    #[error("exhaustive path oracle limited to n <= {limit}, got n = {n}")]
    TooManyNodes { n: usize, limit: usize },
    #[error("need at least {need} restricted edges to sample thresholds, got {got}")]
    TooFewRestricted { need: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
