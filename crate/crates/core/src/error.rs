use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quaternion norm {0} is not within 1e-12 of 1")]
    NotUnit(f64),
    #[error("matrix deviates from the SU(2) form by {0:e}")]
    NotSu2(f64),
    #[error("cannot parse braid letter {0:?}: expected one of 1, -1, 2, -2")]
    BadLetter(String),
    #[error("closure exceeded {cap} elements: not a finite group at this tolerance")]
    NotFinite { cap: usize },
    #[error("no pseudo-generator candidate found up to length {max_len}; try max_len >= 10")]
    NoPseudoGenerator { max_len: usize },
    #[error("Y element {index} {element} unmatched within {budget:e} (best {best:e})")]
    YTildeUnmatched {
        index: usize,
        element: String,
        best: f64,
        budget: f64,
    },
    #[error("word enumeration up to length {0} exceeds the budget of 16")]
    EnumerationBudget(usize),
    #[error("seed {index} braid error {err:e} exceeds the budget {budget:e}")]
    SeedBudget { index: usize, err: f64, budget: f64 },
    #[error("unsupported mesh level {kind}{level}")]
    MeshLevel { kind: char, level: usize },
    #[error("mesh check failed: {0}")]
    MeshCheck(String),
    #[error("cell template search failed: {0}")]
    Template(String),
    #[error("no navigation resource loaded")]
    NoResource,
    #[error("malformed input at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid target: {0}")]
    Target(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
