use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no analytic oracle for {0}")]
    NoAnalyticOracle(String),
    #[error("unresolved intersection distance: bracket [{lo}, {hi}]")]
    UnresolvedIntersection { lo: f64, hi: f64 },
    #[error("point is not in the set (distance {0:e})")]
    NotInSet(f64),
    #[error("duality map at zero not representable by the max-norm characterization")]
    ZeroDualityInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("base point violates x\u{304} \u{2208} \u{22c2}\u{3a9}\u{1d62} (set {set}, distance {dist:e})")]
    BasePoint { set: usize, dist: f64 },
    #[error("spec parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
