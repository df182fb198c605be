use thiserror::Error;

use crate::exactlin::LinalgError;
use crate::groupring::GroupError;
use crate::modpres::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid module presentation: {}", describe(.0))]
    InvalidPresentation(Vec<Violation>),
    #[error("malformed chain complex: {0}")]
    MalformedComplex(String),
    #[error("degree {degree} is outside the validity window [{lo}, {hi}]")]
    WindowViolation { degree: i32, lo: i32, hi: i32 },
    #[error("complex has unbounded support (validity window [{lo}, {hi}])")]
    InfiniteLength { lo: i32, hi: i32 },
    #[error("homology is not concentrated in degree {degree}: nonzero at {offending}")]
    NotConcentrated { degree: i32, offending: i32 },
    #[error("nonzero homology at degree {offending}, strictly between {m} and {n}")]
    GapViolation {
        m: i32,
        n: i32,
        offending: i32,
        step: usize,
    },
    #[error("chain map lift failed in degree {degree}")]
    LiftObstruction { degree: i32 },
    #[error("invalid filtration: {0}")]
    FiltrationInvalid(String),
    #[error("complex is not connected: H_0 = {0}")]
    NotConnected(String),
    #[error("complex has nonzero modules in negative degree {0}")]
    NotNonnegative(i32),
    #[error("requested ranks are infeasible: {0}")]
    InfeasibleRanks(String),
    #[error("module must be Z-free (no relations) here")]
    NotZFree,
}

fn describe(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
