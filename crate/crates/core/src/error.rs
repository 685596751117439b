use thiserror::Error;

use crate::rootsys::Weight;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system: {0}")]
    RootSystem(String),

    #[error("rank {rank} exceeds the configured Weyl group cap of {cap}")]
    RankCap { rank: usize, cap: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {weight} is not {p}^{r}-restricted")]
    NotRestricted { weight: Weight, p: u64, r: u32 },

    #[error("weight {weight} has {got} coordinates, root system has rank {rank}")]
    Arity { weight: Weight, got: usize, rank: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degree cap {cap} exceeded by term {term}")]
    CapOverflow { cap: u64, term: String },

    #[error("no Weyl group element maps {0} onto a standard Levi subsystem")]
    LeviSearch(String),

    #[error("membership undecidable: {0}")]
    Undecidable(String),

    #[error("invalid nilpotent tuple: {0}")]
    InvalidTuple(String),

    #[error("matrix is not p-nilpotent: {0}")]
    NotNilpotent(String),

    #[error("registry entry {key}: {msg}")]
    Registry { key: String, msg: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
