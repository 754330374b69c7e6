use thiserror::Error;

use crate::params::RepIndex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("negative r^2 = {value:e} at 2j = {twice_j} in representation of spin {index}")]
    NegativeSquare {
        index: RepIndex,
        twice_j: i32,
        value: f64,
    },

    #[error("spin {k} is not a component of {n} (x) {m}")]
    NotInIndexSet {
        n: RepIndex,
        m: RepIndex,
        k: RepIndex,
    },

    #[error("highest weight kernel for spin {k} in {n} (x) {m} has dimension {dim}, expected 1")]
    DegenerateKernel {
        n: RepIndex,
        m: RepIndex,
        k: RepIndex,
        dim: usize,
    },

    #[error("lowered column {column} of the spin {k} isometry has norm {norm}, expected 1")]
    ColumnNorm { k: RepIndex, column: usize, norm: f64 },

    #[error("matrices do not form an admissible irreducible representation: {0}")]
    NotAdmissible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
