use std::path::PathBuf;

use crate::linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("genus must be at least {min}, got {g}")]
    GenusTooSmall { g: usize, min: usize },
    #[error("partition {partition:?} has {len} nonzero parts but genus is {g}")]
    PartitionTooLong {
        partition: Vec<u32>,
        len: usize,
        g: usize,
    },
    #[error("partition {0:?} is not weakly decreasing")]
    NotAPartition(Vec<u32>),
    #[error("characters of genus {left} and {right} cannot be combined")]
    GenusMismatch { left: usize, right: usize },
    #[error("virtual character: {label} occurs with multiplicity {multiplicity}")]
    VirtualCharacter { label: String, multiplicity: i64 },
    #[error("constituent {partition:?} cannot carry weight {weight}: parity mismatch")]
    WeightParity { partition: Vec<u32>, weight: i32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("weight {weight} exceeds the truncation cutoff {cutoff}")]
    AboveCutoff { weight: usize, cutoff: usize },
    #[error("generator {0} does not belong to an explicit copy of this algebra")]
    ForeignGenerator(String),
    #[error("copy index {index} is out of range")]
    BadIndex { index: u32 },
    #[error("the Q(1) summand for the pair ({i},{j}) is absent")]
    SummandAbsent { i: u32, j: u32 },
    #[error("{0}")]
    Inconsistent(String),
    #[error("cache I/O on {path}: {source}")]
    Cache {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed cache record {path}: {msg}")]
    CacheFormat { path: PathBuf, msg: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
