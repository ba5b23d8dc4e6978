use thiserror::Error;

use crate::poset::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a partition needs at least one part")]
    EmptyPartition,

    #[error("partition parts must be positive, got {0}")]
    NonPositivePart(i64),

    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("dominance comparison needs equal weights, got {left} and {right}")]
    UnequalWeight { left: usize, right: usize },

    #[error("vertex {0} is not in the poset")]
    VertexNotInPoset(Vertex),

    #[error("chain-union profile is not concave at k = {k}")]
    NonMonotoneProfile { k: usize },

    #[error("poset has {size} vertices, exhaustive search is limited to {limit}")]
    PosetTooLarge { size: usize, limit: usize },

    #[error("anchors {0:?} do not form a U-chain spec (need positive, increasing by at least 2)")]
    InvalidSpec(Vec<usize>),

    #[error("U_{a} is not a maximum simple U-chain (|U_{a}| = {size}, maximum is {max})")]
    NotMaximumSimpleChain { a: usize, size: usize, max: usize },

    #[error("U_{0} is empty and cannot be removed")]
    EmptyChainRemoval(usize),

    #[error("the U-process is not full")]
    NotFullProcess,

    #[error("U-process sizes are not weakly decreasing: {0:?}")]
    NonMonotoneSizes(Vec<usize>),

    #[error("no U-chain spec matches the union of the first {steps} process steps")]
    NoMatchingSpec { steps: usize },

    #[error("U-process enumeration exceeded the cap of {0} traces")]
    TraceLimitExceeded(usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("sampled commutant element does not commute with B")]
    CommutationCheckFailed,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("sampled Jordan types have no dominance maximum: {0:?}")]
    IncomparableSamples(Vec<Vec<usize>>),

    #[error("invalid range {n_min}..={n_max} (cap {cap})")]
    InvalidRange {
        n_min: usize,
        n_max: usize,
        cap: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
