use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("incompatible permutations: degree {left} vs degree {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation {images:?}: not a bijection on 0..{}", images.len())]
    NotABijection { images: Vec<usize> },

    #[error("cannot parse cycle notation {input:?} at byte {position}: {reason}")]
    CycleParse {
        input: String,
        position: usize,
        reason: String,
    },

    #[error("empty generator list")]
    NoGenerators,

    #[error("representation corrupt: {0}")]
    RepresentationCorrupt(String),

    #[error("isotypic decomposition failed: {0}")]
    DecompositionFailure(String),

    #[error("fixture mismatch: {0}")]
    FixtureMismatch(String),

    #[error("seed is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },

    #[error("degenerate orbit: {size} distinct vectors instead of {expected}")]
    DegenerateOrbit { size: usize, expected: usize },

    #[error("orbit cannot be partitioned into orthonormal triples: {0}")]
    PartitionFailure(String),

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("invalid orbit label {0}")]
    InvalidLabel(String),

    #[error("cannot parse pair spec {input:?} at position {position}: {reason}")]
    PairSpecParse {
        input: String,
        position: usize,
        reason: String,
    },

    #[error("vector {0:?} not found in labeled orbit")]
    OrbitLookup([f64; 3]),

    #[error("duplicate probability term {0}")]
    DuplicateTerm(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
