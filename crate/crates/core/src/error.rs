use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative weight {weight} on edge ({u}, {v})")]
    NegativeWeight { u: String, v: String, weight: f64 },
    #[error("non-finite weight on edge ({u}, {v})")]
    NonFiniteWeight { u: String, v: String },
    #[error("edge ({u}, {v}) listed more than once")]
    DuplicateEdge { u: String, v: String },
    #[error("edge ({u}, {v}) listed in both directions with weights {forward} and {backward}")]
    AsymmetricWeight {
        u: String,
        v: String,
        forward: f64,
        backward: f64,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is isolated; the degree measure vanishes there")]
    IsolatedVertex(String),
    #[error("signal or set belongs to a different graph")]
    GraphMismatch,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("eigensolver did not converge within {0} iterations")]
    ConvergenceFailure(usize),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("signal has zero norm")]
    ZeroSignal,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set is the whole graph")]
    FullSet,
    #[error("K_S = 0: the connectivity inequality is vacuous for this set")]
    KZero,
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("not a sampling set: frame lower bound c = {c:e} (threshold {threshold:e})")]
    NotSamplingSet { c: f64, threshold: f64 },
    #[error("initial data is not band-limited: ratio {ratio:e}")]
    NotBandlimited { ratio: f64 },
    #[error("Laplacian data on the sampling set is missing and derivation is disabled")]
    MissingLaplacianData,
    #[error("missing time sample k = {k} at vertex {vertex}")]
    MissingSample { k: i64, vertex: String },
    #[error("bad sizes: {0}")]
    BadSizes(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Precondition,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            ConvergenceFailure(_) | NumericalFailure(_) => ErrorClass::Numerical,
            ZeroSignal
            | KZero
            | DisconnectedGraph
            | NotSamplingSet { .. }
            | NotBandlimited { .. }
            | IsolatedVertex(_) => ErrorClass::Precondition,
            _ => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
