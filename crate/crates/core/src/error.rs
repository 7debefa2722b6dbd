use thiserror::Error;

/// Errors raised by the counting engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sublattice is not saturated: quotient has torsion")]
    NotSaturated,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bounded edge {0} has equal endpoint positions")]
    DegenerateEdge(usize),
    #[error("vertex {vertex} is not trivalent (valence {valence})")]
    NonTrivalent { vertex: usize, valence: usize },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("lattice map has infinite cokernel (zero determinant)")]
    InfiniteCokernel,
    #[error("constraint {0} has a non-integral base point")]
    NonIntegralBase(usize),
    #[error("constraint {0} passes through a vertex of the curve")]
    ConstraintOnVertex(usize),
    #[error("constraint {0} meets no edge of the curve")]
    ConstraintMissed(usize),
    #[error("constraint {0} meets more than one edge of the curve")]
    AmbiguousMark(usize),
    #[error("zeta = -1 is only allowed on even-weight edges (weight {0})")]
    InvalidZeta(u64),
    #[error("edge image passes through a vertex image (edge {edge}, vertex {vertex})")]
    NonGenericCrossing { edge: usize, vertex: usize },
    #[error("edge {edge}: integral length {length} is not divisible by weight {weight}")]
    NonIntegralLength { edge: usize, length: String, weight: u64 },
    #[error("genus {0} enumeration is not supported")]
    UnsupportedGenus(usize),
    #[error("point configuration is not generic: {0}")]
    GenericityFailure(String),
    #[error("non-generic input: {0}")]
    NonGenericInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
