use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph capacity exceeded: {0} vertices requested, at most 32 supported")]
    TooManyVertices(usize),
    #[error("cycle requires at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: usize, degree: usize },
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotDegreeThree { vertex: usize, degree: usize },
    #[error("vertices {0:?} do not induce a triangle")]
    NotATriangle([usize; 3]),
    #[error("pattern too large: {0} vertices, minor search supports at most 10")]
    PatternTooLarge(usize),
    #[error("apex level {0} out of range, supported 0..=3")]
    ApexLevelOutOfRange(usize),
    #[error("edge bound defined only for n >= 6, got {0}")]
    EdgeBoundDomain(usize),
    #[error("invalid generalized-K3,3 partition: {0}")]
    InvalidPartition(String),
    #[error("unsatisfiable generation spec: {0}")]
    UnsatisfiableSpec(String),
    #[error("graph6: {0}")]
    Graph6(String),
}
