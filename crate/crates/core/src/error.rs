use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge ({tail},{head}) is not a valid edge on vertices 0..={n}")]
    BadEdge { tail: usize, head: usize, n: usize },
    #[error("duplicate edge copy ({0},{1},{2})")]
    DuplicateEdge(usize, usize, u32),
    #[error("edge ({0},{1},{2}) is not in the graph")]
    UnknownEdge(usize, usize, u32),
    #[error("vertex {v} out of range 0..={n}")]
    UnknownVertex { v: usize, n: usize },
    #[error("edges ({0},{1}) and ({2},{3}) do not form a reducible pair")]
    NotReducible(usize, usize, usize, usize),
    #[error("edge subset contains ({0},{1}), but F must avoid the source vertex 0")]
    SourceEdgeInF(usize, usize),
    #[error("contracting ({0},{1}) would reverse another edge")]
    ContractionOrientation(usize, usize),
    #[error("netflow has {got} entries, expected {expected}")]
    NetflowLength { expected: usize, got: usize },
    #[error("netflow does not sum to zero (sum {0})")]
    NetflowSum(i64),
    #[error("flow problem is infeasible")]
    Infeasible,
    #[error("{what} limit exceeded: {size} > {limit}")]
    Limit { what: &'static str, size: usize, limit: usize },
    #[error("z is not supermodular at I={i:?}, J={j:?}")]
    NotSupermodular { i: Vec<usize>, j: Vec<usize> },
    #[error("lattice cover {cover:?} over {below:?} removes more than one vertex")]
    CoverViolation { cover: Vec<usize>, below: Vec<usize> },
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("not a permutation: {0}")]
    BadPermutation(String),
    #[error("{0} is not of the form 1w with w dominant")]
    NotOneDominant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} requires an external construction")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
