use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an orientation: {0}")]
    NotAnOrientation(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph6 encoding supports at most 62 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("invalid edge {0}-{1}: {2}")]
    InvalidEdge(usize, usize, &'static str),
    #[error("graph is not connected")]
    NotConnected,
    #[error("the distinguishing index of K2 is undefined")]
    IsK2,
    #[error("automorphism group too large: order {order} exceeds cap {cap}")]
    GroupTooLarge { order: u128, cap: u128 },
    #[error("{edges} edges exceed the edge cap of {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("twisted automorphism: no orientation admits it")]
    Twisted,
    #[error("not a tree")]
    NotATree,
    #[error("not claw-free")]
    NotClawFree,
    #[error("order {n} is below the required minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("not a Hamiltonian path: {0}")]
    NotHamiltonian(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("invalid arguments: {0}")]
    InvalidArgument(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
