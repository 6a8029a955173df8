use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {generator} is outside the ambient alphabet of rank {rank}")]
    GeneratorOutOfRange { generator: u32, rank: u32 },

    #[error("vertex {vertex} is not a vertex of a graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error(
        "graph is not folded: vertex {vertex} has two {direction} edges labelled g{generator}"
    )]
    NotFolded {
        vertex: usize,
        generator: u32,
        direction: &'static str,
    },

    #[error("graph has no basepoint")]
    MissingBasepoint,

    #[error("ambient ranks differ: {left} vs {right}")]
    AmbientMismatch { left: u32, right: u32 },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("word of length {length} exceeds the evaluation bound {bound}")]
    WordTooLong { length: usize, bound: usize },

    #[error("numeric check failed: {0}")]
    Numeric(String),

    #[error("edge-space template check failed: {0}")]
    Template(String),
}

pub type Result<T> = std::result::Result<T, Error>;
