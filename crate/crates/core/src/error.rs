use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("signatures of source and target differ")]
    SignatureMismatch,

    #[error("map has length {len}, source has size {size}")]
    LengthMismatch { len: usize, size: usize },

    #[error("map sends {element} to {image}, outside a target of size {size}")]
    OutOfRange {
        element: usize,
        image: usize,
        size: usize,
    },

    #[error("cannot compose: target of the first map is not the source of the second")]
    EndpointMismatch,

    #[error("not an epimorphism: {0}")]
    NotEpimorphism(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("relation symbol `{name}` has arity {arity}, expected 2")]
    NotBinary { name: String, arity: usize },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unknown export format `{0}`")]
    UnknownFormat(String),

    #[error("level {level} exceeds the available depth {depth}")]
    BeyondDepth { level: usize, depth: usize },

    #[error("symbol `{name}` occurs with arities {left} and {right}")]
    SymbolCollision {
        name: String,
        left: usize,
        right: usize,
    },

    #[error("distinguished symbols differ: `{0}` vs `{1}`")]
    DistinguishedMismatch(String, String),

    #[error("element {element} of block {block} is sent to {image}, outside the matching target block")]
    CrossBlock {
        element: usize,
        block: usize,
        image: usize,
    },

    #[error(
        "map is not a product map: {first:?} and {second:?} share coordinate {axis} \
         but their images {first_image:?} and {second_image:?} do not"
    )]
    NotRectangular {
        axis: usize,
        first: (usize, usize),
        second: (usize, usize),
        first_image: (usize, usize),
        second_image: (usize, usize),
    },

    #[error("anchor {anchor} is not bond-compatible at level {level}: element {element} goes to {image}, anchor there is {expected}")]
    AnchorIncompatible {
        anchor: usize,
        level: usize,
        element: usize,
        image: usize,
        expected: usize,
    },

    #[error("invalid glue specification: {0}")]
    Glue(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
