use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0} (expected 2, 3 or 4)")]
    UnsupportedDimension(usize),
    #[error("operation requires a non-empty polyform")]
    Empty,
    #[error("polyforms overlap at {witness:?}")]
    Overlap { witness: Vec<i32> },
    #[error("frame count must be at least 1, got {0}")]
    InvalidFrameCount(i32),
    #[error("malformed frame expression `{0}`")]
    MalformedFrame(String),
    #[error("cell {0:?} has a negative coordinate")]
    NegativeCoordinate(Vec<i32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("ragged grid at line {line}: expected width {expected}, found {found}")]
    Ragged { line: usize, expected: usize, found: usize },
    #[error("illegal character `{ch}` at line {line}")]
    IllegalChar { line: usize, ch: char },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("unknown building block `{0}`")]
    UnknownBlock(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WangError {
    #[error("color {color} out of range for q = {q}")]
    ColorOutOfRange { color: usize, q: usize },
    #[error("a Wang tile set needs at least one color")]
    NoColors,
    #[error("tile index {index} out of range for a set of {count} tiles")]
    TileOutOfRange { index: usize, count: usize },
    #[error("assignment has {found} cells, torus {a}x{b} needs {}", a * b)]
    AssignmentShape { a: usize, b: usize, found: usize },
    #[error("torus dimensions must be positive, got {a}x{b}")]
    EmptyTorus { a: usize, b: usize },
    #[error("invalid Wang set file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the reduction needs at least 2 Wang tiles, got {0}")]
    TooFewTiles(usize),
    #[error("dimension must be 3 or 4, got {0}")]
    Dimension(usize),
    #[error(transparent)]
    Wang(#[from] WangError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("period lattice is degenerate (determinant 0)")]
    DegenerateLattice,
    #[error("lattice must have {dim} rows of length {dim}")]
    LatticeShape { dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("placement references unknown tile `{0}`")]
    UnknownTile(String),
    #[error("Wang assignment does not satisfy the matching rules at cell ({i}, {j})")]
    InvalidAssignment { i: usize, j: usize },
    #[error("fundamental domain of {0} cells is too large to materialize")]
    RegionTooLarge(u64),
    #[error("placement {index} references tile {tile}, but only {count} tiles are declared")]
    TileIndex { index: usize, tile: usize, count: usize },
    #[error("certificate has no `{0}` placements")]
    Missing(&'static str),
    #[error("certificate does not record the construction parameters t and p")]
    MissingParams,
    #[error(transparent)]
    Wang(#[from] WangError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("no tiles given")]
    NoTiles,
    #[error("region of {cells} cells exceeds the configured bound of {limit}")]
    RegionTooLarge { cells: u64, limit: u64 },
    #[error("tile dimension {found} does not match region dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty tile")]
    EmptyTile,
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Errors raised while reading or writing the crate's file formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Wang(#[from] WangError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}
