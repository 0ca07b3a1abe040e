use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("bounding box has zero width or height")]
    DegenerateAabb,

    #[error("initial polygon has fewer than 3 distinct vertices")]
    DegeneratePolygon,

    #[error("bounding-box center is not strictly inside the initial polygon")]
    CenterOutsidePolygon,

    #[error("invalid dataset spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
