use thiserror::Error;

/// Errors raised by the geometric, metric and special-function routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate ({re}, {im})")]
    NonFinite { re: f64, im: f64 },

    #[error("points defining a line coincide")]
    CoincidentPoints,

    #[error("lines are parallel or identical")]
    ParallelLines,

    #[error("points are collinear")]
    CollinearPoints,

    #[error("tuple contains coincident points")]
    DegenerateTuple,

    #[error("argument is a pole of the map")]
    PoleInput,

    #[error("point lies outside the unit disk")]
    OutsideDisk,

    #[error("point {re}+{im}i is not in the upper half-plane")]
    NotInHalfPlane { re: f64, im: f64 },

    #[error("pair lies on a vertical geodesic")]
    VerticalGeodesic,

    #[error("points have equal heights")]
    EqualHeights,

    #[error("pair of points coincides")]
    DegeneratePair,

    #[error("point is not on the unit circle (deviation {deviation:e})")]
    UnitViolation { deviation: f64 },

    #[error("circle radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range<T>(what: &'static str, value: f64) -> Result<T> {
    Err(Error::OutOfRange { what, value })
}
