use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix or vector shapes do not line up.
    DimensionMismatch { expected: usize, found: usize },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Entry count does not match `rows * cols`.
    BadShape { rows: usize, cols: usize, entries: usize },
    /// The zero vector has no primitive direction.
    ZeroVector,
    /// Ray coordinate outside the supported magnitude.
    CoordinateOutOfRange { ray: usize, value: i64 },
    /// The rays generate a cone containing a line; `ray` is one whose
    /// negation lies in the cone.
    NotStronglyConvex { ray: usize },
    /// The operation needs a different kind of cone.
    UnsupportedCone(&'static str),
    /// An enumeration would exceed the built-in size limit.
    TooLarge { points: u128, limit: u128 },
    /// Intermediate lattice coordinates left the `i64` range.
    Overflow,
    InvalidRayIndex { index: usize, rays: usize },
    /// Exponents, multipliers, and multiplicities must be at least one.
    InvalidExponent(&'static str),
    /// The two ideals live over different semigroups.
    ContextMismatch,
    /// No du Val singularity with this type and index.
    NotInCatalog { family: char, n: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected a square matrix")
            }
            Error::BadShape { rows, cols, entries } => {
                write!(f, "{entries} entries do not fill a {rows}x{cols} matrix")
            }
            Error::ZeroVector => f.write_str("zero vector has no primitive direction"),
            Error::CoordinateOutOfRange { ray, value } => {
                write!(f, "ray {ray}: coordinate {value} exceeds 2^31 in magnitude")
            }
            Error::NotStronglyConvex { ray } => {
                write!(f, "cone is not strongly convex: ray {ray} is opposite to a cone element")
            }
            Error::UnsupportedCone(why) => write!(f, "unsupported cone: {why}"),
            Error::TooLarge { points, limit } => {
                write!(f, "enumeration of {points} lattice points exceeds the limit of {limit}")
            }
            Error::Overflow => f.write_str("lattice coordinates overflow 64-bit integers"),
            Error::InvalidRayIndex { index, rays } => {
                write!(f, "ray index {index} out of range (cone has {rays} rays)")
            }
            Error::InvalidExponent(what) => write!(f, "{what} must be a positive integer"),
            Error::ContextMismatch => f.write_str("ideals belong to different semigroups"),
            Error::NotInCatalog { family, n } => {
                write!(f, "no du Val singularity of type {family}_{n}")
            }
        }
    }
}

impl core::error::Error for Error {}
