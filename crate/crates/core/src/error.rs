use thiserror::Error;

use crate::complex::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: u32 },

    #[error("vertex {0} is not covered by any facet")]
    UncoveredVertex(Vertex),

    #[error("at most {max} vertices are supported, got {got}")]
    TooManyVertices { max: u32, got: u32 },

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("exponent vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("the zero ideal has no generators")]
    ZeroIdeal,

    #[error("the unit ideal is not supported")]
    UnitIdeal,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("ideal is not generated in degree 2")]
    NotDegreeTwo,

    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,

    #[error("complex is not pure")]
    NotPure,

    #[error("multidegree has a positive entry at variable {0}")]
    PositiveDegree(usize),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("outside the characterization: {0}")]
    OutsideCharacterization(String),

    #[error("routes disagree: {0}")]
    InternalDisagreement(String),

    #[error("cannot parse input: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::UncoveredVertex(_) => "UncoveredVertex",
            Error::TooManyVertices { .. } => "TooManyVertices",
            Error::NotAFace(_) => "NotAFace",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::UnitIdeal => "UnitIdeal",
            Error::NotSquarefree => "NotSquarefree",
            Error::NotDegreeTwo => "NotDegreeTwo",
            Error::NotEquigenerated => "NotEquigenerated",
            Error::NotPure => "NotPure",
            Error::PositiveDegree(_) => "PositiveDegree",
            Error::NotPrime(_) => "NotPrime",
            Error::OutsideCharacterization(_) => "OutsideCharacterization",
            Error::InternalDisagreement(_) => "InternalDisagreement",
            Error::Parse(_) => "ParseError",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
