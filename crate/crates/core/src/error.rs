use thiserror::Error;

use crate::lattice::Signature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("cannot parse {0:?} as an exact quadratic number")]
    ParseQuad(String),
    #[error("radicand must be non-negative, got {0}")]
    NegativeRadicand(String),
    #[error("square root of negative rational {0}")]
    NegativeSquare(String),
    #[error("operands carry different radicands ({0} and {1})")]
    MixedRadicand(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("polynomial has degree {0}, at most 2 supported")]
    DegreeTooHigh(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pairing matrix is not square or empty")]
    MalformedMatrix,
    #[error("pairing matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("signature {0} is not hyperbolic (1, r-1)")]
    BadSignature(Signature),

    #[error("cone has neither linear facets nor a light-cone facet")]
    EmptyCone,
    #[error("reference class of the light-cone facet is not strictly inside the cone")]
    BadReferenceClass,
    #[error("omega is not a Kähler class of the cone model")]
    OmegaNotKahler,
    #[error("theta is not a Kähler class of the cone model")]
    ThetaNotKahler,
    #[error("light-cone discriminant is negative; the pairing violates the Hodge index bound")]
    NegativeDiscriminant,

    #[error("omega has zero self-intersection")]
    ZeroVolume,
    #[error("boundary class must be nef and not Kähler")]
    ANotOnBoundary,
    #[error("boundary class has negative self-intersection")]
    NegativeSelfIntersection,
    #[error("alpha invariant must be positive")]
    NonPositiveAlpha,

    #[error("ray {0} is not a primitive lattice vector")]
    NonPrimitiveRay(usize),
    #[error("maximal cone {0} is not unimodular")]
    NotSmooth(usize),
    #[error("fan is not complete")]
    NotComplete,
    #[error("cones do not meet along common faces ({0})")]
    BadFace(String),
    #[error("invalid fan: {0}")]
    FanInvalid(String),
    #[error("expected {expected} classes, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("omega has non-positive volume on orbit closure {0:?}")]
    OmegaNotAmpleOnOrbit(Vec<usize>),

    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("invalid catalog parameters: {0}")]
    BadParams(String),
    #[error("closed form undefined: {0}")]
    OutOfDomain(String),

    #[error("invalid input document: {0}")]
    InvalidDocument(String),
    #[error("unknown class label {0:?}")]
    UnknownClass(String),
}

impl Error {
    /// Variant name, used as the stable diagnostic code on the command line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ParseRational(_) => "ParseRational",
            Error::ParseQuad(_) => "ParseQuad",
            Error::NegativeRadicand(_) => "NegativeRadicand",
            Error::NegativeSquare(_) => "NegativeSquare",
            Error::MixedRadicand(..) => "MixedRadicand",
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegreeTooHigh(_) => "DegreeTooHigh",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::MalformedMatrix => "MalformedMatrix",
            Error::NotSymmetric(..) => "NotSymmetric",
            Error::BadSignature(_) => "BadSignature",
            Error::EmptyCone => "EmptyCone",
            Error::BadReferenceClass => "BadReferenceClass",
            Error::OmegaNotKahler => "OmegaNotKahler",
            Error::ThetaNotKahler => "ThetaNotKahler",
            Error::NegativeDiscriminant => "NegativeDiscriminant",
            Error::ZeroVolume => "ZeroVolume",
            Error::ANotOnBoundary => "ANotOnBoundary",
            Error::NegativeSelfIntersection => "NegativeSelfIntersection",
            Error::NonPositiveAlpha => "NonPositiveAlpha",
            Error::NonPrimitiveRay(_) => "NonPrimitiveRay",
            Error::NotSmooth(_) => "NotSmooth",
            Error::NotComplete => "NotComplete",
            Error::BadFace(_) => "BadFace",
            Error::FanInvalid(_) => "FanInvalid",
            Error::WrongArity { .. } => "WrongArity",
            Error::OmegaNotAmpleOnOrbit(_) => "OmegaNotAmpleOnOrbit",
            Error::UnknownName(_) => "UnknownName",
            Error::BadParams(_) => "BadParams",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::InvalidDocument(_) => "InvalidDocument",
            Error::UnknownClass(_) => "UnknownClass",
        }
    }
}
