use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("invalid ring element {value:?} for {ring}")]
    InvalidElement { ring: String, value: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("not a module map: relations of the source are not carried into relations of the target")]
    NotAModuleMap,

    #[error("invalid complex at degree {degree}: {message}")]
    InvalidComplex { degree: i64, message: String },

    #[error("invalid chain map at degree {degree}: {message}")]
    InvalidChainMap { degree: i64, message: String },

    #[error("invalid homotopy at degree {degree}: {message}")]
    InvalidHomotopy { degree: i64, message: String },

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("amplitude violation: {0}")]
    AmplitudeViolation(String),

    #[error("invalid Lefschetz data at degree {degree}: {message}")]
    InvalidLefschetz { degree: i64, message: String },

    #[error("hard Lefschetz fails at n={0}")]
    HardLefschetzViolation(i64),

    #[error("internal witness failure: {0}")]
    InternalWitnessFailure(String),

    #[error("invalid generator profile: {0}")]
    InvalidProfile(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
