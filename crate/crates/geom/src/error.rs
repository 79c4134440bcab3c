use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(i64, i64),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(i64),
    #[error("duplicate point id {0}")]
    DuplicateId(i64),
    #[error("malformed contact type {0}: {1}")]
    MalformedContactType(String, &'static str),
    #[error("more than four contact pairs on one square")]
    TooManyContacts,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}
