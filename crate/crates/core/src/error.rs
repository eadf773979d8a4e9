use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("unknown generator name `{0}`")]
    UnknownGenerator(String),
    #[error("elements belong to different Coxeter groups")]
    GroupMismatch,
    #[error("resource cap exceeded: {what} (cap {cap})")]
    ResourceCap { what: String, cap: usize },
    #[error("window too small: {0}")]
    WindowExhausted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("c = {value} at entry ({row}, {col}) lies in a gap of P")]
    NotInP { row: usize, col: usize, value: f64 },
    #[error("rescaling factor {0} is not positive")]
    NonPositiveScale(f64),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. } | Error::WindowExhausted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
