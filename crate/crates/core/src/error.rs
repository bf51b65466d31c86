use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported base field size q = {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedQ(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {modulus:?} is reducible over F_{q}")]
    ReducibleModulus { q: u64, modulus: Vec<u8> },
    #[error("field F_{q}^{m} does not fit in 64-bit element encoding")]
    FieldTooLarge { q: u64, m: usize },
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration guard exceeded: {what} needs {needed} items, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: String,
        limit: u64,
    },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
