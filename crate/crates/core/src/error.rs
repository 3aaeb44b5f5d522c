use thiserror::Error;

/// Errors raised by the primitives and the record exchange protocol.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid padding")]
    Padding,
    #[error("input length {len} is not a multiple of the {block_size}-byte block")]
    Length { len: usize, block_size: usize },
    #[error("key length {got} bytes not accepted by {suite}")]
    KeyLength { suite: &'static str, got: usize },
    #[error("integer is not below the modulus")]
    MessageRange,
    #[error("modulus {0} exceeds the brute-force guard")]
    Scale(String),
    #[error("blinding factor shares a factor with the modulus")]
    Blinding,
    #[error("invalid key: {0}")]
    InvalidKey(String),
    #[error("record timestamp {got} precedes {last} for the same patient")]
    Order { last: u64, got: u64 },
    #[error("malformed record: {0}")]
    Record(String),
    #[error("replayed envelope: nonce already accepted")]
    Replay,
    #[error("signature does not verify")]
    Authenticity,
    #[error("decryption failed: {0}")]
    Decrypt(String),
    #[error("malformed frame: {0}")]
    Frame(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
