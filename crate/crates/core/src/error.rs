use std::io;

/// Errors produced while building groups, maps, blocks and solutions.
///
/// `Invariant` is reserved for failures of identities that must hold by
/// construction. Seeing one means a bug in this crate, not bad input.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("maps live on different groups")]
    DomainMismatch,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map is not an abelian map: {0}")]
    NotAbelianMap(String),
    #[error("{0} is out of range")]
    OutOfRange(String),
    #[error("no repeated operation within {cap} steps")]
    BlockCapExceeded { cap: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a failed
    /// mathematical check.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant(_) | Error::BlockCapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
