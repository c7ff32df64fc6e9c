use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("-1 has no square root modulo {p}^{k}")]
    NoRoot { p: u64, k: u32 },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("operator is not monomial: {0}")]
    NotMonomial(String),

    #[error("character is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("denominator x+z+xyz is not invertible at ({x}, {y}, {z})")]
    DenominatorNotInvertible { x: u64, y: u64, z: u64 },

    #[error("map is not bijective: {0}")]
    NotBijective(String),

    #[error("partial transpose t{dirs} does not exist: {reason}")]
    TransposeUndefined { dirs: String, reason: String },

    #[error("guard `{guard}` exceeded: {size} > {limit}")]
    TooLarge { guard: &'static str, size: f64, limit: f64 },

    #[error("inconsistent coloring: {0}")]
    Inconsistent(String),

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("edge `{edge}` has an unattached {end} end")]
    DanglingEnd { edge: String, end: &'static str },

    #[error("line {line}: {end} end of edge `{edge}` is attached twice")]
    DoubleAttachment { line: usize, edge: String, end: &'static str },

    #[error("line {line}: vertex `{vertex}`: {msg}")]
    BadLinePairing { line: usize, vertex: String, msg: String },

    #[error("graph has unattached edge ends; the partition function needs a closed graph")]
    OpenGraph,

    #[error("not a quandle: {0}")]
    NotAQuandle(String),

    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { line, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Name of the guard when this is a `TooLarge` error.
    pub fn guard_name(&self) -> Option<&'static str> {
        match self {
            Error::TooLarge { guard, .. } => Some(guard),
            _ => None,
        }
    }
}

/// Fails with `TooLarge` when `size > limit`.
pub(crate) fn guard(name: &'static str, size: f64, limit: f64) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { guard: name, size, limit })
    } else {
        Ok(())
    }
}
