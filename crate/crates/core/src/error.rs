use thiserror::Error;

/// Errors raised by constructors, searches and checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed algebra document at {at}: {message}")]
    Malformed { at: String, message: String },

    #[error("out-of-range entry {value} in operation `{op}` at {coordinate:?} (size {size})")]
    OutOfRange {
        op: String,
        coordinate: Vec<usize>,
        value: u64,
        size: usize,
    },

    #[error("zero symbol `{symbol}` evaluates to {value}, expected 0")]
    ZeroNotPoint { symbol: String, value: usize },

    /// `{0}` must be a subalgebra, or zero maps would not be homomorphisms.
    #[error("operation `{op}` sends 0 to {value}; every operation must fix 0")]
    ZeroNotFixed { op: String, value: usize },

    #[error("signature mismatch between `{left}` and `{right}`")]
    SignatureMismatch { left: String, right: String },

    #[error("{what}: expected `{expected}`, found `{found}`")]
    ShapeMismatch {
        what: &'static str,
        expected: String,
        found: String,
    },

    #[error("map is not a homomorphism `{dom}` -> `{cod}`: {reason}")]
    NotAHom { dom: String, cod: String, reason: String },

    #[error("cap `{cap}` exceeded: required {required}, limit {limit}")]
    CapExceeded {
        cap: &'static str,
        required: u64,
        limit: u64,
    },

    #[error("morphism is not central")]
    NotCentral,

    #[error("`{0}` is not a commutative object")]
    NotCommutative(String),

    #[error("ambient pair is not centralic: {0}")]
    NotCentralic(String),

    #[error("internal consistency fault: {0}")]
    Inconsistent(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
