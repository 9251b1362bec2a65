use thiserror::Error;

/// Errors raised by the cusp pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Puiseux pair ({n}, {m}): need gcd(n, m) = 1 and 2 <= n < m")]
    InvalidPair { n: u32, m: u32 },

    #[error("weighted orders differ: {left} vs {right}")]
    OrderMismatch { left: String, right: String },

    #[error("all generators are zero")]
    ZeroIdeal,

    #[error("standard basis computation did not settle below the horizon")]
    HorizonExhausted,

    #[error("f divides X(f) below the horizon")]
    FDividesXf,

    #[error("Puiseux recursion is inconsistent at t^{degree}: {reason}")]
    NoSolution { degree: u64, reason: String },

    #[error("differential values differ: {left} vs {right}")]
    ValueMismatch { left: String, right: String },

    #[error("equation is not in adapted form: {0}")]
    NotAdapted(String),

    #[error("residue index k = {0} is negative")]
    NegativeK(i64),

    #[error("{0} is not in the cuspidal set J")]
    NotInJ(u64),

    #[error("({a}, {b}) is not in the cuspidal set M")]
    NotInM { a: u32, b: u32 },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("semimodule basis {0:?} matches no case of the n = 4 classification")]
    Unclassifiable(Vec<u64>),

    #[error("final reduction of X(omega_{0})(f) vanished")]
    ReductionVanished(i32),

    #[error("axis decomposition is ambiguous: {0}")]
    AmbiguousAxis(String),

    #[error("numeric certificate could not exclude zero at {bits} bits")]
    Uncertified { bits: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
