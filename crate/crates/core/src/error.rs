use thiserror::Error;

/// Errors raised while constructing or analysing rings, actions and extensions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{what} of order {order} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {modulus} is reducible over F_{p}: divisible by {factor}")]
    ReducibleModulus {
        p: u64,
        modulus: String,
        factor: String,
    },
    #[error("ring axiom '{axiom}' fails at {witness}")]
    RingAxiom { axiom: &'static str, witness: String },
    #[error("module axiom '{axiom}' fails at {witness}")]
    ModuleAxiom { axiom: &'static str, witness: String },
    #[error("the zero module is not allowed here")]
    ZeroModule,
    #[error("objects live in different ambient rings")]
    RingMismatch,
    #[error("not a subring: {0}")]
    NotSubring(String),
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("not an automorphism: '{axiom}' fails at {witness}")]
    NotAutomorphism { axiom: &'static str, witness: String },
    #[error("subring is not invariant under the action: {0}")]
    NotInvariant(String),
    #[error("orbit of the ideal is not a singleton: it also contains {0}")]
    OrbitNotSingleton(String),
    #[error("unknown element label '{0}'")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("inconsistent classification: {0}")]
    Inconsistent(String),
    #[error("incompatible instance: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, RingError>;
