use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("cyclic order {0} is below 2")]
    OrderTooSmall(u64),
    #[error("cyclic order {order} does not divide the ring modulus {modulus}")]
    OrderNotDivisor { order: u64, modulus: u64 },
    #[error("{value} does not divide {modulus}")]
    NotDivisor { value: u64, modulus: u64 },
    #[error("ideal is not proper")]
    IdealNotProper,
    #[error("submodule not proper")]
    NotProper,
    #[error("submodule is zero")]
    ZeroSubmodule,
    #[error("parameter {name} must be at least 1, got {value}")]
    BadParameter { name: &'static str, value: u32 },
    #[error("n = {n} exceeds the n-absorbing cap {cap}")]
    AbsorbingCap { n: u32, cap: u32 },
    #[error("module has {size} elements, above the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("element {0} does not belong to the module")]
    ForeignElement(usize),
    #[error("operands live in different modules")]
    ModuleMismatch,
    #[error("rings differ: Z_{0} vs Z_{1}")]
    RingMismatch(u64, u64),
    #[error("generator images do not define a module homomorphism")]
    NotAHomomorphism,
    #[error("multiplicative set contains zero")]
    ZeroInMultiplicativeSet,
    #[error("module is not a multiplication module")]
    NotMultiplication,
    #[error("operation needs a coordinate module")]
    NeedsCoordinates,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("cZ needs c at least 2, got {0}")]
    BadGenerator(u64),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
