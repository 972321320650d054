use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} outside the supported range 1..=16")]
    UnsupportedDegree(usize),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: isize },
    #[error("modulus {0} is reducible over GF(2)")]
    ReducibleModulus(String),
    #[error("basis elements are not linearly independent over GF(2)")]
    DependentBasis,
    #[error("basis has {found} elements, expected {expected}")]
    BasisSize { expected: usize, found: usize },
    #[error("no self-dual basis found for GF(2^{0})")]
    SelfDualNotFound(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("length {0} is even; X^N-1 has repeated roots")]
    EvenLength(usize),
    #[error("length must be positive")]
    ZeroLength,
    #[error("splitting field GF(2^{0}) exceeds the degree-24 cap")]
    SplittingFieldTooLarge(usize),
    #[error("g does not divide X^{n}-1 (remainder {remainder})")]
    NotADivisor { n: usize, remainder: String },
    #[error("generator has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial degree {degree} too large (limit {limit})")]
    DegreeTooLarge { degree: isize, limit: usize },
    #[error("code is not weakly self-dual: g mod g_perp = {remainder}")]
    NotWeaklySelfDual { remainder: String },
    #[error("enumeration of 2^{dim} elements exceeds the budget of 2^{limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("operation requires a binary code")]
    NotBinary,
    #[error("operation requires a basis for GF(2^{0})")]
    MissingBasis(usize),
    #[error("register layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("circuit width {width} exceeds cap {cap}")]
    WidthOverflow { width: usize, cap: usize },
    #[error("feed polynomial must have constant term 1")]
    NonUnitConstant,
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("H on qubit {0} leaves the affine fragment (qubit not pinned to zero)")]
    UnsupportedH(usize),
    #[error("state vector width {width} exceeds the limit {limit}")]
    TooWide { width: usize, limit: usize },
    #[error("phase flips cannot be applied to an affine state")]
    PhaseErrorUnsupported,
    #[error("syndrome {0} has no entry in the correction table")]
    UncorrectableSyndrome(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("measurement of qubits {0:?} is not deterministic")]
    NondeterministicMeasurement(Vec<usize>),
}
