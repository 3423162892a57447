use alloc::string::String;
use core::fmt;

/// Errors raised by constructors and operations of this crate.
///
/// Undecided questions are never errors; they surface as the `Unknown` /
/// `Inconclusive` variants of the respective decision types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not a prime number.
    NotPrime(u64),
    /// The field would be too large for table-driven arithmetic.
    FieldTooLarge { p: u64, k: u32 },
    /// A modulus polynomial is not monic.
    NotMonic,
    /// A modulus polynomial has an unsupported degree.
    ModulusDegree { degree: usize, min: usize },
    /// A modulus polynomial was shown to be reducible.
    ModulusReducible,
    /// Variable names in a tower must be distinct.
    DuplicateVariable(String),
    /// Division by zero.
    DivisionByZero,
    /// The operation needs a specific characteristic.
    WrongCharacteristic { expected: &'static str, found: u64 },
    /// Objects defined over different fields were combined.
    FieldMismatch,
    /// The target field is not an extension of the source in the tower sense.
    NotAnExtension,
    /// Matrix or vector dimensions do not fit together.
    DimensionMismatch { expected: usize, found: usize },
    /// A precondition of the named operation failed.
    Precondition { op: &'static str, reason: String },
    /// A structure failed one of its defining axioms.
    AxiomViolation { axiom: &'static str, detail: String },
    /// A computation produced a result that contradicts a proven fact. This
    /// signals inconsistent input or a bug, never an undecided question.
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn pre(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn axiom(axiom: &'static str, detail: impl Into<String>) -> Self {
        Error::AxiomViolation {
            axiom,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::FieldTooLarge { p, k } => {
                write!(f, "GF({p}^{k}) exceeds the supported size of 2^20 elements")
            }
            Error::NotMonic => write!(f, "modulus is not monic"),
            Error::ModulusDegree { degree, min } => {
                write!(f, "modulus has degree {degree}, expected at least {min}")
            }
            Error::ModulusReducible => write!(f, "modulus reducible"),
            Error::DuplicateVariable(v) => write!(f, "duplicate variable name `{v}`"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::WrongCharacteristic { expected, found } => {
                write!(f, "characteristic {found} not supported, need {expected}")
            }
            Error::FieldMismatch => write!(f, "objects live over different fields"),
            Error::NotAnExtension => write!(f, "target field does not extend the source field"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Precondition { op, reason } => write!(f, "{op}: {reason}"),
            Error::AxiomViolation { axiom, detail } => {
                write!(f, "axiom `{axiom}` violated: {detail}")
            }
            Error::Inconsistent(msg) => write!(f, "inconsistent computation: {msg}"),
        }
    }
}
