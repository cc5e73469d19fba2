use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two boundaries that must be equal are not. Both words are rendered.
    BoundaryMismatch {
        left: String,
        right: String,
    },
    /// A declared factor split does not divide the boundary it was applied to.
    SplitMismatch {
        boundary: String,
        split: String,
    },
    /// An attribute lives on a different object than required.
    CarrierMismatch {
        expected: String,
        found: String,
    },
    /// An exhaustive enumeration would exceed its budget.
    BudgetExceeded {
        what: String,
        required: u128,
        limit: u128,
    },
    InvalidBudget(String),
    InvalidAtom(String),
    /// A label, tuple or index does not denote an element of the object.
    UnknownElement {
        object: String,
        element: String,
    },
    /// A family of attributes declared as an antichain has nested members.
    NotAntichain {
        nested: String,
        within: String,
    },
    /// A process table is not a total single-valued map on states.
    NotAFunction {
        process: String,
        detail: String,
    },
    /// No unique substrate has the given state set.
    UnknownSubstrate(String),
    /// Two computations that must agree did not; always a bug.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BoundaryMismatch { left, right } => {
                write!(f, "boundary mismatch: {left} vs {right}")
            }
            Error::SplitMismatch { boundary, split } => {
                write!(f, "split {split} does not end boundary {boundary}")
            }
            Error::CarrierMismatch { expected, found } => {
                write!(
                    f,
                    "attribute carrier mismatch: expected {expected}, found {found}"
                )
            }
            Error::BudgetExceeded {
                what,
                required,
                limit,
            } => write!(
                f,
                "budget exceeded for {what}: needs {required}, limit {limit}"
            ),
            Error::InvalidBudget(msg) => write!(f, "invalid budget: {msg}"),
            Error::InvalidAtom(msg) => write!(f, "invalid atom: {msg}"),
            Error::UnknownElement { object, element } => {
                write!(f, "{element} is not an element of {object}")
            }
            Error::NotAntichain { nested, within } => {
                write!(f, "not an antichain: {nested} is nested in {within}")
            }
            Error::NotAFunction { process, detail } => {
                write!(f, "process {process} is not a total function: {detail}")
            }
            Error::UnknownSubstrate(what) => write!(f, "no unique substrate for {what}"),
            Error::Inconsistent(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
