//! Engine-wide error type.

use std::fmt;

use thiserror::Error;

use crate::coding::CodingError;
use crate::proof::{CheckError, DerivationError, ElabError};
use crate::syntax::{Formula, Term, Var};

/// What a suspended replay run asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DemandKey {
    Term(Term),
    Formula(Formula),
    Member(usize),
}

impl fmt::Display for DemandKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DemandKey::Term(t) => write!(f, "term {t}"),
            DemandKey::Formula(a) => write!(f, "formula {a}"),
            DemandKey::Member(i) => write!(f, "member {i}"),
        }
    }
}

/// Control token raised by a replay handler's lookup function when the
/// requested index is not cached yet. Only the handler with the same id
/// catches it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Demand {
    pub handler: u64,
    pub key: DemandKey,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Elab(#[from] ElabError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error("truth value does not fit `{formula}`: expected {expected}")]
    Shape { formula: Formula, expected: &'static str },
    #[error("malformed subset derivation: {0}")]
    MalformedSubset(String),
    #[error("unhandled demand for {} (handler {})", .0.key, .0.handler)]
    Demand(Demand),
    #[error("replay bound of {bound} exceeded; demands: {}", .trace.join(", "))]
    ReplayBound { bound: usize, trace: Vec<String> },
    #[error("unbound variable `{0}`")]
    Unbound(Var),
    #[error("`{formula}` is outside the fragment handled by the {engine} engine")]
    Unsupported { formula: Formula, engine: &'static str },
    #[error("witness `{name}` proves `{declared}`, not `{requested}`")]
    WitnessMismatch {
        name: String,
        declared: Formula,
        requested: Formula,
    },
    #[error("unknown witness `{0}`")]
    UnknownWitness(String),
    #[error("theory member index {0} out of range")]
    MemberOutOfRange(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
