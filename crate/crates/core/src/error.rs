use thiserror::Error;

pub type Result<T, E = PlatError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlatError {
    #[error("empty orthospace")]
    EmptySpace,

    #[error("invalid field parameter: {0}")]
    InvalidField(String),

    #[error("isotropic form: vector ({0}, {1}) has zero norm")]
    IsotropicForm(usize, usize),

    #[error("malformed space document at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("atom index {index} out of range for {size} atoms (pair #{pair})")]
    IndexOutOfRange {
        index: usize,
        size: usize,
        pair: usize,
    },

    #[error("pair [{0}, {1}] is listed more than once")]
    DuplicatePair(usize, usize),

    #[error("pair [{0}, {1}] is not in canonical order (need i < j)")]
    NonCanonicalPair(usize, usize),

    #[error("subsets belong to different carriers")]
    CarrierMismatch,

    #[error("carrier of {size} atoms exceeds the limit of {limit}")]
    TooManyAtoms { size: usize, limit: usize },

    #[error("closure system exceeds {limit} closed sets")]
    TooManyClosedSets { limit: usize },

    #[error("operand {0:?} is not closed")]
    NotClosed(Vec<usize>),

    #[error("operand {0:?} is not a subset of {1:?}")]
    NotSubset(Vec<usize>, Vec<usize>),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("not a permutation of {degree} atoms: {map:?}")]
    NotPermutation { degree: usize, map: Vec<usize> },

    #[error("automorphism search over {size} atoms exceeds the limit of {limit}; supply generators")]
    SearchLimit { size: usize, limit: usize },

    #[error("lattice of {size} elements exceeds the orthocomplementation search limit of {limit}")]
    LatticeTooLarge { size: usize, limit: usize },

    #[error("relation is not the sharp relation of its factors")]
    NotSharp,

    #[error("lift condition fails: preimage {preimage:?} of closed set {closed:?} is not closed")]
    LiftCondition {
        closed: Vec<usize>,
        preimage: Vec<usize>,
    },

    #[error("pairing image of atom {atom} lies in the sharp coatom of its diagonal atom")]
    PairingCondition { atom: usize },

    #[error("factor bijection violates condition ({condition}) at atom {atom:?}")]
    BijectionCondition { condition: String, atom: Option<usize> },

    #[error("invalid construction data: {0}")]
    InvalidData(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}
