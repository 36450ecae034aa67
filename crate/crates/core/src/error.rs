use thiserror::Error;

use crate::monomial::MAX_VARS;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable count {0} outside 1..={MAX_VARS}")]
    VariableCount(usize),
    #[error("row index {index} out of range for m = {m}")]
    RowOutOfRange { index: usize, m: usize },
    #[error("monomial {mask:#b} uses variables outside 0..{m}")]
    MonomialOutOfRange { mask: u32, m: usize },
    #[error("duplicate monomial {0}")]
    DuplicateMonomial(String),
    #[error("empty generating set")]
    EmptyCode,
    #[error("order r = {r} exceeds m = {m}")]
    OrderOutOfRange { r: usize, m: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("direction {b:#b} outside the {m}-variable space")]
    DirectionOutOfRange { b: u32, m: usize },
    #[error("variable {q} out of range for m = {m}")]
    VariableOutOfRange { q: usize, m: usize },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("permutation acts on {perm} variables but the code has {code}")]
    PermutationSize { perm: usize, code: usize },
    #[error("invalid design parameters: {0}")]
    InvalidDesign(String),
    #[error("dimension {requested} is not achievable; nearest achievable dimension above is {nearest}")]
    Unachievable { requested: usize, nearest: usize },
    #[error("level j = {j} outside 0..={max}")]
    LevelOutOfRange { j: usize, max: usize },
    #[error("no regular subgraph with the requested nesting exists")]
    NoRegularSubgraph,
    #[error("selection is not a regular subgraph of the stage graph")]
    NotRegular,
    #[error("erasure probability {0} outside [0, 1]")]
    ErasureProbability(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("code length {0} too large for exhaustive enumeration")]
    TooLongForEnumeration(usize),
    #[error("dimension k = {k} outside 1..={n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("number of trials must be positive")]
    NoTrials,
}
