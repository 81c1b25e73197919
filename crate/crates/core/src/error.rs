use thiserror::Error;

/// Errors raised by the algebra and logic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("malformed cycle notation {text:?}: {reason}")]
    CycleNotation { text: String, reason: String },

    #[error("group too large: closure exceeds the order cap {cap}")]
    GroupTooLarge { cap: usize },

    #[error("unknown group name {0:?}")]
    UnknownGroup(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("elements or subsets belong to different groups")]
    GroupMismatch,

    #[error("element index {index} out of range for a group of order {order}")]
    InvalidElement { index: usize, order: usize },

    #[error("subset is not a subgroup")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("zero exponent literal at position {pos}")]
    ZeroExponent { pos: usize },

    #[error("letter {0:?} has no assigned value")]
    UnassignedLetter(String),

    #[error("generator {0:?} has no assigned value")]
    UnassignedGenerator(String),

    #[error("evaluation budget exceeded: {required} evaluations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("formula has free variables {0:?}; expected exactly one")]
    FreeVariables(Vec<String>),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("boolean combination is not positive")]
    NotPositive,

    #[error("independent choice system contains an empty member")]
    EmptyMember,

    #[error("collection admits no valid order")]
    NoValidOrder,

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("{m} is not coprime to the group order {order}")]
    NotCoprime { m: i64, order: usize },

    #[error("formula is not an ena formula")]
    NotEna,

    #[error("symbolic elements use different presentations")]
    PresentationMismatch,

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
