use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbound variable {0}")]
    UnboundVariable(String),

    #[error("arity error: {0}")]
    Arity(String),

    #[error("open formula: free variables {0:?}")]
    OpenFormula(Vec<String>),

    #[error("unassigned free variable x{0}")]
    UnassignedVariable(u32),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inputs are isomorphic")]
    IsomorphicInputs,

    #[error("invalid Turing machine: {0}")]
    InvalidMachine(String),

    #[error("machine did not halt within {0} steps")]
    Timeout(usize),

    #[error("strategy returned an illegal move: {0}")]
    IllegalMove(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
