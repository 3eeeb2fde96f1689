use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty label at byte {pos}")]
    EmptyLabel { pos: usize },
    #[error("reserved atom `1` used inside a composite decoration at byte {pos}")]
    ReservedAtom { pos: usize },
    #[error("vertex reference {0} does not resolve in this tree")]
    InvalidVertex(String),
    #[error("expected the empty forest or a single tree, got a forest with {0} trees")]
    NotATree(usize),
    #[error("operation `{0}` is undefined on the empty forest")]
    EmptyOperand(&'static str),
    #[error("{what}: {got} exceeds the guard of {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::EmptyLabel { .. } | Error::ReservedAtom { .. }
        )
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
