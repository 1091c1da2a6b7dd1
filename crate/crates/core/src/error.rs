use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not equivariant: {0}")]
    NotEquivariant(String),
    #[error("foot mismatch: {0}")]
    FootMismatch(String),
    /// Functoriality failure of Mackey data, with the offending span pair.
    #[error("functoriality violated: {0}")]
    Functoriality(String),
    /// A Green functor or module axiom failed; the message names the cell.
    #[error("axiom {axiom} fails: {cell}")]
    Axiom { axiom: String, cell: String },
    /// An isomorphism witness failed to invert (an implementation fault).
    #[error("witness is not invertible: {0}")]
    NotInvertible(String),
    #[error("unbounded filtration: {0}")]
    UnboundedFiltration(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn axiom(axiom: impl Into<String>, cell: impl Into<String>) -> Error {
        Error::Axiom {
            axiom: axiom.into(),
            cell: cell.into(),
        }
    }
}
