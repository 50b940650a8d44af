use crate::bell::BellRangeError;
use crate::diagram::DiagramError;
use crate::polytope::PolytopeError;
use crate::quantum::QuantumError;
use crate::states::StateError;
use crate::urn::UrnError;

/// Any domain error raised by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Urn(#[from] UrnError),
    #[error(transparent)]
    Bell(#[from] BellRangeError),
}

impl Error {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Diagram(DiagramError::Syntax { .. }) => "syntax",
            Error::Diagram(_) => "diagram",
            Error::State(StateError::LimitExceeded { .. }) => "limit_exceeded",
            Error::State(_) => "state",
            Error::Polytope(_) => "polytope",
            Error::Quantum(_) => "quantum",
            Error::Urn(_) => "urn",
            Error::Bell(_) => "range",
        }
    }
}
