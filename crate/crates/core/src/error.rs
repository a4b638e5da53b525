use thiserror::Error;

/// Errors surfaced by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    #[error("the given set of oriented separations is not a star")]
    NotAStar,
    #[error("the given set of separations is not nested")]
    NotNested,
    #[error("the separation is not proper")]
    NotProper,
    #[error("a star separator is split by the separation; the input is not a torso separation")]
    SeparatorSplit,
    #[error("cubic candidate must have exactly four vertices, got {0}")]
    WrongSize(usize),
    #[error("the vertex set is not cubic")]
    NotCubic,
    #[error("minor-map composition mismatch: codomain of the first map differs from the domain of the second")]
    DomainMismatch,
    #[error("tangle is inconsistent at separator {0}")]
    Inconsistent(String),
    #[error("neither orientation of the separation is forced")]
    NotForced,
    #[error("graph is not internally 4-connected")]
    NotInternally4Connected,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("graph is not quasi 4-connected")]
    NotQuasi4Connected,
    #[error("classification requires a 3-connected graph and a proper 3-separation")]
    NotApplicable,
    #[error("the tangles admit no distinguisher under the stated preconditions")]
    NoDistinguisher,
    #[error("faithful torso map construction failed: {0}")]
    ConstructionFailure(String),
    #[error("no splitting star with a 3-connected torso is included in the tangle")]
    NoSuchTorso,
    #[error("the given orientation set is not a valid tangle")]
    InvalidTangle,
    #[error("decomposition theorem violated: {0}")]
    TheoremViolation(String),
    #[error("universality violated: {0}")]
    UniversalityViolation(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

pub type Result<T> = std::result::Result<T, Error>;
