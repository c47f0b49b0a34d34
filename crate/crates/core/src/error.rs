use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice must have at least one element")]
    Empty,
    #[error("element index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{n} elements exceeds the size cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("not a partial order: {x} and {y} lie on a cycle")]
    NotAPartialOrder { x: usize, y: usize },
    #[error("not a lattice: elements {x} and {y} have no unique {missing}")]
    NotALattice { x: usize, y: usize, missing: Bound },

    #[error("bad gadget configuration: {0}")]
    BadConfiguration(String),
    #[error("evaluation of FL(P) at ({a}; {b}, {c}) is not a homomorphism")]
    UniversalityFailure { a: usize, b: usize, c: usize },
    #[error("M3-N5 cross-check disagreement: {0}")]
    Disagreement(String),
    #[error("structure theorem sides disagree: {0}")]
    TheoremDisagreement(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("absorbing element {element} did not extend the ladder by one rung")]
    AbsorptionFailed { element: usize },
    #[error("counterexample found: {0}")]
    CounterexampleFound(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound generator `{0}`")]
    UnboundGenerator(String),

    #[error("bad attachment: {0}")]
    BadAttachment(String),
    #[error("{a} is not covered by {b}")]
    NotACover { a: usize, b: usize },
    #[error("chain exhausted: {0}")]
    ChainExhausted(String),
    #[error("ladder extraction failed: {0}")]
    ExtractionFailed(String),
    #[error("split obstruction{}: {reason}", element.map(|e| format!(" at {e}")).unwrap_or_default())]
    SplitObstruction { element: Option<usize>, reason: String },
    #[error("bad decoration: {0}")]
    Decoration(String),

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Bound::Join => "least upper bound",
            Bound::Meet => "greatest lower bound",
        })
    }
}
