use thiserror::Error;

use crate::qc::Prop25Report;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order relation has a cycle through `{0}` (input is not a T0 space)")]
    Cycle(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("operation is undefined on the empty space")]
    EmptySpace,
    #[error("operation is undefined on the empty complex")]
    EmptyComplex,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("height {0} is too large (at most 1 required)")]
    HeightTooLarge(usize),
    #[error("wrong height: {found} (required {required})")]
    WrongHeight {
        required: &'static str,
        found: usize,
    },
    #[error("wrong dimension: {found} (required {required})")]
    WrongDimension {
        required: &'static str,
        found: usize,
    },
    #[error("`{0}` is not a maximal point")]
    NotMaximal(String),
    #[error("no qc-reduction on the pair ({0}, {1})")]
    NotReducible(String, String),
    #[error("`{0}` is not an a-point")]
    NotAPoint(String),
    #[error("space is disconnected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid trace at move {step}: {reason}")]
    InvalidTrace { step: usize, reason: String },
    #[error("H_2 is nonzero, the three conditions need not agree: {0:?}")]
    HypothesisViolated(Prop25Report),
    #[error("the three qc conditions disagree although H_2 = 0: {0:?}")]
    Prop25Violation(Prop25Report),
    #[error("strong asphericity ({strong_aspherical}) disagrees with collapsibility to dimension 1 ({collapses})")]
    CharacterizationViolated {
        strong_aspherical: bool,
        collapses: bool,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
