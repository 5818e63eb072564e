//! Error types shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("NotALattice: {0}")]
    NotALattice(String),
    #[error("NoBounds: {0}")]
    NoBounds(String),
    #[error("CycleDetected: {0}")]
    CycleDetected(String),
    #[error("SizeLimit: {0}")]
    SizeLimit(String),
    #[error("MixedLattices: {0}")]
    MixedLattices(String),
    #[error("OutOfInterval: {0}")]
    OutOfInterval(String),
    #[error("ElementBelowBase: {0}")]
    ElementBelowBase(String),
    #[error("NotBasic: {0}")]
    NotBasic(String),
    #[error("NotTotal: {0}")]
    NotTotal(String),
    #[error("NotInflator: {0}")]
    NotInflator(String),
    #[error("NotNucleus: {0}")]
    NotNucleus(String),
    #[error("NotDivision: {0}")]
    NotDivision(String),
    #[error("InvalidAllocation: {0}")]
    InvalidAllocation(String),
    #[error("InvalidAspect: {0}")]
    InvalidAspect(String),
    #[error("NotMorphism: {0}")]
    NotMorphism(String),
    #[error("NotInert: {0}")]
    NotInert(String),
    #[error("NotPrime: {0}")]
    NotPrime(String),
    #[error("GenerationFailed: {0}")]
    GenerationFailed(String),
    #[error("NotBasicOperator: {0}")]
    NotBasicOperator(String),
    #[error("InvalidSeq: {0}")]
    InvalidSeq(String),
    #[error("TrivialInterval: {0}")]
    TrivialInterval(String),
    #[error("UnknownElement: {0}")]
    UnknownElement(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
    /// A postcondition that holds on every idiom was violated; the ambient
    /// lattice is most likely not modular.
    #[error("InvariantViolation: {0}")]
    Invariant(String),
}

impl Error {
    /// The bare error name, used by the CLI for stable exit diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotALattice(_) => "NotALattice",
            Error::NoBounds(_) => "NoBounds",
            Error::CycleDetected(_) => "CycleDetected",
            Error::SizeLimit(_) => "SizeLimit",
            Error::MixedLattices(_) => "MixedLattices",
            Error::OutOfInterval(_) => "OutOfInterval",
            Error::ElementBelowBase(_) => "ElementBelowBase",
            Error::NotBasic(_) => "NotBasic",
            Error::NotTotal(_) => "NotTotal",
            Error::NotInflator(_) => "NotInflator",
            Error::NotNucleus(_) => "NotNucleus",
            Error::NotDivision(_) => "NotDivision",
            Error::InvalidAllocation(_) => "InvalidAllocation",
            Error::InvalidAspect(_) => "InvalidAspect",
            Error::NotMorphism(_) => "NotMorphism",
            Error::NotInert(_) => "NotInert",
            Error::NotPrime(_) => "NotPrime",
            Error::GenerationFailed(_) => "GenerationFailed",
            Error::NotBasicOperator(_) => "NotBasicOperator",
            Error::InvalidSeq(_) => "InvalidSeq",
            Error::TrivialInterval(_) => "TrivialInterval",
            Error::UnknownElement(_) => "UnknownElement",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Invariant(_) => "InvariantViolation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Verdict detail for the allocation/aspect/radical axiom checkers: which
/// law failed first and on what data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub witness: String,
}

impl std::fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at {}", self.axiom, self.witness)
    }
}
