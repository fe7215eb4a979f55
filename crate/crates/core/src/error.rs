use crate::graph::Edge;
use crate::rational::Rational;

/// Every failure the workbench can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("DisconnectedInput: operation requires a connected graph")]
    DisconnectedInput,
    #[error("UnknownEdge: {0} is not an edge of the graph")]
    UnknownEdge(Edge),
    #[error("UnknownVertex: vertex {vertex} out of range for n={n}")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("InvalidGraph: {0}")]
    InvalidGraph(String),
    #[error("SelfRequest: player {0} cannot request an edge to herself")]
    SelfRequest(usize),
    #[error("InvalidProfile: {0}")]
    InvalidProfile(String),
    #[error("EmptyGraph: adversary needs at least one edge")]
    EmptyGraph,
    #[error("InvalidTable: edge {0} is not in the graph")]
    TableEdgeOutside(Edge),
    #[error("InvalidTable: negative probability on {0}")]
    TableNegative(Edge),
    #[error("InvalidTable: probabilities sum to {0}, expected 1")]
    TableTotal(Rational),
    #[error("DistributionMismatch: distribution puts mass on {0}, which is not an edge")]
    DistributionMismatch(Edge),
    #[error("NotEssential: profile has a redundant or useless request {0:?}")]
    NotEssential((usize, usize)),
    #[error("NonPositiveAlpha: link cost must be positive, got {0}")]
    NonPositiveAlpha(Rational),
    #[error("SearchTooLarge: {candidates} candidates exceed the budget of {budget}")]
    SearchTooLarge { candidates: u128, budget: u128 },
    #[error("TooSmall: {what} requires n >= {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("BadShape: {0}")]
    BadShape(String),
    #[error("ConceptMismatch: {0}")]
    ConceptMismatch(String),
    #[error("RuleMismatch: concept {concept} is defined only under {rule}")]
    RuleMismatch { concept: &'static str, rule: &'static str },
    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
