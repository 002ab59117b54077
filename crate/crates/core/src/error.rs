use std::fmt;

use thiserror::Error;

fn format_cycle(cycle: &[String]) -> String {
    let mut parts = cycle.to_vec();
    if let Some(first) = cycle.first() {
        parts.push(first.clone());
    }
    parts.join(" <= ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A pair that lacks a least upper or greatest lower bound, or a missing extremum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MissingBound {
    NoBottom,
    NoTop,
    NoJoin(String, String),
    NoMeet(String, String),
}

impl fmt::Display for MissingBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MissingBound::NoBottom => write!(f, "no least element"),
            MissingBound::NoTop => write!(f, "no greatest element"),
            MissingBound::NoJoin(a, b) => write!(f, "{a} and {b} have no least upper bound"),
            MissingBound::NoMeet(a, b) => write!(f, "{a} and {b} have no greatest lower bound"),
        }
    }
}

/// The two five-element lattices whose presence rules out distributivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenSublattice {
    /// The diamond.
    M3,
    /// The pentagon.
    N5,
}

impl fmt::Display for ForbiddenSublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenSublattice::M3 => f.write_str("M3"),
            ForbiddenSublattice::N5 => f.write_str("N5"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupFailure {
    Bottom { image: String },
    Join { x: String, y: String },
}

impl fmt::Display for SupFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupFailure::Bottom { image } => write!(f, "bottom is sent to {image}"),
            SupFailure::Join { x, y } => write!(f, "join of {x} and {y} is not preserved"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributorViolation {
    /// `x r y` and `y <= y2` but not `x r y2`.
    TargetUpClosure { x: String, y: String, y2: String },
    /// `x <= x2` and `x2 r y` but not `x r y`.
    SourceDownClosure { x: String, x2: String, y: String },
}

impl fmt::Display for DistributorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributorViolation::TargetUpClosure { x, y, y2 } => {
                write!(f, "({x},{y}) is related and {y} <= {y2}, but ({x},{y2}) is not")
            }
            DistributorViolation::SourceDownClosure { x, x2, y } => {
                write!(f, "{x} <= {x2} and ({x2},{y}) is related, but ({x},{y}) is not")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("order is not antisymmetric: cycle {}", format_cycle(.cycle))]
    AntisymmetryViolation { cycle: Vec<String> },
    #[error("enumeration bound exceeded: requested {requested}, bound is {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("{what} would have more than {bound} elements")]
    SizeOverflow { what: String, bound: usize },
    #[error("not monotone: {x} <= {x2} but their images are not ordered")]
    NotMonotone { x: String, x2: String },
    #[error("assignment has {found} entries, source has {expected} elements")]
    AssignmentLength { expected: usize, found: usize },
    #[error("assignment sends {element} outside the target")]
    AssignmentRange { element: String },
    #[error("not a lattice: {0}")]
    NotALattice(MissingBound),
    #[error("not distributive: {kind} sublattice on {}", .elements.join(", "))]
    NotDistributive { kind: ForbiddenSublattice, elements: Vec<String> },
    #[error("not sup-preserving: {0}")]
    NotSupPreserving(SupFailure),
    #[error("not a lattice homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not a distributor: {0}")]
    NotADistributor(DistributorViolation),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not an adjunction: {0}")]
    NotAnAdjunction(String),
    #[error("not idempotent: ({x},{y}) differs between e and e;e")]
    NotIdempotent { x: String, y: String },
    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
}
