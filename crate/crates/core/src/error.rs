use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order contains a cycle through points {0} and {1}")]
    Cycle(usize, usize),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("point index {index} out of range for a poset of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("construction needs {requested} points, budget is {budget}")]
    SizeGuard { requested: u128, budget: usize },
    #[error("generated subframe needs at least one seed point")]
    EmptySeed,
    #[error("poset has no root")]
    NotRooted,
    #[error("search space of {estimated} exceeds budget {budget}")]
    SearchBudget { estimated: u128, budget: u128 },
    #[error("label `{0}` is not an atom (needs exactly one non-zero coordinate)")]
    NotAtom(String),
    #[error("cannot drop {drop} coordinates from a label of length {len}")]
    Length { drop: usize, len: usize },
    #[error("parse error at byte {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("variable `{0}` has no value in the valuation")]
    UnboundVariable(String),
    #[error("value belongs to a different poset")]
    PosetMismatch,
    #[error("point set is not upward closed (missing successor {0})")]
    NotUpwardClosed(usize),
    #[error("{0} is not of the form 2^m - 1 with m >= 1")]
    BadIndex(usize),
    #[error("invalid label `{0}`")]
    BadLabel(String),
    #[error("frame index must be at least 1")]
    ZeroDimension,
    #[error("map has {got} images, source has {expected} points")]
    MapLength { got: usize, expected: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
