use thiserror::Error;

use crate::poset::DiamondId;

/// Errors raised by the toolkit. Axiom violations found by the validators are
/// reported as data and never surface here.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fixture too small for required disjointness")]
    FixtureTooSmall,
    #[error("invalid base complex: {0}")]
    InvalidComplex(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("no such diamond: {0}")]
    NoSuchDiamond(DiamondId),
    #[error("non-composable paths")]
    NonComposable,
    #[error("invalid path: ({0}, {1}) is not a comparable pair")]
    InvalidPath(DiamondId, DiamondId),
    #[error("cover too coarse: {0}")]
    CoverTooCoarse(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("poset not pathwise connected")]
    NotPathwiseConnected,
    #[error("not a loop at base")]
    NotALoop,
    #[error("open path")]
    OpenPath,
    #[error("cocycle not total: missing pair ({0}, {1})")]
    CocycleNotTotal(DiamondId, DiamondId),
    #[error("not a cocycle on this poset (homotopy violation)")]
    HomotopyViolation,
    #[error("cocycle is not topologically trivial")]
    NotTopologicallyTrivial,
    #[error("incomplete path frame: no path to {0}")]
    IncompleteFrame(DiamondId),
    #[error("incompatible dimensions: {0} vs {1}")]
    IncompatibleDimensions(usize, usize),
    #[error("holonomy algebra not a factor (center has dimension {0})")]
    NotAFactor(usize),
    #[error("not flat: relator {0} does not map to the identity")]
    NotFlat(usize),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("potential not closed: face {0} has boundary sum {1}")]
    PotentialNotClosed(usize, f64),
    #[error("diamond support not contractible: {0}")]
    SupportNotContractible(DiamondId),
    #[error("primitive mismatch (support not connected?) at pair ({0}, {1})")]
    PrimitiveMismatch(DiamondId, DiamondId),
    #[error("torsion not supported")]
    TorsionNotSupported,
    #[error("character has {got} values, expected {expected}")]
    CharacterArity { expected: usize, got: usize },
    #[error("insufficient causal disjointness")]
    InsufficientDisjointness,
    #[error("statistics undefined for this cocycle")]
    StatisticsUndefined,
    #[error("power must be nonzero")]
    ZeroPower,
    #[error("word is not localized in {0}")]
    NotLocalized(DiamondId),
    #[error("loop value is not a scalar")]
    NonScalarHolonomy,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("integer overflow during elimination")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
