//! Error type shared across the crate.
//!
//! Every failure carries the data needed to point at the first violation
//! (a triple, an element, a subgroup id) so CLI output can name it.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotAssociative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("NoIdentity: no two-sided identity element")]
    NoIdentity,
    #[error("NoInverse: element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("MalformedTable: {reason}")]
    MalformedTable { reason: String },
    #[error("NotAPermutation: generator {index} is not a bijection")]
    NotAPermutation { index: usize },
    #[error("GroupTooLarge: closure exceeded the bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("UnknownName: unknown builtin group `{name}`")]
    UnknownName { name: String },
    #[error("UnknownSubgroupId: `{id}` does not name a subgroup")]
    UnknownSubgroupId { id: String },
    #[error("NotASubgroup: element set is not a subgroup")]
    NotASubgroup,
    #[error("InvalidModulus: {p} is not prime")]
    InvalidModulus { p: u64 },
    #[error("DimensionMismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("FamilyInvalid: {reason}")]
    FamilyInvalid { reason: String },
    #[error("NotDownwardClosed: support misses subgroup of member {member}")]
    NotDownwardClosed { member: usize },
    #[error("CategoryMismatch: modules live over different categories")]
    CategoryMismatch,
    #[error("NotSubfamily: object {object} of the target family is missing from the source")]
    NotSubfamily { object: usize },
    #[error("NotSuperfamily: object {object} of the source family is missing from the target")]
    NotSuperfamily { object: usize },
    #[error("InducedMapFailure: structure map does not preserve the kernel at object {object}")]
    InducedMapFailure { object: usize },
    #[error("NotFunctorial: {context}")]
    NotFunctorial { context: String },
    #[error("DegreeBoundExceeded: {context}")]
    DegreeBoundExceeded { context: String },
    #[error("LiftFailed: no lift in degree {degree} at object {object}")]
    LiftFailed { degree: usize, object: usize },
    #[error("NotEquivariant: map fails to commute with the action of element {element}")]
    NotEquivariant { element: usize },
    #[error("NotSurjective: rank {rank} < {needed}")]
    NotSurjective { rank: usize, needed: usize },
    #[error("NotNormal: subgroup is not normal")]
    NotNormal,
    #[error("WindowTooShort: window {len} cannot support offset {offset}")]
    WindowTooShort { len: usize, offset: usize },
    #[error("BadSpec: {reason}")]
    BadSpec { reason: String },
    #[error("Io: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name, used for CLI exit reporting.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotAssociative { .. } => "NotAssociative",
            Error::NoIdentity => "NoIdentity",
            Error::NoInverse { .. } => "NoInverse",
            Error::MalformedTable { .. } => "MalformedTable",
            Error::NotAPermutation { .. } => "NotAPermutation",
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::UnknownName { .. } => "UnknownName",
            Error::UnknownSubgroupId { .. } => "UnknownSubgroupId",
            Error::NotASubgroup => "NotASubgroup",
            Error::InvalidModulus { .. } => "InvalidModulus",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::FamilyInvalid { .. } => "FamilyInvalid",
            Error::NotDownwardClosed { .. } => "NotDownwardClosed",
            Error::CategoryMismatch => "CategoryMismatch",
            Error::NotSubfamily { .. } => "NotSubfamily",
            Error::NotSuperfamily { .. } => "NotSuperfamily",
            Error::InducedMapFailure { .. } => "InducedMapFailure",
            Error::NotFunctorial { .. } => "NotFunctorial",
            Error::DegreeBoundExceeded { .. } => "DegreeBoundExceeded",
            Error::LiftFailed { .. } => "LiftFailed",
            Error::NotEquivariant { .. } => "NotEquivariant",
            Error::NotSurjective { .. } => "NotSurjective",
            Error::NotNormal => "NotNormal",
            Error::WindowTooShort { .. } => "WindowTooShort",
            Error::BadSpec { .. } => "BadSpec",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
