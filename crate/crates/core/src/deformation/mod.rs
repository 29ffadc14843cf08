//! Tangent-space dimensions and étale/ramification verdicts of the weight
//! map at a weight-one theta point, evaluated from how p splits.
//!
//! Everything here is a pure function of a [`SplittingProfile`] and a few
//! hypothesis flags; hypotheses the library cannot decide are echoed into an
//! assumption ledger rather than silently assumed.

mod live;
mod profile;
mod verdict;

pub use live::profile_from_fields;
pub use profile::{PrimeAboveP, SplittingProfile, StabClass};
pub use verdict::{
    etale_verdict, fiber_tangent_dim, geometry_verdict, ord_tangent_dim, ramified_verdict, AssumptionStatus,
    CmDescriptor, Contribution, GeometryVerdict, LedgerEntry, Outcome, RamificationFlags, RamifiedVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformationError {
    #[error("invalid splitting profile: {0}")]
    InvalidProfile(String),
    #[error("formula inapplicable: {0}")]
    Inapplicable(String),
    #[error("profile disagrees with the factorization: {0}")]
    ProfileMismatch(String),
    #[error("number field failure: {0}")]
    Field(String),
}
