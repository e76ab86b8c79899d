//! Sequential revelation mechanisms for dynamic screening under limited
//! commitment.
//!
//! A principal trades with a unit mass of agents whose per-unit production
//! cost is private (low or high). Each period she posts a pooling contract
//! for the unrevealed and promises a sequence of separating contracts to
//! low-cost agents who come forward. Promises about future periods are not
//! binding: breaking one is observed by everyone and stops all future
//! revelation. This crate models that environment end to end:
//!
//! * [`env`] — primitives, first-best quantities, parameter validation;
//! * [`allocation`] — the eventually-stationary allocation data model and
//!   exact evaluation of agent values and principal continuation profits;
//! * [`constraints`] — non-reneging, incentive, and participation checks
//!   with per-period slacks and an implementability verdict;
//! * [`reward`] — rent frontloading: payment schedules, debt lengths,
//!   rent-splitting into full and partial reward periods;
//! * [`feasibility`] — the revelation feasibility condition, its curve,
//!   and the cost-gap threshold over linear-cost families;
//! * [`stationary`] — the explicit geometric-cohort construction and its
//!   one-period waiting certificate;
//! * [`optimizer`] — derivative-free profit search over assembled
//!   allocations plus qualitative structure checks;
//! * [`reneging`] — the post-reneging continuation payoff, its validity
//!   conditions, and deviation-gain bounds.

pub mod allocation;
pub mod constraints;
pub mod env;
pub mod feasibility;
mod interp;
mod numeric;
pub mod optimizer;
pub mod reneging;
pub mod reward;
pub mod stationary;

pub use allocation::{Allocation, Contract, PayoffReport, SeparatingSequence};
pub use constraints::{verify, VerificationReport};
pub use env::{AgentType, Environment, FirstBest};
pub use feasibility::{classify, Classification, FeasibilityResult};
pub use optimizer::{DecisionVector, OptimizeResult, StructureReport};
pub use reneging::PunishmentState;
pub use reward::RewardPlan;
pub use stationary::StationaryDesign;

/// Errors surfaced by construction, evaluation, and search routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),
    #[error("quantity {q} outside [0, {q_bar}]")]
    QuantityOutOfRange { q: f64, q_bar: f64 },
    #[error("surplus maximizer for the {0} type lies on the boundary of [0, q_bar]")]
    BoundaryMaximizer(&'static str),
    #[error("no cohort revealed at period {0}")]
    MissingCohort(usize),
    #[error("allocation is structurally invalid: {0}")]
    MalformedAllocation(String),
    #[error("rent target {target} is not deliverable: {reason}")]
    RentUndeliverable { target: f64, reason: String },
    #[error("assembly failed for cohort {cohort}: {reason}")]
    Assembly { cohort: usize, reason: String },
    #[error("no sign change of the feasibility gap over [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("config error: {0}")]
    Config(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
