//! Exact-arithmetic engine for Nichols algebras of diagonal type and the
//! braided Lie algebras sitting inside them.
//!
//! Everything is computed over cyclotomic fields `Q(zeta_L)` with rational
//! coefficients; no floating point enters any decision (floats appear only in
//! the advisory modulus estimate and a test oracle). Degree caps are always
//! explicit, and a capped computation never claims a dimension is infinite —
//! it reports what was verified and through which degree.
//!
//! Module layout: [`cyclo`] (scalars), [`linalg`] (sparse exact elimination),
//! [`braiding`] (diagonal braidings and their diagrams), [`free`] (free
//! algebra, brackets, skew derivations), [`tower`] (the graded quotient and
//! its normal forms), [`lie`] (bracket spans, structure constants, derived
//! series, closed-form bounds), [`pbw`] (Lyndon super-letters and power
//! indices), and [`verify`] (the named check suites behind `nla verify`).

pub mod cyclo;
pub use cyclo::{CycloField, CycloScalar, Order, RootSpec, ScalarLit};

/// Errors shared by every module of the engine.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("order must be a positive integer")]
    InvalidOrder,
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("braiding entry ({0},{1}) must be nonzero")]
    InvalidBraiding(usize, usize),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("degree {degree} exceeds tower cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not decidable within the configured cap: {0}")]
    NotWithinCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
pub mod linalg;
pub use linalg::{AddOutcome, Eliminator, SparseVec};
pub mod braiding;
pub use braiding::{BraidedSpace, CartanType, GeneralizedDynkinDiagram, MultiDegree};
pub mod free;
pub use free::{BracketKind, FreeElement, Side, Word};

pub mod tower;
pub use tower::{symmetrizer_rank, MultiVec, NicholsTower, Nilpotency, TotalDim};

pub mod lie;
pub use lie::{
    bound, check_f_plus_l, derived_series, lie_tower, membership, structure_constants, Bound,
    BoundParams, DerivedSeries, FlVerdict, LieTower, StructureConstants,
};

pub mod pbw;
pub use pbw::{
    decode_letter_code, hard_superletters, is_lyndon, lyndon_words, m_infinity_scan,
    restricted_pbw_failure, standard_bracketing, ScanCandidate, SuperLetter,
};

pub mod verify;
pub use verify::{
    assemble_report, fixture, fixture_space, fixture_tower, run_all, run_suite, Check, Fixture,
    Report, Status, SuiteReport, FIXTURES, SUITES,
};
