//! Crate-wide error type.
//!
//! Every fallible operation in this crate reports one of these variants;
//! nothing panics on user input, and internal cross-checks that fail turn
//! into [`Error::InternalInconsistency`] rather than silently wrong output.

use thiserror::Error;

/// Errors produced by construction, combinatorics, and cohomology routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Requested Dynkin type/rank pair is outside the supported list.
    /// E8, F4 and G2 are deliberately excluded: they have no minuscule node.
    #[error("unsupported type: {0}")]
    UnsupportedType(String),

    /// A simple-root index outside `1..=rank`.
    #[error("invalid node {node} for a rank-{rank} system")]
    InvalidNode { node: usize, rank: usize },

    /// Operation requires a minuscule node.
    #[error("node {node} is not minuscule: {context}")]
    NotMinuscule { node: usize, context: String },

    /// Two Weyl elements or classes from different ambient systems.
    #[error("mismatched root systems: {0}")]
    MismatchedRootSystems(String),

    /// Matrix/vector shape disagreement.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A polynomial-matrix entry violates its homogeneity profile, or two
    /// profiles are incompatible for the requested operation.
    #[error("degree profile mismatch: {0}")]
    ProfileMismatch(String),

    /// Consecutive maps of a complex do not compose to zero.
    #[error("not a complex: consecutive maps have nonzero composition")]
    NotAComplex,

    /// A presentation map fails its pointwise-rank requirement, so the
    /// presented sheaf is not a vector bundle.
    #[error("presentation not locally free: {0}")]
    NotLocallyFree(String),

    /// The truncation ladder hit its cap before the stability certificate
    /// could be issued.
    #[error("cutoff exhausted: no stable answer up to truncation bound {max}")]
    CutoffExhausted { max: i64 },

    /// Restricting a presentation to a line broke pointwise exactness.
    #[error("restriction not locally free along chosen line")]
    RestrictionDegenerate,

    /// The chain-endomorphism space of a presentation does not reach every
    /// global endomorphism section, so the wedge search would be incomplete.
    #[error("presentation inadequate for wedge test: {0}")]
    InadequatePresentation(String),

    /// Three-term inputs where only two-term presentations are supported.
    #[error("monad presentation unsupported here: {0}")]
    MonadUnsupported(String),

    /// Wedge gluing data is not a valid isomorphism over the shared line.
    #[error("invalid gluing: {0}")]
    GluingInvalid(String),

    /// An argument is outside its documented range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An internal cross-check failed. This is a bug guard: the library
    /// refuses to return an answer it cannot certify.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
