//! Exact Schubert-calculus combinatorics for minuscule flag varieties and
//! exact sheaf-cohomology splitting tests for vector bundles on the
//! projective plane and on two planes glued along a line.
//!
//! The crate has two halves sharing one exact-arithmetic substrate:
//!
//! * **Combinatorics** ([`rootsys`], [`weyl`], [`schubert`]): root systems of
//!   types A, B, C, D, E6, E7 in exact rational coordinates; minimal coset
//!   representatives of parabolic quotients with their Bruhat covering
//!   relations and divisor-multiplication coefficients; and a classifier for
//!   the two-dimensional Schubert stratum of each minuscule variety (a
//!   projective plane, or two planes glued along a line).
//! * **Cohomology** ([`exactla`], [`sheafcoh`], [`splitcheck`]): vector
//!   bundles on the plane presented as kernels or cokernels of graded
//!   polynomial matrices; exact hypercohomology of such presentations via a
//!   truncated cover-complex method with a stability certificate; and
//!   splitting oracles — on the plane through the vanishing of
//!   `H^1(End(V)(-1))`, and on a wedge of two planes through an exact
//!   matched-endomorphism search with seeded randomized eigenvalue
//!   certificates.
//!
//! All arithmetic is exact (arbitrary-precision rationals); no floating
//! point is used anywhere. Simple roots are numbered 1-based in Bourbaki
//! order throughout the public API.

pub mod error;
pub mod exactla;
pub mod rootsys;
pub mod schubert;
pub mod sheafcoh;
pub mod splitcheck;
#[doc(hidden)]
pub mod testsupport;
pub mod weyl;

pub use error::{Error, Result};
pub use exactla::{Poly, PolyMatrix, Rat, RationalMatrix};
pub use rootsys::{RootSystem, Series};
pub use schubert::{classify_x2, X2Report};
pub use sheafcoh::{
    bott, complex_cohomology, complex_cohomology_with_cutoff, CohomologyReport, ComplexKind,
    FreeComplex, DEFAULT_MAX_CUTOFF,
};
pub use splitcheck::{
    canonical_table, is_split_p2, is_split_p2_with_cutoff, is_split_wedge, reduction_table,
    splitting_type, SplitVerdict, TableRow, TestPlan, WedgeBundle,
};
pub use weyl::{CosetPoset, WeylElement};
