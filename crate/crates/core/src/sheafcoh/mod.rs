//! Free presentations of vector bundles on the projective plane or line,
//! with exact sheaf-cohomology computation.
//!
//! A bundle enters the library as a short complex of sums of line bundles:
//!
//! * **kernel** presentation `[F0 -> F1]` (positions 0, 1): the bundle is
//!   the kernel of a pointwise surjective map;
//! * **cokernel** presentation `[F-1 -> F0]` (positions -1, 0): the bundle
//!   is the cokernel of a pointwise injective map;
//! * **monad** `[F-1 -> F0 -> F1]` (positions -1, 0, 1): injective into
//!   surjective with zero composition; the bundle is the middle homology.
//!
//! The public constructors *certify* the pointwise-rank conditions exactly
//! (see [`regularity`]) — a value of type [`FreeComplex`] is a proof-carrying
//! object: its homology away from the middle position vanishes, so the
//! hypercohomology of the complex *is* the cohomology of the presented
//! bundle. Derived complexes (duals, endomorphism monads, restrictions)
//! inherit those conditions structurally and skip re-certification.
//!
//! Cohomology values are computed by [`complex_cohomology`] through a
//! truncated cover construction whose truncation level is raised until the
//! answer stabilizes and a proven exactness threshold is passed; the
//! certificate (`cutoff`) is part of the answer. Internal cross-checks
//! (degree bounds and the Euler-characteristic identity) run on every
//! answer before it is returned.

mod engine;
mod regularity;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{binomial, PolyMatrix};

#[doc(hidden)]
pub use engine::hypercohomology_at_cutoff;
pub use engine::DEFAULT_MAX_CUTOFF;

/// Shape of a free presentation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    /// `[F0 -> F1]`, bundle = kernel of a pointwise surjective map.
    Kernel,
    /// `[F-1 -> F0]`, bundle = cokernel of a pointwise injective map.
    Cokernel,
    /// `[F-1 -> F0 -> F1]`, bundle = middle homology.
    Monad,
}

impl ComplexKind {
    /// Position of the leftmost term in the complex.
    pub fn first_position(self) -> i64 {
        match self {
            ComplexKind::Kernel => 0,
            ComplexKind::Cokernel | ComplexKind::Monad => -1,
        }
    }
}

/// A short complex of sums of line bundles presenting a vector bundle.
///
/// Constructed only through [`FreeComplex::kernel`],
/// [`FreeComplex::cokernel`] and [`FreeComplex::monad`], which verify the
/// pointwise-rank requirements, or derived from such a complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeComplex {
    nvars: usize,
    kind: ComplexKind,
    levels: Vec<Vec<i64>>,
    maps: Vec<PolyMatrix>,
}

/// Certified cohomology dimensions of a presented bundle at one twist.
///
/// `h = [h0, h1, h2]`; on the projective line `h2` is always zero. The
/// `cutoff` records the truncation level at which the computation both
/// stabilized and passed its exactness threshold.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CohomologyReport {
    /// Dimensions of the cohomology groups in degrees 0, 1, 2.
    pub h: [usize; 3],
    /// Truncation level certifying the answer.
    pub cutoff: i64,
}

impl FreeComplex {
    /// Presentation of `ker(map)` for a pointwise surjective `map: F0 -> F1`.
    ///
    /// `F1` may be empty, which presents the sum of line bundles `F0`
    /// itself. Fails with [`Error::NotLocallyFree`] when the map drops rank
    /// somewhere on projective space (over the algebraic closure).
    pub fn kernel(map: PolyMatrix) -> Result<Self> {
        regularity::certify_surjective(&map).map_err(|e| amend(e, "kernel presentation"))?;
        let complex = FreeComplex::from_parts_unchecked(ComplexKind::Kernel, vec![map]);
        complex.validate_shape()?;
        Ok(complex)
    }

    /// Presentation of `coker(map)` for a pointwise injective `map: F-1 -> F0`.
    ///
    /// `F-1` may be empty, which presents the sum of line bundles `F0`
    /// itself.
    pub fn cokernel(map: PolyMatrix) -> Result<Self> {
        regularity::certify_injective(&map).map_err(|e| amend(e, "cokernel presentation"))?;
        let complex = FreeComplex::from_parts_unchecked(ComplexKind::Cokernel, vec![map]);
        complex.validate_shape()?;
        Ok(complex)
    }

    /// Monad presentation: `left` pointwise injective, `right` pointwise
    /// surjective, `right ∘ left = 0`; the bundle is the middle homology.
    pub fn monad(left: PolyMatrix, right: PolyMatrix) -> Result<Self> {
        if left.target() != right.source() {
            return Err(Error::ProfileMismatch(format!(
                "monad middle level disagrees: left map lands in {:?}, right \
                 map starts from {:?}",
                left.target(),
                right.source()
            )));
        }
        if !right.compose(&left)?.is_zero() {
            return Err(Error::NotAComplex);
        }
        regularity::certify_injective(&left).map_err(|e| amend(e, "monad left-hand map"))?;
        regularity::certify_surjective(&right).map_err(|e| amend(e, "monad right-hand map"))?;
        let complex = FreeComplex::from_parts_unchecked(ComplexKind::Monad, vec![left, right]);
        complex.validate_shape()?;
        Ok(complex)
    }

    /// Assembles a complex whose exactness conditions are already known,
    /// either inherited from a certified complex or established by the
    /// caller. Structural consistency is still asserted.
    pub(crate) fn from_parts_unchecked(kind: ComplexKind, maps: Vec<PolyMatrix>) -> Self {
        let expected = match kind {
            ComplexKind::Kernel | ComplexKind::Cokernel => 1,
            ComplexKind::Monad => 2,
        };
        assert_eq!(maps.len(), expected, "map count must match the kind");
        let nvars = maps[0].nvars();
        let mut levels: Vec<Vec<i64>> = Vec::with_capacity(maps.len() + 1);
        levels.push(maps[0].source().to_vec());
        for pair in maps.windows(2) {
            assert_eq!(
                pair[0].target(),
                pair[1].source(),
                "adjacent maps must share a level"
            );
        }
        for m in &maps {
            assert_eq!(m.nvars(), nvars, "all maps must share the variable count");
            levels.push(m.target().to_vec());
        }
        FreeComplex {
            nvars,
            kind,
            levels,
            maps,
        }
    }

    /// Shape rules common to all constructors.
    fn validate_shape(&self) -> Result<()> {
        if self.nvars != 2 && self.nvars != 3 {
            return Err(Error::OutOfRange(format!(
                "presentations must use 2 or 3 homogeneous coordinates, got {}",
                self.nvars
            )));
        }
        let middle = (-self.kind.first_position()) as usize;
        if self.levels[middle].is_empty() {
            return Err(Error::DimensionMismatch(
                "the middle level must contain at least one line bundle".to_string(),
            ));
        }
        let rank = self.signed_rank();
        if rank < 1 {
            return Err(Error::DimensionMismatch(format!(
                "the presentation yields rank {rank}; expected at least 1"
            )));
        }
        Ok(())
    }

    /// Alternating sum of the level sizes, weighted by position parity.
    fn signed_rank(&self) -> i64 {
        let first = self.kind.first_position();
        self.levels
            .iter()
            .enumerate()
            .map(|(l, twists)| {
                let sign = if (first + l as i64).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                sign * twists.len() as i64
            })
            .sum()
    }

    /// Number of homogeneous coordinates (3 = plane, 2 = line).
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Presentation shape.
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Twist lists per level, leftmost first.
    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    /// The maps between consecutive levels.
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Position of the leftmost level.
    pub fn first_position(&self) -> i64 {
        self.kind.first_position()
    }

    /// Rank of the presented bundle.
    pub fn rank(&self) -> usize {
        usize::try_from(self.signed_rank()).expect("validated at construction")
    }

    /// First Chern number of the presented bundle: the signed sum of all
    /// level twists, weighted like [`rank`](Self::rank) weights summand
    /// counts.
    pub fn first_chern(&self) -> i64 {
        let first = self.kind.first_position();
        self.levels
            .iter()
            .enumerate()
            .map(|(l, twists)| {
                let sign = if (first + l as i64).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                sign * twists.iter().sum::<i64>()
            })
            .sum()
    }

    /// Presentation of the endomorphism bundle `End(V) = V ⊗ V*` as a
    /// monad, assembled from Kronecker products of the presentation map
    /// with identities. Its exactness conditions are inherited from the
    /// certified input, so no re-certification runs.
    pub fn end_complex(&self) -> Result<FreeComplex> {
        let (d_in, d_out) = match self.kind {
            ComplexKind::Monad => {
                return Err(Error::MonadUnsupported(
                    "endomorphism presentations are built from two-term \
                     presentations only"
                        .to_string(),
                ));
            }
            ComplexKind::Kernel => {
                // V = ker(a), a: F0 -> F1. V* is presented by the dual
                // cokernel; the tensor product of the two complexes is
                //   F0⊗F1* -> F0⊗F0* ⊕ F1⊗F1* -> F1⊗F0*
                // with sign conventions fixed by the product rule.
                let a = &self.maps[0];
                let at = a.transpose_dual();
                let id_f0 = self.level_identity(0, false);
                let id_f0_dual = self.level_identity(0, true);
                let id_f1 = self.level_identity(1, false);
                let id_f1_dual = self.level_identity(1, true);
                let d_in = PolyMatrix::vstack(&[&id_f0.kron(&at), &a.kron(&id_f1_dual)])?;
                let d_out =
                    PolyMatrix::hstack(&[&a.kron(&id_f0_dual), &id_f1.kron(&at).neg()])?;
                (d_in, d_out)
            }
            ComplexKind::Cokernel => {
                // V = coker(a), a: F-1 -> F0. V* is presented by the dual
                // kernel; the tensor product becomes
                //   F-1⊗F0* -> F0⊗F0* ⊕ F-1⊗F-1* -> F0⊗F-1*.
                let a = &self.maps[0];
                let at = a.transpose_dual();
                let id_sub = self.level_identity(0, false);
                let id_sub_dual = self.level_identity(0, true);
                let id_mid = self.level_identity(1, false);
                let id_mid_dual = self.level_identity(1, true);
                let d_in = PolyMatrix::vstack(&[&a.kron(&id_mid_dual), &id_sub.kron(&at).neg()])?;
                let d_out = PolyMatrix::hstack(&[&id_mid.kron(&at), &a.kron(&id_sub_dual)])?;
                (d_in, d_out)
            }
        };
        if !d_out.compose(&d_in)?.is_zero() {
            return Err(Error::InternalInconsistency(
                "endomorphism complex fails to compose to zero".to_string(),
            ));
        }
        Ok(FreeComplex::from_parts_unchecked(
            ComplexKind::Monad,
            vec![d_in, d_out],
        ))
    }

    /// Identity matrix on one level, optionally on its dual twists.
    fn level_identity(&self, level: usize, dual: bool) -> PolyMatrix {
        let twists: Vec<i64> = if dual {
            self.levels[level].iter().map(|&t| -t).collect()
        } else {
            self.levels[level].clone()
        };
        PolyMatrix::identity(self.nvars, twists)
    }

    /// Presentation of the dual bundle `V*`. Kernel and cokernel
    /// presentations swap; a monad dualizes to a monad.
    pub fn dual_complex(&self) -> FreeComplex {
        match self.kind {
            ComplexKind::Kernel => FreeComplex::from_parts_unchecked(
                ComplexKind::Cokernel,
                vec![self.maps[0].transpose_dual()],
            ),
            ComplexKind::Cokernel => FreeComplex::from_parts_unchecked(
                ComplexKind::Kernel,
                vec![self.maps[0].transpose_dual()],
            ),
            ComplexKind::Monad => FreeComplex::from_parts_unchecked(
                ComplexKind::Monad,
                vec![
                    self.maps[1].transpose_dual(),
                    self.maps[0].transpose_dual(),
                ],
            ),
        }
    }

    /// Restriction to the line `{last coordinate = 0}` inside the plane:
    /// substitutes zero for the last variable in every map. Regularity is
    /// re-checked; for complexes built by the public constructors it holds
    /// automatically, so a failure here reports
    /// [`Error::RestrictionDegenerate`] and indicates an internally
    /// assembled complex that was regular only away from that line.
    pub fn restrict_to_line(&self) -> Result<FreeComplex> {
        if self.nvars != 3 {
            return Err(Error::OutOfRange(
                "restriction needs a plane presentation; this one is already \
                 on the line"
                    .to_string(),
            ));
        }
        let maps: Vec<PolyMatrix> = self.maps.iter().map(|m| m.eliminate_var(2)).collect();
        let to_degenerate = |e: Error| match e {
            Error::NotLocallyFree(_) => Error::RestrictionDegenerate,
            other => other,
        };
        match self.kind {
            ComplexKind::Kernel => {
                regularity::certify_surjective(&maps[0]).map_err(to_degenerate)?;
            }
            ComplexKind::Cokernel => {
                regularity::certify_injective(&maps[0]).map_err(to_degenerate)?;
            }
            ComplexKind::Monad => {
                regularity::certify_injective(&maps[0]).map_err(to_degenerate)?;
                regularity::certify_surjective(&maps[1]).map_err(to_degenerate)?;
            }
        }
        Ok(FreeComplex::from_parts_unchecked(self.kind, maps))
    }
}

/// Adds constructor context to a pointwise-rank failure.
fn amend(e: Error, role: &str) -> Error {
    match e {
        Error::NotLocallyFree(msg) => Error::NotLocallyFree(format!("{role}: {msg}")),
        other => other,
    }
}

/// Cohomology of the line bundle `O(d)` on the projective plane:
/// `[h0, h1, h2]`.
pub fn bott(d: i64) -> [usize; 3] {
    let h0 = if d >= 0 { binomial(d + 2, 2) } else { 0 };
    let h2 = if d <= -3 { binomial(-d - 1, 2) } else { 0 };
    [h0, 0, h2]
}

/// Cohomology dimensions of the presented bundle twisted by `O(twist)`,
/// with the default truncation cap.
pub fn complex_cohomology(complex: &FreeComplex, twist: i64) -> Result<CohomologyReport> {
    complex_cohomology_with_cutoff(complex, twist, DEFAULT_MAX_CUTOFF)
}

/// Same as [`complex_cohomology`] but with an explicit cap on the
/// truncation ladder; fails with [`Error::CutoffExhausted`] if no certified
/// answer is reached by then.
pub fn complex_cohomology_with_cutoff(
    complex: &FreeComplex,
    twist: i64,
    max_cutoff: i64,
) -> Result<CohomologyReport> {
    engine::cohomology_with_ladder(complex, twist, max_cutoff)
}
