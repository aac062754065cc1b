//! Exact pointwise-rank certificates for graded polynomial matrices.
//!
//! A kernel presentation needs its map to be surjective at every point of
//! projective space (over the algebraic closure); a cokernel presentation
//! needs its map pointwise injective. Both are decided exactly, in two
//! stages:
//!
//! 1. **Quasi-inverse ladder** (fast, sound, incomplete): exhibit, for each
//!    coordinate `x_i` and each target slot `j`, a preimage of the section
//!    `x_i^N e_j` under the induced map on global sections for some small
//!    `N`. At any point some coordinate is invertible, so localizing shows
//!    the stalk map hits every generator — surjectivity everywhere.
//! 2. **Maximal-minor test** (sound and complete): the map drops rank
//!    exactly on the common zero locus of its maximal minors. Emptiness of
//!    that locus over the algebraic closure is decided by an effective
//!    Nullstellensatz degree bound: forms of degrees `d_1 >= d_2 >= ...` in
//!    `n` variables with no common zero generate the full space of forms of
//!    degree `d_1 + ... + d_n - (n - 1)`, and conversely generating any
//!    single degree in full forces the locus to be empty (some power of
//!    each coordinate lies in the ideal). So one exact rank computation
//!    settles the question in both directions.
//!
//! Injectivity is surjectivity of the transposed dual matrix: evaluation
//! commutes with transposition, and a linear map is injective exactly when
//! its transpose is surjective.

use crate::error::{Error, Result};
use crate::exactla::{monomial_basis, monomial_count, rat, Poly, PolyMatrix, RationalMatrix};

/// Largest power tried by the quasi-inverse ladder.
const LADDER_MAX_POWER: u32 = 6;

/// Cap on the number of maximal minors the fallback will enumerate.
const MINOR_ENUMERATION_LIMIT: u128 = 200_000;

/// Certifies that the matrix is surjective at every point of projective
/// space over the algebraic closure, or reports why it is not.
pub(crate) fn certify_surjective(m: &PolyMatrix) -> Result<()> {
    if m.rows() == 0 {
        return Ok(());
    }
    if quasi_inverse_ladder(m) {
        return Ok(());
    }
    minor_test(m)
}

/// Certifies that the matrix is injective at every point of projective
/// space over the algebraic closure.
pub(crate) fn certify_injective(m: &PolyMatrix) -> Result<()> {
    certify_surjective(&m.transpose_dual())
}

/// Sound sufficient test: true means surjective everywhere; false means
/// undecided.
fn quasi_inverse_ladder(m: &PolyMatrix) -> bool {
    for var in 0..m.nvars() {
        for slot in 0..m.rows() {
            if !(0..=LADDER_MAX_POWER).any(|n| power_in_image(m, var, slot, n)) {
                return false;
            }
        }
    }
    true
}

/// Whether `x_var^power * e_slot` is in the image of the induced map on
/// global sections at the twist that makes that section live in degree
/// `power`.
fn power_in_image(m: &PolyMatrix, var: usize, slot: usize, power: u32) -> bool {
    let nvars = m.nvars();
    let twist = i64::from(power) - m.target()[slot];
    let induced = m.induced_h0(twist);

    let mut wanted = vec![0u32; nvars];
    wanted[var] = power;
    let mut index = None;
    let mut offset = 0usize;
    for (j, &t) in m.target().iter().enumerate() {
        if j == slot {
            let basis = monomial_basis(nvars, t + twist);
            match basis.iter().position(|e| *e == wanted) {
                Some(p) => index = Some(offset + p),
                None => return false,
            }
        }
        offset += monomial_count(nvars, t + twist);
    }
    let index = index.expect("slot < rows");
    debug_assert_eq!(offset, induced.rows());

    let mut rhs = RationalMatrix::zeros(induced.rows(), 1);
    rhs.set(index, 0, rat(1));
    matches!(induced.solve(&rhs), Ok(Some(_)))
}

/// Complete test via maximal minors and the effective Nullstellensatz.
fn minor_test(m: &PolyMatrix) -> Result<()> {
    let rows = m.rows();
    let cols = m.cols();
    let nvars = m.nvars();
    if rows > cols {
        return Err(Error::NotLocallyFree(
            "more target summands than source summands: the map cannot be \
             surjective at any point"
                .to_string(),
        ));
    }
    guard_combination_count(cols, rows)?;

    let mut minors: Vec<Poly> = Vec::new();
    for subset in ColumnSubsets::new(cols, rows) {
        let det = minor_determinant(m, &subset);
        if det.is_zero() {
            continue;
        }
        if degree_of(&det) == 0 {
            // A nonzero constant minor: those columns invert everywhere.
            return Ok(());
        }
        minors.push(det);
    }
    if minors.is_empty() {
        return Err(Error::NotLocallyFree(
            "every maximal minor vanishes identically: generic rank is below \
             the target rank"
                .to_string(),
        ));
    }
    if minors.len() < nvars {
        // Fewer hypersurfaces than the dimension of the ambient affine cone
        // always share a projective zero.
        return Err(Error::NotLocallyFree(
            "the maximal minors vanish on a nonempty locus".to_string(),
        ));
    }

    let mut degrees: Vec<i64> = minors.iter().map(degree_of).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let bound: i64 = degrees[..nvars].iter().sum::<i64>() - (nvars as i64 - 1);

    let source: Vec<i64> = minors.iter().map(|p| -degree_of(p)).collect();
    let ideal_row = PolyMatrix::new(nvars, source, vec![0], vec![minors])
        .expect("minor degrees match the twist layout by construction");
    if ideal_row.induced_h0(bound).rank() == monomial_count(nvars, bound) {
        Ok(())
    } else {
        Err(Error::NotLocallyFree(
            "the maximal minors have a common zero".to_string(),
        ))
    }
}

/// Rejects minor enumerations that would be too large to attempt.
fn guard_combination_count(n: usize, k: usize) -> Result<()> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(too_many_minors)?
            / (i as u128 + 1);
        if acc > MINOR_ENUMERATION_LIMIT {
            return Err(too_many_minors());
        }
    }
    Ok(())
}

fn too_many_minors() -> Error {
    Error::OutOfRange(
        "too many maximal minors to enumerate for the pointwise-rank test".to_string(),
    )
}

/// Lexicographic iterator over `k`-element subsets of `0..n`.
struct ColumnSubsets {
    n: usize,
    next: Option<Vec<usize>>,
}

impl ColumnSubsets {
    fn new(n: usize, k: usize) -> Self {
        let next = if k <= n { Some((0..k).collect()) } else { None };
        ColumnSubsets { n, next }
    }
}

impl Iterator for ColumnSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] + (k - i) < self.n {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(current)
    }
}

/// Determinant of the square submatrix on all rows and the given columns,
/// by Laplace expansion along successive rows.
fn minor_determinant(m: &PolyMatrix, columns: &[usize]) -> Poly {
    expand(m, 0, columns)
}

fn expand(m: &PolyMatrix, row: usize, columns: &[usize]) -> Poly {
    if columns.is_empty() {
        return Poly::one(m.nvars());
    }
    let mut acc = Poly::zero(m.nvars());
    for (pos, &c) in columns.iter().enumerate() {
        let entry = m.entry(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = columns
            .iter()
            .copied()
            .filter(|&other| other != c)
            .collect();
        let cofactor = entry.mul(&expand(m, row + 1, &rest));
        acc = if pos % 2 == 0 {
            acc.add(&cofactor)
        } else {
            acc.sub(&cofactor)
        };
    }
    acc
}

/// Total degree of a nonzero homogeneous polynomial.
fn degree_of(p: &Poly) -> i64 {
    p.terms()
        .next()
        .map(|(e, _)| e.iter().map(|&k| i64::from(k)).sum())
        .unwrap_or(0)
}
