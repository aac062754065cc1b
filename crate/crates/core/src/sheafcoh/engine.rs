//! Hypercohomology engine for short free complexes on the projective plane
//! or line.
//!
//! The cover complex of a sum of line bundles has cohomology concentrated
//! in the bottom row (global sections) and the top row (top cohomology),
//! at every truncation level: monomial by monomial, the intermediate rows
//! are cochain complexes of contractible simplicial sets. For complexes
//! that are at most three terms wide, the connecting differentials of the
//! resulting spectral sequence land outside the occupied columns, so the
//! hypercohomology in each total degree is the direct sum of one homology
//! group from the bottom row and one from the top row. The engine computes
//! exactly those two row complexes.
//!
//! The top row depends on the truncation cutoff `B`; it equals the true
//! top cohomology as soon as `B` reaches an explicit threshold. The public
//! entry point runs a ladder: start at a cutoff derived from the twist
//! data, accept when two consecutive cutoffs agree *and* the threshold is
//! reached, and double otherwise.

use crate::error::{Error, Result};
use crate::exactla::{monomial_count, top_basis};

use super::{CohomologyReport, FreeComplex};

/// Default bound on the truncation ladder.
pub const DEFAULT_MAX_CUTOFF: i64 = 64;

/// Euler characteristic of a degree-`d` line bundle (`nvars` = number of
/// homogeneous coordinates).
pub(crate) fn line_euler(nvars: usize, d: i64) -> i64 {
    match nvars {
        2 => d + 1,
        3 => (d + 1) * (d + 2) / 2,
        _ => unreachable!("validated at construction"),
    }
}

/// Homology dimensions of a short complex of vector spaces given the level
/// dimensions and the ranks of the consecutive maps (composition zero).
fn row_homology(dims: &[usize], ranks: &[usize]) -> Result<Vec<usize>> {
    let l = dims.len();
    debug_assert_eq!(ranks.len() + 1, l.max(1));
    let mut out = Vec::with_capacity(l);
    for p in 0..l {
        let incoming = if p == 0 { 0 } else { ranks[p - 1] };
        let outgoing = if p + 1 == l { 0 } else { ranks[p] };
        let used = incoming + outgoing;
        if used > dims[p] {
            return Err(Error::InternalInconsistency(
                "rank sum exceeds the dimension of a row term".to_string(),
            ));
        }
        out.push(dims[p] - used);
    }
    Ok(out)
}

/// Hypercohomology dimensions of the truncated complex at one fixed cutoff,
/// indexed by total degree `n + 1` for `n = -1, 0, 1, 2, 3`. No stability
/// or exactness guarantees; raw values for the given cutoff.
pub fn hypercohomology_at_cutoff(
    complex: &FreeComplex,
    twist: i64,
    cutoff: i64,
) -> Result<[usize; 5]> {
    if cutoff < 1 {
        return Err(Error::OutOfRange("cutoff must be at least 1".to_string()));
    }
    if complex.nvars() == 2 && complex.levels().len() > 2 {
        return Err(Error::MonadUnsupported(
            "three-term presentations on the projective line fall outside \
             the degenerate range of the cover spectral sequence"
                .to_string(),
        ));
    }
    let nvars = complex.nvars();
    let levels = complex.levels();
    let maps = complex.maps();

    let h0_dims: Vec<usize> = levels
        .iter()
        .map(|twists| {
            twists
                .iter()
                .map(|&a| monomial_count(nvars, a + twist))
                .sum()
        })
        .collect();
    let h0_ranks: Vec<usize> = maps.iter().map(|m| m.induced_h0(twist).rank()).collect();
    let bottom = row_homology(&h0_dims, &h0_ranks)?;

    let top_dims: Vec<usize> = levels
        .iter()
        .map(|twists| {
            twists
                .iter()
                .map(|&a| top_basis(nvars, a + twist, Some(cutoff)).len())
                .sum()
        })
        .collect();
    let top_ranks: Vec<usize> = maps
        .iter()
        .map(|m| m.induced_top(twist, Some(cutoff)).rank())
        .collect();
    let top = row_homology(&top_dims, &top_ranks)?;

    let first = complex.first_position();
    let top_shift = nvars as i64 - 1;
    let mut table = [0usize; 5];
    for (l, &v) in bottom.iter().enumerate() {
        let n = first + l as i64;
        table[usize::try_from(n + 1).expect("positions start at -1")] += v;
    }
    for (l, &v) in top.iter().enumerate() {
        let n = first + l as i64 + top_shift;
        table[usize::try_from(n + 1).expect("positions start at -1")] += v;
    }
    Ok(table)
}

/// Smallest cutoff at which the truncated top row equals the full one for
/// every line-bundle summand at this twist.
fn exactness_threshold(complex: &FreeComplex, twist: i64) -> i64 {
    let shift = complex.nvars() as i64 - 1;
    complex
        .levels()
        .iter()
        .flat_map(|twists| twists.iter())
        .map(|&a| -(a + twist) - shift)
        .fold(0, i64::max)
}

/// Largest minus smallest twist across all levels (0 for empty data).
fn twist_spread(complex: &FreeComplex) -> i64 {
    let all: Vec<i64> = complex
        .levels()
        .iter()
        .flat_map(|t| t.iter().copied())
        .collect();
    match (all.iter().min(), all.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    }
}

/// Runs the cutoff ladder and the final consistency checks; returns the
/// certified cohomology dimensions.
pub(crate) fn cohomology_with_ladder(
    complex: &FreeComplex,
    twist: i64,
    max_cutoff: i64,
) -> Result<CohomologyReport> {
    if max_cutoff < 1 {
        return Err(Error::OutOfRange(
            "maximum cutoff must be at least 1".to_string(),
        ));
    }
    let threshold = exactness_threshold(complex, twist);
    let mut b = twist_spread(complex) + twist.abs() + 3;
    loop {
        if b > max_cutoff {
            return Err(Error::CutoffExhausted { max: max_cutoff });
        }
        let now = hypercohomology_at_cutoff(complex, twist, b)?;
        let next = hypercohomology_at_cutoff(complex, twist, b + 1)?;
        if now == next && b >= threshold {
            return finalize(complex, twist, b, now);
        }
        b *= 2;
        if b < threshold {
            b = threshold;
        }
    }
}

/// Boundary and Euler-characteristic checks on stabilized dimensions.
fn finalize(
    complex: &FreeComplex,
    twist: i64,
    cutoff: i64,
    table: [usize; 5],
) -> Result<CohomologyReport> {
    if table[0] != 0 {
        return Err(Error::InternalInconsistency(format!(
            "hypercohomology of dimension {} in degree -1; the left-hand map \
             of the presentation cannot be injective",
            table[0]
        )));
    }
    if table[4] != 0 {
        return Err(Error::InternalInconsistency(format!(
            "hypercohomology of dimension {} in degree 3; the right-hand map \
             of the presentation cannot be surjective",
            table[4]
        )));
    }
    if complex.nvars() == 2 && table[3] != 0 {
        return Err(Error::InternalInconsistency(format!(
            "hypercohomology of dimension {} in degree 2 on the projective \
             line; the right-hand map of the presentation cannot be surjective",
            table[3]
        )));
    }
    let h = [table[1], table[2], table[3]];
    let chi = h[0] as i64 - h[1] as i64 + h[2] as i64;
    let mut expected = 0i64;
    let first = complex.first_position();
    for (l, twists) in complex.levels().iter().enumerate() {
        let sign = if (first + l as i64).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        for &a in twists.iter() {
            expected += sign * line_euler(complex.nvars(), a + twist);
        }
    }
    if chi != expected {
        return Err(Error::InternalInconsistency(format!(
            "Euler characteristic {chi} does not match the value {expected} \
             determined by the twist data"
        )));
    }
    Ok(CohomologyReport { h, cutoff })
}
