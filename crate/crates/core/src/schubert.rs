//! Schubert cycle bookkeeping on a coset poset: dimension-graded classes,
//! divisor multiplication, degrees by saturated-chain counting, same-flag
//! intersections, and the classification of the two-dimensional stratum.
//!
//! Conventions: the cell indexed by a representative `w` has codimension
//! `length(w)`, so classes of dimension `d` live at length
//! `dimension - d`. The closure of a cell is the set of cells indexed by
//! larger representatives in the order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weyl::CosetPoset;

/// A formal nonnegative-integer combination of basis classes, keyed by
/// poset index.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CycleClass {
    coeffs: BTreeMap<usize, u64>,
}

impl CycleClass {
    pub fn zero() -> Self {
        CycleClass::default()
    }

    pub fn basis(index: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, 1);
        CycleClass { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, u64> {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> u64 {
        self.coeffs.get(&index).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_assign(&mut self, index: usize, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(index).or_insert(0);
        *slot = slot
            .checked_add(mult)
            .ok_or_else(|| Error::InternalInconsistency("cycle coefficient overflow".into()))?;
        Ok(())
    }
}

/// Indices of the basis classes of (complex) dimension `d`.
pub fn classes_of_dimension(poset: &CosetPoset, d: usize) -> Result<Vec<usize>> {
    let dim = poset.dimension();
    if d > dim {
        return Err(Error::OutOfRange(format!(
            "no classes of dimension {d} on a {dim}-dimensional space"
        )));
    }
    Ok(poset.level(dim - d).collect())
}

/// The boundary of the closure of one cell: the cells of one dimension
/// less that it contains (its upward covers in the length order).
pub fn boundary_classes(poset: &CosetPoset, index: usize) -> Vec<usize> {
    poset.up_edges(index).iter().map(|e| e.to).collect()
}

/// Multiplies a basis class by the hyperplane class: a sum over upward
/// covers weighted by the cover coefficients.
pub fn hyperplane_times(poset: &CosetPoset, index: usize) -> Result<CycleClass> {
    let mut out = CycleClass::zero();
    for e in poset.up_edges(index) {
        out.add_assign(e.to, u64::try_from(e.coeff).map_err(|_| {
            Error::InternalInconsistency("negative cover coefficient".into())
        })?)?;
    }
    Ok(out)
}

/// Multiplies a cycle by the hyperplane class, term by term.
pub fn hyperplane_times_cycle(poset: &CosetPoset, cycle: &CycleClass) -> Result<CycleClass> {
    let mut out = CycleClass::zero();
    for (&index, &mult) in cycle.coeffs() {
        for e in poset.up_edges(index) {
            let c = u64::try_from(e.coeff).map_err(|_| {
                Error::InternalInconsistency("negative cover coefficient".into())
            })?;
            out.add_assign(
                e.to,
                mult.checked_mul(c).ok_or_else(|| {
                    Error::InternalInconsistency("cycle coefficient overflow".into())
                })?,
            )?;
        }
    }
    Ok(out)
}

/// Degrees of all basis classes in the minimal projective embedding,
/// computed as saturated-chain counts up to the point class. Requires a
/// minuscule node so that every chain carries weight 1.
pub fn all_degrees(poset: &CosetPoset) -> Result<Vec<u64>> {
    if !poset.is_minuscule() {
        return Err(Error::NotMinuscule {
            node: poset.node(),
            context: "multiplicity-aware degree is not supported; chain-count degrees need a \
                      minuscule node"
                .to_string(),
        });
    }
    let n = poset.len();
    let mut counts = vec![0u64; n];
    counts[poset.top_index()] = 1;
    for u in (0..n).rev() {
        if u == poset.top_index() {
            continue;
        }
        let mut total = 0u64;
        for e in poset.up_edges(u) {
            total = total.checked_add(counts[e.to]).ok_or_else(|| {
                Error::InternalInconsistency("degree overflow".into())
            })?;
        }
        counts[u] = total;
    }
    Ok(counts)
}

/// Degree of one basis class (see [`all_degrees`]).
pub fn degree(poset: &CosetPoset, index: usize) -> Result<u64> {
    if index >= poset.len() {
        return Err(Error::OutOfRange(format!(
            "class index {index} out of range (size {})",
            poset.len()
        )));
    }
    Ok(all_degrees(poset)?[index])
}

/// Intersection of the closures of two cells (same flag): the union of the
/// closures of the minimal cells lying above both. Returns that antichain.
pub fn intersect_schubert(poset: &CosetPoset, a: usize, b: usize) -> Result<Vec<usize>> {
    let n = poset.len();
    if a >= n || b >= n {
        return Err(Error::OutOfRange(format!(
            "class index out of range (size {n})"
        )));
    }
    Ok(poset.minimal_common_upper_bounds(a, b))
}

/// Classification result for the two-dimensional stratum.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct X2Report {
    /// Root system label, e.g. `"E6"`.
    pub label: String,
    /// Marked node (1-based).
    pub node: usize,
    /// Dimension of the whole homogeneous space.
    pub dimension: usize,
    /// Poset indices of the two-dimensional classes.
    pub class_indices: Vec<usize>,
    /// Canonical reduced words of those classes.
    pub class_words: Vec<Vec<usize>>,
    /// Degrees of those classes in the minimal embedding.
    pub degrees: Vec<u64>,
    /// When there are two classes: the minimal classes of their
    /// intersection (expected: one line).
    pub intersection_indices: Vec<usize>,
    /// Whether the stratum is connected.
    pub connected: bool,
    /// `"P2"` or `"P2 wedge P2 along line"`.
    pub verdict: String,
}

/// Classifies the union of the two-dimensional cells of a minuscule
/// homogeneous space: always a plane, or two planes glued along a line.
pub fn classify_x2(poset: &CosetPoset) -> Result<X2Report> {
    if !poset.is_minuscule() {
        return Err(Error::NotMinuscule {
            node: poset.node(),
            context: "two-dimensional stratum classification".to_string(),
        });
    }
    let dim = poset.dimension();
    if dim < 2 {
        return Err(Error::OutOfRange(format!(
            "space has dimension {dim} < 2, no two-dimensional stratum"
        )));
    }
    let class_indices = classes_of_dimension(poset, 2)?;
    let degrees_all = all_degrees(poset)?;
    let degrees: Vec<u64> = class_indices.iter().map(|&i| degrees_all[i]).collect();
    let class_words: Vec<Vec<usize>> = class_indices
        .iter()
        .map(|&i| poset.rep(i).word().to_vec())
        .collect();

    let (verdict, intersection_indices, connected) = match class_indices.len() {
        1 => {
            if degrees[0] != 1 {
                return Err(Error::InternalInconsistency(format!(
                    "single two-dimensional class of degree {} (expected 1)",
                    degrees[0]
                )));
            }
            ("P2".to_string(), Vec::new(), true)
        }
        2 => {
            if degrees.iter().any(|&d| d != 1) {
                return Err(Error::InternalInconsistency(format!(
                    "two-dimensional classes of degrees {degrees:?} (expected 1, 1)"
                )));
            }
            let meet = intersect_schubert(poset, class_indices[0], class_indices[1])?;
            if meet.len() != 1
                || poset.length_of(meet[0]) != dim - 1
                || degrees_all[meet[0]] != 1
            {
                return Err(Error::InternalInconsistency(
                    "two planes do not meet along a single line".to_string(),
                ));
            }
            ("P2 wedge P2 along line".to_string(), meet, true)
        }
        k => {
            return Err(Error::InternalInconsistency(format!(
                "{k} two-dimensional classes (expected 1 or 2)"
            )));
        }
    };

    Ok(X2Report {
        label: poset.root_system().label(),
        node: poset.node(),
        dimension: dim,
        class_indices,
        class_words,
        degrees,
        intersection_indices,
        connected,
        verdict,
    })
}
