//! Reduction of splitting questions on homogeneous spaces to the two
//! model tests.
//!
//! For each supported marked Dynkin diagram, the union of the
//! two-dimensional Schubert cells is either a projective plane or two
//! planes glued along a line, and a bundle on the homogeneous space
//! splits exactly when its restriction to that stratum splits. So every
//! space maps to one of two concrete checks: the plane test
//! ([`crate::splitcheck::is_split_p2`]) or the wedge test
//! ([`crate::splitcheck::is_split_wedge`]). [`reduction_table`] computes
//! the row for one marking; [`canonical_table`] recomputes the whole
//! catalogue and verifies it against the expected shapes.
//!
//! Odd quadrics are carried along although their marking (B series, node
//! 1) is not minuscule: the two-dimensional stratum of `Q_{2n-1}` is
//! computed on the even quadric `Q_{2n-2}` (D series, node 1), to which
//! the splitting question reduces. The three-dimensional quadric is
//! excluded: it is the Lagrangian Grassmannian of planes in a
//! four-dimensional symplectic space, which no plane or wedge stratum of
//! this catalogue covers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Series};
use crate::schubert::{classify_x2, X2Report};
use crate::weyl::CosetPoset;

/// The splitting-test reduction for one marked diagram.
#[derive(Clone, Debug, Serialize)]
pub struct TestPlan {
    /// Classical name of the homogeneous space, e.g. `"Gr(3,6)"`.
    pub variety: String,
    /// The acting group, e.g. `"SL(6)"`.
    pub group: String,
    /// The marking that was requested, e.g. `"A5/3"`.
    pub marking: String,
    /// Marking the stratum was computed on, when it differs from the
    /// requested one (odd quadrics delegate to even ones).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delegated_to: Option<String>,
    /// Shape of the two-dimensional stratum: `"P2"` or
    /// `"P2 wedge P2 along line"`.
    pub x2: String,
    /// Which splitting test decides: `"P2 test"` or `"wedge test"`.
    pub test: String,
    /// The full stratum classification.
    pub report: X2Report,
}

/// One row of the recomputed catalogue: a family of homogeneous spaces,
/// its stratum shape, and the verification outcome on representatives.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    /// Family of spaces, e.g. `"Gr(k,n), 1 < k < n-1"`.
    pub family: String,
    /// Family of acting groups, e.g. `"SL(n)"`.
    pub group: String,
    /// Expected stratum shape for every member.
    pub x2: String,
    /// The splitting test the shape dictates.
    pub test: String,
    /// Markings recomputed as representatives of the family.
    pub checked: Vec<String>,
    /// True when every representative reproduced the expected shape.
    pub pass: bool,
}

/// Computes which splitting test decides on the homogeneous space of a
/// marked diagram, together with the stratum classification backing it.
///
/// Minuscule markings are classified directly. The odd quadrics (B
/// series, node 1, rank at least 3) delegate to the even quadric one
/// dimension down. Everything else is rejected.
pub fn reduction_table(series: Series, rank: usize, node: usize) -> Result<TestPlan> {
    let rs = RootSystem::new(series, rank)?;
    let marking = format!("{}/{node}", rs.label());

    if series == Series::B && node == 1 {
        if rank == 2 {
            return Err(Error::OutOfRange(
                "the three-dimensional quadric is the Lagrangian Grassmannian \
                 of planes in a four-dimensional symplectic space; neither \
                 model test applies"
                    .to_string(),
            ));
        }
        // The two-dimensional stratum of the odd quadric lives in an even
        // quadric hyperplane section, so the computation delegates.
        let even = RootSystem::new(Series::D, rank)?;
        let delegated_to = format!("{}/1", even.label());
        let report = classify_x2(&CosetPoset::new(even, 1)?)?;
        let test = test_for(&report.verdict);
        return Ok(TestPlan {
            variety: format!("Q{}", 2 * rank - 1),
            group: format!("SO({})", 2 * rank + 1),
            marking,
            delegated_to: Some(delegated_to),
            x2: report.verdict.clone(),
            test,
            report,
        });
    }

    let poset = CosetPoset::new(rs, node)?;
    if !poset.is_minuscule() {
        return Err(Error::NotMinuscule {
            node,
            context: "the reduction table covers minuscule markings and odd \
                      quadrics (B series, node 1) only"
                .to_string(),
        });
    }
    let report = classify_x2(&poset)?;
    let test = test_for(&report.verdict);
    Ok(TestPlan {
        variety: variety_name(series, rank, node),
        group: group_name(series, rank),
        marking,
        delegated_to: None,
        x2: report.verdict.clone(),
        test,
        report,
    })
}

fn test_for(verdict: &str) -> String {
    if verdict == "P2" {
        "P2 test".to_string()
    } else {
        "wedge test".to_string()
    }
}

/// Classical name of the homogeneous space for a minuscule marking.
fn variety_name(series: Series, rank: usize, node: usize) -> String {
    match series {
        Series::A => {
            if node == 1 || node == rank {
                format!("P{rank}")
            } else {
                format!("Gr({node},{})", rank + 1)
            }
        }
        // The odd spinor variety coincides with the even one of the next
        // rank.
        Series::B => format!("S{}", rank + 1),
        Series::C => format!("P{}", 2 * rank - 1),
        Series::D => {
            if node == 1 {
                format!("Q{}", 2 * rank - 2)
            } else {
                format!("S{rank}")
            }
        }
        Series::E => {
            if rank == 6 {
                "OP2".to_string()
            } else {
                "Freudenthal variety".to_string()
            }
        }
    }
}

fn group_name(series: Series, rank: usize) -> String {
    match series {
        Series::A => format!("SL({})", rank + 1),
        Series::B => format!("SO({})", 2 * rank + 1),
        Series::C => format!("Sp({})", 2 * rank),
        Series::D => format!("SO({})", 2 * rank),
        Series::E => format!("E{rank}"),
    }
}

const PLANE: &str = "P2";
const WEDGE: &str = "P2 wedge P2 along line";

/// Recomputes the catalogue of supported families from scratch: every
/// representative marking is classified and compared against the family's
/// expected stratum shape, including the structural facts behind it (all
/// two-dimensional classes have degree one; a wedge has exactly two of
/// them meeting in a single line class; the stratum is connected).
pub fn canonical_table() -> Result<Vec<TableRow>> {
    let families: [(&str, &str, &str, &[(Series, usize, usize)]); 9] = [
        (
            "P(n-1), n >= 3",
            "SL(n)",
            PLANE,
            &[(Series::A, 2, 1), (Series::A, 3, 1), (Series::A, 4, 4)],
        ),
        (
            "Gr(k,n), 1 < k < n-1",
            "SL(n)",
            WEDGE,
            &[(Series::A, 3, 2), (Series::A, 4, 2), (Series::A, 5, 3)],
        ),
        (
            "S_n, n >= 3",
            "SO(2n)",
            PLANE,
            &[(Series::D, 3, 3), (Series::D, 4, 4), (Series::D, 5, 5)],
        ),
        ("Q4", "SO(6)", WEDGE, &[(Series::D, 3, 1)]),
        (
            "Q_2n, n >= 3",
            "SO(2n+2)",
            PLANE,
            &[(Series::D, 4, 1), (Series::D, 5, 1)],
        ),
        (
            "OP2",
            "E6",
            PLANE,
            &[(Series::E, 6, 6), (Series::E, 6, 1)],
        ),
        ("Freudenthal variety", "E7", PLANE, &[(Series::E, 7, 7)]),
        ("Q5", "SO(7)", WEDGE, &[(Series::B, 3, 1)]),
        (
            "Q_2n+1, n >= 3",
            "SO(2n+3)",
            PLANE,
            &[(Series::B, 4, 1), (Series::B, 5, 1)],
        ),
    ];

    let mut rows = Vec::with_capacity(families.len());
    for (family, group, expected, reps) in families {
        let mut checked = Vec::with_capacity(reps.len());
        let mut pass = true;
        for &(series, rank, node) in reps {
            let plan = reduction_table(series, rank, node)?;
            checked.push(match &plan.delegated_to {
                Some(target) => format!("{} -> {target}", plan.marking),
                None => plan.marking.clone(),
            });
            pass &= row_matches(&plan, expected);
        }
        rows.push(TableRow {
            family: family.to_string(),
            group: group.to_string(),
            x2: expected.to_string(),
            test: test_for(expected),
            checked,
            pass,
        });
    }
    Ok(rows)
}

/// Structural verification of one classified representative against the
/// family's expected stratum shape.
fn row_matches(plan: &TestPlan, expected: &str) -> bool {
    let r = &plan.report;
    if r.verdict != expected || !r.connected {
        return false;
    }
    if !r.degrees.iter().all(|&d| d == 1) {
        return false;
    }
    match expected {
        PLANE => r.class_indices.len() == 1 && r.intersection_indices.is_empty(),
        _ => r.class_indices.len() == 2 && r.intersection_indices.len() == 1,
    }
}
