//! On-disk JSON formats for bundle presentations and wedge data.
//!
//! A bundle file describes one graded matrix and which side of it presents
//! the bundle (`kernel` or `cokernel`); a wedge file nests two such bundles
//! plus the gluing matrix that identifies their restrictions along the
//! shared line `z = 0`. Matrix entries are polynomial strings in the
//! grammar of [`crate::polyparse`]; reading validates the whole document
//! (field names, matrix shape, homogeneity profile, local freeness) and
//! reports positions on failure.

use serde::{Deserialize, Serialize};

use schubsplit::{ComplexKind, FreeComplex, Poly, PolyMatrix, WedgeBundle};

use crate::polyparse::parse_poly;

/// Which side of the matrix presents the bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    Kernel,
    Cokernel,
}

/// JSON presentation of a bundle on the plane (3 variables) or on the
/// line (2 variables): the bundle is the kernel or cokernel of the matrix
/// mapping `⊕ O(source_twists[k]) -> ⊕ O(target_twists[j])`, with
/// `matrix[j][k]` homogeneous of degree `target_twists[j] - source_twists[k]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub variables: usize,
    pub kind: FileKind,
    pub source_twists: Vec<i64>,
    pub target_twists: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
}

/// JSON for a bundle on two planes glued along their common line: two
/// plane bundles plus the gluing matrix over the two line coordinates,
/// mapping the left presentation's middle sum to the right one's.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeFile {
    pub left: BundleFile,
    pub right: BundleFile,
    pub gluing: Vec<Vec<String>>,
}

impl BundleFile {
    /// Parses and validates the presentation into a checked complex.
    pub fn to_complex(&self) -> Result<FreeComplex, String> {
        if self.variables != 2 && self.variables != 3 {
            return Err(format!(
                "\"variables\" must be 2 (line) or 3 (plane), got {}",
                self.variables
            ));
        }
        let map = parse_matrix(
            &self.matrix,
            self.variables,
            &self.source_twists,
            &self.target_twists,
            "matrix",
        )?;
        match self.kind {
            FileKind::Kernel => FreeComplex::kernel(map),
            FileKind::Cokernel => FreeComplex::cokernel(map),
        }
        .map_err(|e| e.to_string())
    }

    /// Renders a two-term complex back into its file form, with entries in
    /// the canonical polynomial spelling.
    pub fn from_complex(complex: &FreeComplex) -> Result<Self, String> {
        let kind = match complex.kind() {
            ComplexKind::Kernel => FileKind::Kernel,
            ComplexKind::Cokernel => FileKind::Cokernel,
            ComplexKind::Monad => {
                return Err("three-term presentations have no single-matrix file form".to_string())
            }
        };
        let map = &complex.maps()[0];
        Ok(BundleFile {
            variables: complex.nvars(),
            kind,
            source_twists: map.source().to_vec(),
            target_twists: map.target().to_vec(),
            matrix: render_matrix(map),
        })
    }
}

impl WedgeFile {
    /// Parses and validates the full wedge datum.
    pub fn to_wedge(&self) -> Result<WedgeBundle, String> {
        let left = self
            .left
            .to_complex()
            .map_err(|e| format!("left bundle: {e}"))?;
        let right = self
            .right
            .to_complex()
            .map_err(|e| format!("right bundle: {e}"))?;
        let gluing = parse_matrix(
            &self.gluing,
            2,
            &middle_twists(&left),
            &middle_twists(&right),
            "gluing",
        )?;
        WedgeBundle::new(left, right, gluing).map_err(|e| e.to_string())
    }
}

/// Twists of the level carrying the bundle's generators: what the gluing
/// matrix maps between.
fn middle_twists(complex: &FreeComplex) -> Vec<i64> {
    match complex.kind() {
        ComplexKind::Kernel => complex.levels()[0].clone(),
        ComplexKind::Cokernel | ComplexKind::Monad => complex.levels()[1].clone(),
    }
}

/// Renders every entry of a graded matrix in the canonical spelling.
pub fn render_matrix(map: &PolyMatrix) -> Vec<Vec<String>> {
    (0..map.rows())
        .map(|j| (0..map.cols()).map(|k| map.entry(j, k).to_string()).collect())
        .collect()
}

/// Parses a grid of polynomial strings against a degree profile; `what`
/// names the grid in error messages.
pub fn parse_matrix(
    matrix: &[Vec<String>],
    nvars: usize,
    source: &[i64],
    target: &[i64],
    what: &str,
) -> Result<PolyMatrix, String> {
    if matrix.len() != target.len() {
        return Err(format!(
            "{what} has {} rows but the target lists {} twists",
            matrix.len(),
            target.len()
        ));
    }
    let mut entries: Vec<Vec<Poly>> = Vec::with_capacity(matrix.len());
    for (j, row) in matrix.iter().enumerate() {
        if row.len() != source.len() {
            return Err(format!(
                "{what} row {} has {} entries but the source lists {} twists",
                j + 1,
                row.len(),
                source.len()
            ));
        }
        let mut out = Vec::with_capacity(row.len());
        for (k, text) in row.iter().enumerate() {
            let p = parse_poly(text, nvars).map_err(|e| {
                format!("{what} entry at row {}, column {}: {e}", j + 1, k + 1)
            })?;
            out.push(p);
        }
        entries.push(out);
    }
    PolyMatrix::new(nvars, source.to_vec(), target.to_vec(), entries).map_err(|e| e.to_string())
}
