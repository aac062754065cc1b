//! Coordinate frames for spaces of graded polynomial matrices.
//!
//! A map `⊕ O(s_k) -> ⊕ O(t_j)` is a matrix whose `(j, k)` entry is a
//! homogeneous form of degree `t_j - s_k`. Fixing the monomial basis of
//! every entry turns the whole hom-space into a finite-dimensional rational
//! vector space; this module provides that coordinatization, builds exact
//! matrices for linear operators between such spaces, and carries the small
//! univariate toolkit (characteristic polynomial, squarefreeness) used by
//! the wedge search.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{monomial_basis, Poly, PolyMatrix, Rat, RationalMatrix};

/// Coordinatization of `Hom(⊕ O(source_k), ⊕ O(target_j))`.
///
/// Coordinates are ordered row-major over entries, then by the monomial
/// order of [`monomial_basis`] within each entry. Entries of negative
/// degree contribute no coordinates (the only such form is zero).
#[derive(Clone, Debug)]
pub(crate) struct CoeffFrame {
    nvars: usize,
    source: Vec<i64>,
    target: Vec<i64>,
    /// Monomial exponents per entry, row-major.
    cells: Vec<Vec<Vec<u32>>>,
    /// Prefix offsets into the coordinate vector, `cells.len() + 1` long.
    offsets: Vec<usize>,
}

impl CoeffFrame {
    pub fn new(nvars: usize, source: &[i64], target: &[i64]) -> Self {
        let mut cells = Vec::with_capacity(source.len() * target.len());
        for &t in target {
            for &s in source {
                cells.push(monomial_basis(nvars, t - s));
            }
        }
        let mut offsets = Vec::with_capacity(cells.len() + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for c in &cells {
            acc += c.len();
            offsets.push(acc);
        }
        CoeffFrame {
            nvars,
            source: source.to_vec(),
            target: target.to_vec(),
            cells,
            offsets,
        }
    }

    /// Dimension of the hom-space.
    pub fn dim(&self) -> usize {
        *self.offsets.last().expect("offsets nonempty")
    }

    /// Reads a matrix of the right profile into coordinates.
    pub fn vectorize(&self, m: &PolyMatrix) -> Result<Vec<Rat>> {
        if m.nvars() != self.nvars || m.source() != self.source || m.target() != self.target {
            return Err(Error::ProfileMismatch(
                "matrix does not fit the coordinate frame".to_string(),
            ));
        }
        let cols = self.source.len();
        let mut out = vec![Rat::zero(); self.dim()];
        for j in 0..self.target.len() {
            for k in 0..cols {
                let cell = j * cols + k;
                let exps = &self.cells[cell];
                let base = self.offsets[cell];
                for (e, c) in m.entry(j, k).terms() {
                    let pos = exps.iter().position(|x| x == e).ok_or_else(|| {
                        Error::InternalInconsistency(
                            "matrix term outside its degree cell".to_string(),
                        )
                    })?;
                    out[base + pos] = c.clone();
                }
            }
        }
        Ok(out)
    }

    /// Builds the matrix with the given coordinates.
    pub fn materialize(&self, coords: &[Rat]) -> Result<PolyMatrix> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "coordinate vector has length {}, frame needs {}",
                coords.len(),
                self.dim()
            )));
        }
        let cols = self.source.len();
        let mut rows = Vec::with_capacity(self.target.len());
        for j in 0..self.target.len() {
            let mut row = Vec::with_capacity(cols);
            for k in 0..cols {
                let cell = j * cols + k;
                let base = self.offsets[cell];
                let terms: Vec<(Vec<u32>, Rat)> = self.cells[cell]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !coords[base + i].is_zero())
                    .map(|(i, e)| (e.clone(), coords[base + i].clone()))
                    .collect();
                row.push(Poly::from_terms(self.nvars, terms)?);
            }
            rows.push(row);
        }
        PolyMatrix::new(
            self.nvars,
            self.source.clone(),
            self.target.clone(),
            rows,
        )
    }

    /// The `k`-th basis matrix (single monomial in a single entry).
    fn basis_matrix(&self, k: usize) -> Result<PolyMatrix> {
        let mut coords = vec![Rat::zero(); self.dim()];
        coords[k] = Rat::one();
        self.materialize(&coords)
    }
}

/// Exact matrix of a linear operator between two hom-spaces, assembled
/// column by column from images of the domain's basis matrices.
pub(crate) fn operator_matrix(
    domain: &CoeffFrame,
    codomain: &CoeffFrame,
    op: impl Fn(&PolyMatrix) -> Result<PolyMatrix>,
) -> Result<RationalMatrix> {
    let cols: Vec<Vec<Rat>> = (0..domain.dim())
        .map(|k| {
            let image = op(&domain.basis_matrix(k)?)?;
            codomain.vectorize(&image)
        })
        .collect::<Result<_>>()?;
    RationalMatrix::from_columns(&cols, codomain.dim())
}

/// Splits a concatenated coordinate vector back into per-block slices.
pub(crate) fn split_blocks<'a>(v: &'a [Rat], dims: &[usize]) -> Vec<&'a [Rat]> {
    let mut out = Vec::with_capacity(dims.len());
    let mut at = 0;
    for &d in dims {
        out.push(&v[at..at + d]);
        at += d;
    }
    debug_assert_eq!(at, v.len());
    out
}

/// Characteristic polynomial of a square rational matrix, monic, returned
/// with ascending powers (`coeffs[k]` multiplies `t^k`). Computed by the
/// trace recursion, which stays in exact rational arithmetic.
pub(crate) fn char_poly(m: &RationalMatrix) -> Result<Vec<Rat>> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    // coeffs[n] = 1, filled downward: p(t) = t^n + c_{n-1} t^{n-1} + ...
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut power = m.clone();
    for k in 1..=n {
        let mut trace = Rat::zero();
        for i in 0..n {
            trace += power.entry(i, i).clone();
        }
        let c = -trace / Rat::from_integer(k.into());
        coeffs[n - k] = c.clone();
        if k < n {
            let shifted = power.add(&RationalMatrix::identity(n).scale(&c))?;
            power = m.mul(&shifted)?;
        }
    }
    Ok(coeffs)
}

fn poly_trim(v: &mut Vec<Rat>) {
    while v.len() > 1 && v.last().map(Rat::is_zero).unwrap_or(false) {
        v.pop();
    }
}

fn poly_derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    let mut out: Vec<Rat> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rat::from_integer(k.into()))
        .collect();
    poly_trim(&mut out);
    out
}

/// Remainder of univariate division; `b` must be nonzero.
fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    assert!(!lead.is_zero(), "division by zero polynomial");
    while r.len() > 1 || !r[0].is_zero() {
        let dr = r.len() - 1;
        if dr < db || (r.len() == 1 && r[0].is_zero()) {
            break;
        }
        let q = &r[dr] / lead;
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &q * &b[i];
            r[idx] -= delta;
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// True when the polynomial has no repeated roots over the algebraic
/// closure, i.e. `gcd(p, p')` is a nonzero constant.
pub(crate) fn is_squarefree(p: &[Rat]) -> bool {
    let d = poly_derivative(p);
    if d.len() == 1 && d[0].is_zero() {
        // Constant polynomial: degree 0, vacuously squarefree only if the
        // polynomial itself is a nonzero constant.
        return p.len() == 1 && !p[0].is_zero();
    }
    let g = poly_gcd(p, &d);
    g.len() == 1 && !g[0].is_zero()
}

/// The map induced by `psi` on the kernel of `a`, expressed in the basis
/// [`RationalMatrix::kernel_basis`] computes for that kernel. Fails when
/// `psi` does not preserve the kernel.
pub(crate) fn action_on_kernel(
    a: &RationalMatrix,
    psi: &RationalMatrix,
) -> Result<RationalMatrix> {
    let basis = a.kernel_basis();
    let dim = a.cols();
    let k = RationalMatrix::from_columns(&basis, dim)?;
    let image = psi.mul(&k)?;
    match k.solve(&image)? {
        Some(x) => Ok(x),
        None => Err(Error::InternalInconsistency(
            "endomorphism does not preserve the fibre".to_string(),
        )),
    }
}
