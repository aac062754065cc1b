//! Dense matrices over the exact rationals.
//!
//! All elimination is fraction-free: rows are scaled to integers and reduced
//! by the Bareiss one-step rule, so intermediate entries are minors of the
//! scaled input and never suffer rational-gcd blow-up. Rank, kernel bases and
//! linear solves are all derived from the same deterministic echelon pass.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{Int, Rat};

/// A dense `rows x cols` matrix of exact rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major
}

impl RationalMatrix {
    /// The `rows x cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(
                "rows of unequal length".to_string(),
            ));
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers (used heavily in tests).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| super::rat(v)).collect())
            .collect();
        Self::from_rows(converted).expect("integer literal rows must be rectangular")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rat>], nrows: usize) -> Result<Self> {
        if cols.iter().any(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch(
                "columns of unequal length".to_string(),
            ));
        }
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Fills a matrix entry-by-entry from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.entry(i, j).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.entry(i, j) + other.entry(i, j)
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.entry(i, j) * c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.entry(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "mul_vec {}x{} with length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.entry(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hcat {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.entry(i, j).clone()
            } else {
                other.entry(i, j - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vcat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vcat {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.entry(i, j).clone()
            } else {
                other.entry(i - self.rows, j).clone()
            }
        }))
    }

    /// Rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        self.echelon(self.cols).pivots.len()
    }

    /// Dimension of the right kernel.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel `{x : Mx = 0}`, as column vectors.
    ///
    /// Deterministic: free columns are taken in increasing order, and each
    /// basis vector has a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let ech = self.echelon(self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &(_, c) in &ech.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut x = vec![Rat::zero(); self.cols];
            x[f] = Rat::one();
            for &(r, c) in ech.pivots.iter().rev() {
                if c > f {
                    continue;
                }
                let mut acc = Rat::zero();
                let row = &ech.mat[r];
                for j in (c + 1)..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc += Rat::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[c] = -acc / Rat::from_integer(row[c].clone());
            }
            basis.push(x);
        }
        basis
    }

    /// Kernel basis packed as the columns of a matrix (`cols x nullity`).
    pub fn kernel_matrix(&self) -> Self {
        let basis = self.kernel_basis();
        Self::from_columns(&basis, self.cols).expect("kernel vectors have matching length")
    }

    /// Solves `self * X = rhs` exactly. Returns `None` when inconsistent.
    /// Free variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Self>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve {}x{} against rhs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let aug = self.hcat(rhs)?;
        // Pivots restricted to the coefficient block.
        let ech = aug.echelon(self.cols);
        let rank = ech.pivots.len();
        // Consistency: below the pivot rows the coefficient block is zero,
        // so any nonzero right-hand entry there kills solvability.
        for r in rank..self.rows {
            for j in self.cols..aug.cols {
                if !ech.mat[r][j].is_zero() {
                    return Ok(None);
                }
            }
        }
        let mut out = Self::zeros(self.cols, rhs.cols);
        for b in 0..rhs.cols {
            let bj = self.cols + b;
            let mut x = vec![Rat::zero(); self.cols];
            for &(r, c) in ech.pivots.iter().rev() {
                let row = &ech.mat[r];
                let mut acc = Rat::from_integer(row[bj].clone());
                for j in (c + 1)..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc -= Rat::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[c] = acc / Rat::from_integer(row[c].clone());
            }
            for (i, v) in x.into_iter().enumerate() {
                out.set(i, b, v);
            }
        }
        Ok(Some(out))
    }

    /// Row-echelonizes an integer-scaled copy with one-step Bareiss
    /// elimination. `pivot_limit` restricts pivot columns to `0..pivot_limit`
    /// (pass `self.cols` for an unrestricted pass).
    fn echelon(&self, pivot_limit: usize) -> IntEchelon {
        let mut m: Vec<Vec<Int>> = (0..self.rows).map(|i| self.int_scaled_row(i)).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = Int::one();
        let mut r = 0usize;
        for c in 0..pivot_limit.min(self.cols) {
            if r >= self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&p| !m[p][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let piv = m[r][c].clone();
            for i in (r + 1)..self.rows {
                let lead = std::mem::replace(&mut m[i][c], Int::zero());
                if lead.is_zero() && piv.is_one() && prev.is_one() {
                    // Fast path: nothing to eliminate and no rescaling needed.
                    continue;
                }
                for j in (c + 1)..self.cols {
                    let num = &piv * &m[i][j] - &lead * &m[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
            }
            pivots.push((r, c));
            prev = piv;
            r += 1;
        }
        IntEchelon { mat: m, pivots }
    }

    /// Clears denominators in row `i`, returning an integer row that spans
    /// the same line (scaling by the positive lcm of denominators).
    fn int_scaled_row(&self, i: usize) -> Vec<Int> {
        let mut l = Int::one();
        for j in 0..self.cols {
            let d = self.entry(i, j).denom();
            l = l.lcm(d);
        }
        let l = l.abs();
        (0..self.cols)
            .map(|j| {
                let e = self.entry(i, j);
                e.numer() * (&l / e.denom())
            })
            .collect()
    }
}

/// Integer row-echelon form with the pivot positions in elimination order.
struct IntEchelon {
    mat: Vec<Vec<Int>>,
    pivots: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(RationalMatrix::zeros(2, 5).kernel_dim(), 5);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = RationalMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_dim(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // Kernel vector satisfies Mx = 0.
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Rat::is_zero));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = RationalMatrix::from_int_rows(&[&[1, 2, 3, 4], &[0, 1, -1, 2], &[1, 3, 2, 6]]);
        assert_eq!(m.rank(), 2);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).unwrap().iter().all(Rat::is_zero));
        }
        // Basis vectors are linearly independent: pack as columns, check rank.
        let km = m.kernel_matrix();
        assert_eq!(km.rank(), 2);
    }

    #[test]
    fn rational_entries_eliminate_exactly() {
        let half = Rat::new(1.into(), 2.into());
        let third = Rat::new(1.into(), 3.into());
        let m = RationalMatrix::from_rows(vec![
            vec![half.clone(), third.clone()],
            vec![third, half],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = RationalMatrix::from_int_rows(&[&[2, 0], &[0, 4]]);
        let b = RationalMatrix::from_int_rows(&[&[1], &[2]]);
        let x = a.solve(&b).unwrap().expect("diagonal system is solvable");
        assert_eq!(x.entry(0, 0), &Rat::new(1.into(), 2.into()));
        assert_eq!(x.entry(1, 0), &Rat::new(1.into(), 2.into()));

        let singular = RationalMatrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        let bad = RationalMatrix::from_int_rows(&[&[0], &[1]]);
        assert!(singular.solve(&bad).unwrap().is_none());
        let good = RationalMatrix::from_int_rows(&[&[3], &[3]]);
        let sol = singular.solve(&good).unwrap().expect("consistent");
        assert_eq!(singular.mul(&sol).unwrap(), good);
    }

    #[test]
    fn solve_with_zero_rows_and_columns() {
        // 0xN coefficient matrices impose no constraints.
        let a = RationalMatrix::zeros(0, 3);
        let b = RationalMatrix::zeros(0, 2);
        let x = a.solve(&b).unwrap().expect("vacuous system");
        assert_eq!((x.rows(), x.cols()), (3, 2));
        assert!(x.is_zero());
        // Nx0: only the zero solution shape exists.
        let a = RationalMatrix::zeros(3, 0);
        let b = RationalMatrix::zeros(3, 1);
        let x = a.solve(&b).unwrap().expect("zero rhs");
        assert_eq!((x.rows(), x.cols()), (0, 1));
        let bad = RationalMatrix::from_int_rows(&[&[1], &[0], &[0]]);
        assert!(a.solve(&bad).unwrap().is_none());
    }

    #[test]
    fn multiplication_agrees_with_hand_computation() {
        let a = RationalMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let b = RationalMatrix::from_int_rows(&[&[5, 6], &[7, 8]]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c, RationalMatrix::from_int_rows(&[&[19, 22], &[43, 50]]));
        assert_eq!(
            a.transpose(),
            RationalMatrix::from_int_rows(&[&[1, 3], &[2, 4]])
        );
    }

    #[test]
    fn rank_plus_nullity_on_structured_samples() {
        // Deterministic pseudo-random integer matrices.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for rows in 1..6usize {
            for cols in 1..6usize {
                let m = RationalMatrix::from_fn(rows, cols, |_, _| rat(next()));
                assert_eq!(m.rank() + m.kernel_dim(), cols);
                for v in m.kernel_basis() {
                    assert!(m.mul_vec(&v).unwrap().iter().all(Rat::is_zero));
                }
            }
        }
    }

    #[test]
    fn elimination_is_deterministic() {
        let m = RationalMatrix::from_int_rows(&[&[0, 2, 1], &[4, 1, 0], &[4, 3, 1]]);
        assert_eq!(m.kernel_basis(), m.kernel_basis());
        assert_eq!(m.rank(), 2);
    }
}
