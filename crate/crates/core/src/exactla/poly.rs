//! Sparse homogeneous polynomials and graded polynomial matrices.
//!
//! A [`PolyMatrix`] models a map between direct sums of twisted line bundles:
//! column `k` carries a source twist, row `j` a target twist, and the entry
//! `(j,k)` must be homogeneous of degree `target[j] - source[k]` (or zero; a
//! negative required degree forces zero). The induced maps on global-section
//! and top-cohomology monomial bases are produced here as exact rational
//! matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{monomial_basis, Rat, RationalMatrix};

/// A polynomial in `nvars` variables with exact rational coefficients,
/// stored as a sorted exponent-vector map with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length must equal nvars");
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, Rat)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(
                    "exponent vector length must equal nvars".to_string(),
                ));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// True when the polynomial is zero or homogeneous of exactly degree `d`
    /// (with `d >= 0`); the degree-profile test for matrix entries.
    pub fn fits_profile(&self, d: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        if d < 0 {
            return false;
        }
        self.terms
            .keys()
            .all(|e| e.iter().map(|&k| i64::from(k)).sum::<i64>() == d)
    }

    /// Substitutes `x_k = 0` and removes that variable slot entirely,
    /// producing a polynomial in `nvars - 1` variables.
    pub fn eliminate_var(&self, k: usize) -> Self {
        assert!(k < self.nvars);
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[k] != 0 {
                continue;
            }
            let mut reduced = e.clone();
            reduced.remove(k);
            out.add_term(reduced, c.clone());
        }
        out
    }
}

fn var_name(nvars: usize, i: usize) -> String {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    if nvars <= 3 {
        NAMES[i].to_string()
    } else {
        format!("x{i}")
    }
}

impl fmt::Display for Poly {
    /// Canonical textual form: terms in ascending lexicographic exponent
    /// order, joined by ` + ` / ` - `, each term `c*x^a*y^b*z^c` with the
    /// coefficient omitted when it is `+-1` on a non-constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            let constant_term = e.iter().all(|&k| k == 0);
            if !mag.is_one() || constant_term {
                parts.push(mag.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    parts.push(var_name(self.nvars, i));
                } else if k >= 2 {
                    parts.push(format!("{}^{}", var_name(self.nvars, i), k));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Which cohomology row of a line bundle a basis lives in: global sections
/// (`H0`) or top cohomology (`H2` on the plane, degree 1 on a line).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CohRow {
    H0,
    Top,
}

/// A graded matrix of homogeneous polynomials: a map
/// `⊕_k O(source[k]) -> ⊕_j O(target[j])`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    nvars: usize,
    source: Vec<i64>,
    target: Vec<i64>,
    entries: Vec<Poly>, // row-major, target.len() x source.len()
}

impl PolyMatrix {
    /// Validates the degree profile of every entry.
    pub fn new(
        nvars: usize,
        source: Vec<i64>,
        target: Vec<i64>,
        entries: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        if entries.len() != target.len() || entries.iter().any(|r| r.len() != source.len()) {
            return Err(Error::DimensionMismatch(format!(
                "entry grid must be {}x{}",
                target.len(),
                source.len()
            )));
        }
        for (j, row) in entries.iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                if p.nvars() != nvars {
                    return Err(Error::ProfileMismatch(format!(
                        "entry ({j},{k}) uses {} variables, expected {nvars}",
                        p.nvars()
                    )));
                }
                let d = target[j] - source[k];
                if !p.fits_profile(d) {
                    return Err(Error::ProfileMismatch(format!(
                        "entry ({j},{k}) must be homogeneous of degree {d} (or zero)"
                    )));
                }
            }
        }
        Ok(PolyMatrix {
            nvars,
            source,
            target,
            entries: entries.into_iter().flatten().collect(),
        })
    }

    pub fn zero(nvars: usize, source: Vec<i64>, target: Vec<i64>) -> Self {
        let entries = vec![vec![Poly::zero(nvars); source.len()]; target.len()];
        Self::new(nvars, source, target, entries).expect("zero matrix fits any profile")
    }

    /// Identity on `⊕ O(twists[i])`.
    pub fn identity(nvars: usize, twists: Vec<i64>) -> Self {
        let n = twists.len();
        let mut entries = vec![vec![Poly::zero(nvars); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Poly::one(nvars);
        }
        Self::new(nvars, twists.clone(), twists, entries).expect("identity fits profile")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self) -> &[i64] {
        &self.source
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    pub fn entry(&self, j: usize, k: usize) -> &Poly {
        &self.entries[j * self.source.len() + k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    fn entry_grid(&self) -> Vec<Vec<Poly>> {
        (0..self.rows())
            .map(|j| (0..self.cols()).map(|k| self.entry(j, k).clone()).collect())
            .collect()
    }

    pub fn neg(&self) -> Self {
        let entries = (0..self.rows())
            .map(|j| (0..self.cols()).map(|k| self.entry(j, k).neg()).collect())
            .collect();
        Self::new(
            self.nvars,
            self.source.clone(),
            self.target.clone(),
            entries,
        )
        .expect("negation preserves profiles")
    }

    /// Composition `self ∘ other`; requires `other.target == self.source`
    /// as exact twist lists.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::ProfileMismatch(
                "compose: variable counts differ".to_string(),
            ));
        }
        if self.source != other.target {
            return Err(Error::ProfileMismatch(
                "compose: inner twist lists differ".to_string(),
            ));
        }
        let entries = (0..self.rows())
            .map(|j| {
                (0..other.cols())
                    .map(|k| {
                        let mut acc = Poly::zero(self.nvars);
                        for m in 0..self.cols() {
                            let a = self.entry(j, m);
                            let b = other.entry(m, k);
                            if !a.is_zero() && !b.is_zero() {
                                acc = acc.add(&a.mul(b));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self::new(
            self.nvars,
            other.source.clone(),
            self.target.clone(),
            entries,
        )
    }

    /// Tensor (Kronecker) product. Row `(i_a, i_b)` maps to `i_a * other.rows + i_b`,
    /// and twists add pairwise.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let sum_list = |a: &[i64], b: &[i64]| -> Vec<i64> {
            a.iter()
                .flat_map(|&x| b.iter().map(move |&y| x + y))
                .collect()
        };
        let source = sum_list(&self.source, &other.source);
        let target = sum_list(&self.target, &other.target);
        let entries = (0..self.rows())
            .flat_map(|ja| {
                (0..other.rows()).map(move |jb| {
                    (0..self.cols())
                        .flat_map(|ka| {
                            (0..other.cols())
                                .map(move |kb| self.entry(ja, ka).mul(other.entry(jb, kb)))
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        Self::new(self.nvars, source, target, entries).expect("tensor degrees add")
    }

    /// The dual map `⊕ O(-target[j]) -> ⊕ O(-source[k])` with entry
    /// `(k,j) = self(j,k)`; same polynomials, transposed positions.
    pub fn transpose_dual(&self) -> Self {
        let source: Vec<i64> = self.target.iter().map(|&t| -t).collect();
        let target: Vec<i64> = self.source.iter().map(|&s| -s).collect();
        let entries = (0..self.cols())
            .map(|k| (0..self.rows()).map(|j| self.entry(j, k).clone()).collect())
            .collect();
        Self::new(self.nvars, source, target, entries).expect("dual preserves profiles")
    }

    /// Horizontal block concatenation (shared target twists).
    pub fn hstack(parts: &[&PolyMatrix]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| {
            Error::DimensionMismatch("hstack of zero blocks".to_string())
        })?;
        let mut source = Vec::new();
        for p in parts {
            if p.target != first.target || p.nvars != first.nvars {
                return Err(Error::ProfileMismatch(
                    "hstack blocks must share target twists".to_string(),
                ));
            }
            source.extend_from_slice(&p.source);
        }
        let entries = (0..first.rows())
            .map(|j| {
                parts
                    .iter()
                    .flat_map(|p| (0..p.cols()).map(move |k| p.entry(j, k).clone()))
                    .collect()
            })
            .collect();
        Self::new(first.nvars, source, first.target.clone(), entries)
    }

    /// Vertical block concatenation (shared source twists).
    pub fn vstack(parts: &[&PolyMatrix]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| {
            Error::DimensionMismatch("vstack of zero blocks".to_string())
        })?;
        let mut target = Vec::new();
        let mut entries: Vec<Vec<Poly>> = Vec::new();
        for p in parts {
            if p.source != first.source || p.nvars != first.nvars {
                return Err(Error::ProfileMismatch(
                    "vstack blocks must share source twists".to_string(),
                ));
            }
            target.extend_from_slice(&p.target);
            entries.extend(p.entry_grid());
        }
        Self::new(first.nvars, first.source.clone(), target, entries)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut source = self.source.clone();
        source.extend_from_slice(&other.source);
        let mut target = self.target.clone();
        target.extend_from_slice(&other.target);
        let entries = (0..self.rows() + other.rows())
            .map(|j| {
                (0..self.cols() + other.cols())
                    .map(|k| {
                        if j < self.rows() && k < self.cols() {
                            self.entry(j, k).clone()
                        } else if j >= self.rows() && k >= self.cols() {
                            other.entry(j - self.rows(), k - self.cols()).clone()
                        } else {
                            Poly::zero(self.nvars)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(self.nvars, source, target, entries).expect("block sum preserves profiles")
    }

    /// Evaluates every entry at an affine point.
    pub fn eval(&self, point: &[Rat]) -> Result<RationalMatrix> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "evaluation point has {} coordinates, expected {}",
                point.len(),
                self.nvars
            )));
        }
        Ok(RationalMatrix::from_fn(self.rows(), self.cols(), |j, k| {
            self.entry(j, k).eval(point)
        }))
    }

    /// Restricts to the hyperplane `x_k = 0`, dropping that variable.
    pub fn eliminate_var(&self, k: usize) -> Self {
        let entries = (0..self.rows())
            .map(|j| {
                (0..self.cols())
                    .map(|c| self.entry(j, c).eliminate_var(k))
                    .collect()
            })
            .collect();
        Self::new(
            self.nvars - 1,
            self.source.clone(),
            self.target.clone(),
            entries,
        )
        .expect("restriction preserves profiles")
    }

    /// The matrix of the induced map on global sections at the given twist:
    /// `⊕_k S_(source[k]+twist) -> ⊕_j S_(target[j]+twist)` in concatenated
    /// lexicographic monomial bases.
    pub fn induced_h0(&self, twist: i64) -> RationalMatrix {
        let src_blocks: Vec<Vec<Vec<u32>>> = self
            .source
            .iter()
            .map(|&s| monomial_basis(self.nvars, s + twist))
            .collect();
        let tgt_blocks: Vec<Vec<Vec<u32>>> = self
            .target
            .iter()
            .map(|&t| monomial_basis(self.nvars, t + twist))
            .collect();
        let mult = |p: &Poly, e: &[u32]| -> Vec<(Vec<u32>, Rat)> {
            p.terms()
                .map(|(m, c)| {
                    let exp: Vec<u32> = m.iter().zip(e).map(|(a, b)| a + b).collect();
                    (exp, c.clone())
                })
                .collect()
        };
        self.assemble_induced(&src_blocks, &tgt_blocks, mult)
    }

    /// The matrix of the induced map on top cohomology at the given twist.
    ///
    /// The basis of top cohomology of `O(a)` is the set of Laurent monomials
    /// with every exponent `<= -1` summing to `a + twist`, encoded through
    /// `e_i = -(f_i + 1)` as ordinary monomials `f` of total degree
    /// `-(a + twist) - nvars`. Multiplication by a polynomial adds exponents
    /// and discards any result with an exponent `>= 0` (i.e. `f_i < m_i`),
    /// which is exactly the module structure of top cohomology.
    ///
    /// `cutoff` truncates every Laurent exponent to `>= -B`, i.e. keeps only
    /// `f_i <= B - 1`; `None` means the full (finite) basis.
    pub fn induced_top(&self, twist: i64, cutoff: Option<i64>) -> RationalMatrix {
        let src_blocks: Vec<Vec<Vec<u32>>> = self
            .source
            .iter()
            .map(|&s| top_basis(self.nvars, s + twist, cutoff))
            .collect();
        let tgt_blocks: Vec<Vec<Vec<u32>>> = self
            .target
            .iter()
            .map(|&t| top_basis(self.nvars, t + twist, cutoff))
            .collect();
        let mult = |p: &Poly, f: &[u32]| -> Vec<(Vec<u32>, Rat)> {
            p.terms()
                .filter_map(|(m, c)| {
                    let mut out = Vec::with_capacity(f.len());
                    for (a, b) in f.iter().zip(m) {
                        if a < b {
                            return None; // exponent would leave the support
                        }
                        out.push(a - b);
                    }
                    Some((out, c.clone()))
                })
                .collect()
        };
        self.assemble_induced(&src_blocks, &tgt_blocks, mult)
    }

    fn assemble_induced(
        &self,
        src_blocks: &[Vec<Vec<u32>>],
        tgt_blocks: &[Vec<Vec<u32>>],
        mult: impl Fn(&Poly, &[u32]) -> Vec<(Vec<u32>, Rat)>,
    ) -> RationalMatrix {
        let src_offsets = block_offsets(src_blocks);
        let tgt_offsets = block_offsets(tgt_blocks);
        let tgt_index: Vec<HashMap<&[u32], usize>> = tgt_blocks
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(i, e)| (e.as_slice(), i))
                    .collect()
            })
            .collect();
        let total_src = src_offsets.last().copied().unwrap_or(0);
        let total_tgt = tgt_offsets.last().copied().unwrap_or(0);
        let mut out = RationalMatrix::zeros(total_tgt, total_src);
        for (k, src_block) in src_blocks.iter().enumerate() {
            for j in 0..self.rows() {
                let p = self.entry(j, k);
                if p.is_zero() {
                    continue;
                }
                for (si, e) in src_block.iter().enumerate() {
                    let col = src_offsets[k] + si;
                    for (exp, c) in mult(p, e) {
                        if let Some(&ti) = tgt_index[j].get(exp.as_slice()) {
                            let row = tgt_offsets[j] + ti;
                            let v = out.entry(row, col) + &c;
                            out.set(row, col, v);
                        }
                        // A missing target monomial can only happen for the
                        // truncated top-cohomology basis, where it means the
                        // product fell outside the kept window.
                    }
                }
            }
        }
        out
    }
}

/// Basis of top cohomology of `O(d)` in the `f`-encoding (see
/// [`PolyMatrix::induced_top`]), optionally truncated to `f_i <= cutoff-1`.
pub fn top_basis(nvars: usize, d: i64, cutoff: Option<i64>) -> Vec<Vec<u32>> {
    let total = -d - nvars as i64;
    let all = monomial_basis(nvars, total);
    match cutoff {
        None => all,
        Some(b) => all
            .into_iter()
            .filter(|f| f.iter().all(|&fi| i64::from(fi) <= b - 1))
            .collect(),
    }
}

fn block_offsets(blocks: &[Vec<Vec<u32>>]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(blocks.len() + 1);
    let mut acc = 0usize;
    for b in blocks {
        offsets.push(acc);
        acc += b.len();
    }
    offsets.push(acc);
    offsets
}
