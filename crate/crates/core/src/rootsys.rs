//! Root systems of types A, B, C, D, E6, E7 in exact rational coordinates.
//!
//! Each system is realized in its standard coordinate model (type A in the
//! sum-zero hyperplane of an (n+1)-dimensional space; B, C, D in n-space;
//! E6 and E7 inside 8-space), so the Weyl-invariant pairing is the ordinary
//! dot product and every reflection is an exact rational orthogonal matrix.
//! Long roots have squared length 2 in the simply-laced types, and in types
//! B and C the normalization makes every coroot an integer vector, which in
//! turn makes all divisor-multiplication coefficients integers.
//!
//! Simple roots are numbered 1-based in Bourbaki order. E8, F4 and G2 are
//! deliberately rejected: they have no minuscule node, so nothing downstream
//! can use them.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{rat, Rat, RationalMatrix};

/// Dynkin series letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// A positive root with its expansion in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositiveRoot {
    /// Ambient rational coordinates.
    pub coords: Vec<Rat>,
    /// Integer coefficients on the simple roots (all nonnegative).
    pub coeffs: Vec<i64>,
    /// Sum of the simple-root coefficients.
    pub height: i64,
}

/// An exact root system with its Weyl-invariant pairing.
#[derive(Clone, Debug)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    dim: usize,
    simple_roots: Vec<Vec<Rat>>,
    positive_roots: Vec<PositiveRoot>,
    cartan: Vec<Vec<i64>>,
    fundamental_weights: Vec<Vec<Rat>>,
    root_index: HashMap<Vec<Rat>, usize>,
    simple_reflections: Vec<RationalMatrix>,
}

/// Dot product of two exact vectors (the invariant form in every model).
pub fn pairing(u: &[Rat], v: &[Rat]) -> Rat {
    assert_eq!(u.len(), v.len(), "pairing of unequal lengths");
    let mut acc = Rat::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

fn unsupported(label: &str) -> Error {
    Error::UnsupportedType(format!(
        "{label} (E8, F4 and G2 are excluded: no minuscule node)"
    ))
}

impl RootSystem {
    /// Builds the root system for a supported (series, rank) pair:
    /// A (rank >= 1), B (>= 2), C (>= 2), D (>= 3), E6, E7.
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let simple_roots = simple_root_model(series, rank)?;
        let dim = simple_roots[0].len();

        // Orbit closure: every root is Weyl-conjugate to a simple root, so
        // repeatedly applying simple reflections to the simple roots
        // enumerates the whole root set.
        let mut seen: HashMap<Vec<Rat>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<Rat>> = VecDeque::new();
        for r in &simple_roots {
            if seen.insert(r.clone(), ()).is_none() {
                queue.push_back(r.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            for s in &simple_roots {
                let image = reflect(&v, s);
                if seen.insert(image.clone(), ()).is_none() {
                    queue.push_back(image);
                }
            }
        }

        // Split the orbit into positive and negative halves by expanding in
        // the simple-root basis through the Gram matrix.
        let gram = RationalMatrix::from_fn(rank, rank, |i, j| {
            pairing(&simple_roots[i], &simple_roots[j])
        });
        let mut positive: Vec<PositiveRoot> = Vec::new();
        for v in seen.keys() {
            let rhs = RationalMatrix::from_fn(rank, 1, |i, _| pairing(v, &simple_roots[i]));
            let c = gram
                .solve(&rhs)?
                .ok_or_else(|| Error::InternalInconsistency("root outside span".to_string()))?;
            let mut coeffs = Vec::with_capacity(rank);
            let mut all_nonneg = true;
            for i in 0..rank {
                let e = c.entry(i, 0);
                if !e.is_integer() {
                    return Err(Error::InternalInconsistency(
                        "non-integral root coefficient".to_string(),
                    ));
                }
                let n = rat_to_i64(e)?;
                all_nonneg &= n >= 0;
                coeffs.push(n);
            }
            if all_nonneg {
                let height = coeffs.iter().sum();
                positive.push(PositiveRoot {
                    coords: v.clone(),
                    coeffs,
                    height,
                });
            }
        }
        positive.sort_by(|a, b| (a.height, &a.coeffs).cmp(&(b.height, &b.coeffs)));
        let root_index = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();

        // Cartan matrix and fundamental weights (inside the root span, which
        // matters when the ambient space is larger than the rank).
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let val = &pairing(&simple_roots[i], &simple_roots[j]) * rat(2)
                    / pairing(&simple_roots[j], &simple_roots[j]);
                cartan[i][j] = rat_to_i64(&val)?;
            }
        }
        let cartan_t = RationalMatrix::from_fn(rank, rank, |i, j| rat(cartan[j][i]));
        let mut fundamental_weights = Vec::with_capacity(rank);
        for i in 0..rank {
            let e_i = RationalMatrix::from_fn(rank, 1, |r, _| {
                if r == i {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            });
            let c = cartan_t.solve(&e_i)?.ok_or_else(|| {
                Error::InternalInconsistency("Cartan matrix singular".to_string())
            })?;
            let mut w = vec![Rat::zero(); dim];
            for k in 0..rank {
                for (d, wd) in w.iter_mut().enumerate() {
                    *wd += c.entry(k, 0) * &simple_roots[k][d];
                }
            }
            fundamental_weights.push(w);
        }

        let simple_reflections = simple_roots.iter().map(|s| reflection_matrix(s)).collect();

        Ok(RootSystem {
            series,
            rank,
            dim,
            simple_roots,
            positive_roots: positive,
            cartan,
            fundamental_weights,
            root_index,
            simple_reflections,
        })
    }

    /// Parses labels like `"A4"`, `"D5"`, `"E6"`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            _ => return Err(unsupported(label)),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedType(format!("{label} (cannot read rank)")))?;
        Self::new(series, rank)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient coordinate space.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Short label like `"E7"`.
    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    /// Simple root by 1-based Bourbaki index.
    pub fn simple_root(&self, node: usize) -> Result<&[Rat]> {
        self.check_node(node)?;
        Ok(&self.simple_roots[node - 1])
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Cartan matrix `[ <alpha_i, alpha_j^vee> ]_(i,j)` (0-based grid over
    /// 1-based nodes).
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Fundamental weight by 1-based node index; lies in the span of the
    /// roots.
    pub fn fundamental_weight(&self, node: usize) -> Result<&[Rat]> {
        self.check_node(node)?;
        Ok(&self.fundamental_weights[node - 1])
    }

    /// The coroot `2β/(β,β)` of a root.
    pub fn coroot(&self, beta: &[Rat]) -> Result<Vec<Rat>> {
        if !self.is_root(beta) {
            return Err(Error::OutOfRange("not a root".to_string()));
        }
        let norm = pairing(beta, beta);
        Ok(beta.iter().map(|b| b * rat(2) / &norm).collect())
    }

    /// Membership test against the generated root set.
    pub fn is_root(&self, v: &[Rat]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        if self.root_index.contains_key(v) {
            return true;
        }
        let neg: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
        self.root_index.contains_key(&neg)
    }

    /// Index of a POSITIVE root in `positive_roots`, if it is one.
    pub fn positive_root_index(&self, v: &[Rat]) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// `<weight, beta^vee>` for a root `beta`.
    pub fn pair_with_coroot(&self, weight: &[Rat], beta: &[Rat]) -> Rat {
        &pairing(weight, beta) * rat(2) / pairing(beta, beta)
    }

    /// Reflection matrix of a simple root (1-based index).
    pub fn simple_reflection(&self, node: usize) -> Result<&RationalMatrix> {
        self.check_node(node)?;
        Ok(&self.simple_reflections[node - 1])
    }

    /// Reflection matrix in an arbitrary root.
    pub fn reflection_in(&self, beta: &[Rat]) -> Result<RationalMatrix> {
        if !self.is_root(beta) {
            return Err(Error::OutOfRange("not a root".to_string()));
        }
        Ok(reflection_matrix(beta))
    }

    /// Nodes whose fundamental weight pairs to 0 or 1 with every positive
    /// coroot (1-based, ascending).
    pub fn minuscule_nodes(&self) -> Vec<usize> {
        (1..=self.rank)
            .filter(|&node| self.is_minuscule(node))
            .collect()
    }

    pub fn is_minuscule(&self, node: usize) -> bool {
        if node == 0 || node > self.rank {
            return false;
        }
        let w = &self.fundamental_weights[node - 1];
        self.positive_roots.iter().all(|beta| {
            let p = self.pair_with_coroot(w, &beta.coords);
            p.is_zero() || p.is_one()
        })
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.rank {
            return Err(Error::InvalidNode {
                node,
                rank: self.rank,
            });
        }
        Ok(())
    }

    /// Size of the Weyl orbit of a weight (breadth-first closure under the
    /// simple reflections). Independent cross-check for coset counts.
    pub fn weight_orbit_size(&self, weight: &[Rat]) -> usize {
        let mut seen: HashMap<Vec<Rat>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(weight.to_vec(), ());
        queue.push_back(weight.to_vec());
        while let Some(v) = queue.pop_front() {
            for s in &self.simple_roots {
                let image = reflect(&v, s);
                if seen.insert(image.clone(), ()).is_none() {
                    queue.push_back(image);
                }
            }
        }
        seen.len()
    }
}

/// Reflects `v` in the hyperplane orthogonal to `root`.
pub fn reflect(v: &[Rat], root: &[Rat]) -> Vec<Rat> {
    let scale = &pairing(v, root) * rat(2) / pairing(root, root);
    v.iter()
        .zip(root)
        .map(|(x, r)| x - &scale * r)
        .collect()
}

/// The matrix of the reflection in `root` (orthogonal, exact).
pub fn reflection_matrix(root: &[Rat]) -> RationalMatrix {
    let dim = root.len();
    let norm = pairing(root, root);
    RationalMatrix::from_fn(dim, dim, |r, c| {
        let mut v = -(&root[r] * rat(2) * &root[c] / &norm);
        if r == c {
            v += Rat::one();
        }
        v
    })
}

fn rat_to_i64(r: &Rat) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::InternalInconsistency(format!(
            "expected integer, got {r}"
        )));
    }
    let n = r.numer();
    i64::try_from(n.clone())
        .map_err(|_| Error::InternalInconsistency("integer out of machine range".to_string()))
}

/// Standard coordinate models of the simple roots (Bourbaki numbering).
fn simple_root_model(series: Series, rank: usize) -> Result<Vec<Vec<Rat>>> {
    let basis = |dim: usize, i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v
    };
    let diff = |dim: usize, i: usize, j: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v[j] = -Rat::one();
        v
    };
    match series {
        Series::A => {
            if rank < 1 {
                return Err(unsupported(&format!("A{rank}")));
            }
            let dim = rank + 1;
            Ok((0..rank).map(|i| diff(dim, i, i + 1)).collect())
        }
        Series::B => {
            if rank < 2 {
                return Err(unsupported(&format!("B{rank}")));
            }
            let mut roots: Vec<Vec<Rat>> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            roots.push(basis(rank, rank - 1));
            Ok(roots)
        }
        Series::C => {
            if rank < 2 {
                return Err(unsupported(&format!("C{rank}")));
            }
            let mut roots: Vec<Vec<Rat>> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            let mut last = vec![Rat::zero(); rank];
            last[rank - 1] = rat(2);
            roots.push(last);
            Ok(roots)
        }
        Series::D => {
            if rank < 3 {
                return Err(unsupported(&format!("D{rank}")));
            }
            let mut roots: Vec<Vec<Rat>> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            let mut last = vec![Rat::zero(); rank];
            last[rank - 2] = Rat::one();
            last[rank - 1] = Rat::one();
            roots.push(last);
            Ok(roots)
        }
        Series::E => {
            if rank != 6 && rank != 7 {
                return Err(unsupported(&format!("E{rank}")));
            }
            let dim = 8;
            let half = Rat::new(1.into(), 2.into());
            // alpha_1 = (e1 + e8 - e2 - e3 - e4 - e5 - e6 - e7) / 2
            let mut a1 = vec![-half.clone(); dim];
            a1[0] = half.clone();
            a1[7] = half;
            // alpha_2 = e1 + e2
            let mut a2 = vec![Rat::zero(); dim];
            a2[0] = Rat::one();
            a2[1] = Rat::one();
            let mut roots = vec![a1, a2];
            // alpha_3 = e2 - e1, alpha_4 = e3 - e2, ..., alpha_k = e_(k-2) - e_(k-3)
            for k in 3..=rank {
                roots.push(diff(dim, k - 2, k - 3));
            }
            Ok(roots)
        }
    }
}
