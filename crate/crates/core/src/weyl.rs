//! Weyl group elements as exact orthogonal matrices, plus the graded poset
//! of minimal-length coset representatives for a maximal parabolic subgroup.
//!
//! An element is stored as its action matrix together with a canonical
//! reduced word (the lexicographically first one produced by the descent
//! walk), so equality, hashing and ordering are all exact and deterministic.
//! The coset poset `W^P` is enumerated through the Weyl orbit of the
//! fundamental weight of the chosen node: minimal representatives biject
//! with orbit points, which keeps deduplication cheap and doubles as a
//! built-in counting cross-check.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Rat, RationalMatrix};
use crate::rootsys::{reflect, reflection_matrix, RootSystem};

/// A Weyl group element: canonical reduced word plus exact action matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: RationalMatrix,
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            word: Vec::new(),
            matrix: RationalMatrix::identity(rs.ambient_dim()),
        }
    }

    /// Product of simple reflections `s_{word[0]} s_{word[1]} ...`
    /// (1-based node indices); the stored word is re-canonicalized.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut m = RationalMatrix::identity(rs.ambient_dim());
        for &i in word {
            m = m.mul(rs.simple_reflection(i)?)?;
        }
        Self::from_matrix(rs, m)
    }

    /// Wraps a matrix that must lie in the Weyl group; rejects anything
    /// that does not permute the roots or cannot be written in the
    /// generators.
    pub fn from_matrix(rs: &RootSystem, matrix: RationalMatrix) -> Result<Self> {
        let word = canonical_word_of(rs, &matrix)?;
        Ok(WeylElement { word, matrix })
    }

    /// Canonical reduced word, 1-based node indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Coxeter length (= number of positive roots sent to negatives).
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// Applies the element to an ambient vector.
    pub fn act(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        self.matrix.mul_vec(v)
    }

    /// Group product `a * b` (act with `b` first).
    pub fn multiply(rs: &RootSystem, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        WeylElement::from_matrix(rs, a.matrix.mul(&b.matrix)?)
    }

    /// Inverse; the matrices are orthogonal, so this is the transpose.
    pub fn inverse(&self, rs: &RootSystem) -> Result<WeylElement> {
        WeylElement::from_matrix(rs, self.matrix.transpose())
    }

    /// Number of positive roots mapped to negative roots (an independent
    /// length computation, used for consistency checks).
    pub fn inversion_count(&self, rs: &RootSystem) -> Result<usize> {
        let mut count = 0;
        for beta in rs.positive_roots() {
            let img = self.act(&beta.coords)?;
            match root_sign(rs, &img) {
                Some(false) => count += 1,
                Some(true) => {}
                None => {
                    return Err(Error::OutOfRange(
                        "matrix does not permute the roots".to_string(),
                    ))
                }
            }
        }
        Ok(count)
    }
}

/// Sign of a vector that is expected to be a root: `Some(true)` if it is a
/// positive root, `Some(false)` if a negative root, `None` otherwise.
fn root_sign(rs: &RootSystem, v: &[Rat]) -> Option<bool> {
    if rs.positive_root_index(v).is_some() {
        return Some(true);
    }
    let neg: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
    if rs.positive_root_index(&neg).is_some() {
        return Some(false);
    }
    None
}

/// Canonical reduced word of a Weyl-group matrix: repeatedly strip the
/// smallest right descent. Deterministic, and the number of steps equals
/// the Coxeter length.
fn canonical_word_of(rs: &RootSystem, matrix: &RationalMatrix) -> Result<Vec<usize>> {
    let dim = rs.ambient_dim();
    if matrix.rows() != dim || matrix.cols() != dim {
        return Err(Error::MismatchedRootSystems(
            "matrix size does not match the root system".to_string(),
        ));
    }
    let mut m = matrix.clone();
    let mut steps: Vec<usize> = Vec::new();
    let max_length = rs.num_positive_roots();
    loop {
        let mut descent = None;
        for i in 1..=rs.rank() {
            let img = m.mul_vec(rs.simple_root(i)?)?;
            match root_sign(rs, &img) {
                Some(false) => {
                    descent = Some(i);
                    break;
                }
                Some(true) => {}
                None => {
                    return Err(Error::OutOfRange(
                        "matrix does not permute the roots".to_string(),
                    ))
                }
            }
        }
        let Some(i) = descent else { break };
        if steps.len() == max_length {
            return Err(Error::OutOfRange(
                "matrix is not a Weyl group element (descent walk does not terminate)"
                    .to_string(),
            ));
        }
        m = m.mul(rs.simple_reflection(i)?)?;
        steps.push(i);
    }
    if m != RationalMatrix::identity(dim) {
        return Err(Error::OutOfRange(
            "matrix preserves the positive roots but is not the identity".to_string(),
        ));
    }
    steps.reverse();
    Ok(steps)
}

/// Longest element of the standard parabolic subgroup generated by the
/// given simple reflections (1-based); the empty set gives the identity.
pub fn longest_element(rs: &RootSystem, subset: &[usize]) -> Result<WeylElement> {
    for &i in subset {
        rs.check_node(i)?;
    }
    let mut m = RationalMatrix::identity(rs.ambient_dim());
    loop {
        let mut ascent = None;
        for &i in subset {
            let img = m.mul_vec(rs.simple_root(i)?)?;
            match root_sign(rs, &img) {
                Some(true) => {
                    ascent = Some(i);
                    break;
                }
                Some(false) => {}
                None => {
                    return Err(Error::InternalInconsistency(
                        "longest-element walk left the root set".to_string(),
                    ))
                }
            }
        }
        let Some(i) = ascent else { break };
        m = m.mul(rs.simple_reflection(i)?)?;
    }
    WeylElement::from_matrix(rs, m)
}

/// A cover relation `u < v` with `length(v) = length(u) + 1`, realized by
/// right multiplication with the reflection in one positive root.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoverEdge {
    /// Index of the other endpoint in the poset.
    pub to: usize,
    /// Index of the positive root whose reflection connects the endpoints.
    pub root: usize,
    /// Divisor-multiplication coefficient `<omega_node, root^vee>`.
    pub coeff: i64,
}

/// Bit matrix for the order relation (row u = the up-set of u).
#[derive(Clone, Debug)]
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitRows {
            words,
            bits: vec![0; n * words],
        }
    }

    fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1u64 << (c % 64);
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] & (1u64 << (c % 64)) != 0
    }

    fn or_row_into(&mut self, dst: usize, src: usize) {
        for k in 0..self.words {
            let v = self.bits[src * self.words + k];
            self.bits[dst * self.words + k] |= v;
        }
    }
}

/// The graded poset of minimal-length coset representatives `W^P` for the
/// maximal parabolic subgroup attached to one marked node.
///
/// Representatives are sorted by (length, canonical word); index 0 is the
/// identity and the last index is the unique top element. Covers carry the
/// positive root and the divisor-multiplication coefficient.
#[derive(Debug)]
pub struct CosetPoset {
    root_system: RootSystem,
    node: usize,
    levi: Vec<usize>,
    minuscule: bool,
    reps: Vec<WeylElement>,
    images: Vec<Vec<Rat>>,
    image_index: HashMap<Vec<Rat>, usize>,
    matrix_index: HashMap<RationalMatrix, usize>,
    level_offsets: Vec<usize>,
    up_edges: Vec<Vec<CoverEdge>>,
    down_edges: Vec<Vec<CoverEdge>>,
    dual: Vec<usize>,
    w0: WeylElement,
    w0_levi: WeylElement,
    w0_upper: WeylElement,
    up_closure: BitRows,
}

impl CosetPoset {
    pub fn new(root_system: RootSystem, node: usize) -> Result<Self> {
        root_system.check_node(node)?;
        let rs = &root_system;
        let levi: Vec<usize> = (1..=rs.rank()).filter(|&i| i != node).collect();
        let omega = rs.fundamental_weight(node)?.to_vec();

        // Breadth-first enumeration through the weight orbit. A coset image
        // unseen after all shorter levels are complete belongs to a coset of
        // minimal length exactly one more, and the candidate element itself
        // is that coset's minimal representative.
        struct Raw {
            matrix: RationalMatrix,
            image: Vec<Rat>,
            length: usize,
        }
        let mut raws = vec![Raw {
            matrix: RationalMatrix::identity(rs.ambient_dim()),
            image: omega.clone(),
            length: 0,
        }];
        let mut seen: HashMap<Vec<Rat>, usize> = HashMap::new();
        seen.insert(omega.clone(), 0);
        let mut frontier: Vec<usize> = vec![0];
        let mut length = 0usize;
        while !frontier.is_empty() {
            length += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for i in 1..=rs.rank() {
                    let s = rs.simple_reflection(i)?;
                    let image = s.mul_vec(&raws[u].image)?;
                    if seen.contains_key(&image) {
                        continue;
                    }
                    let matrix = s.mul(&raws[u].matrix)?;
                    seen.insert(image.clone(), raws.len());
                    next.push(raws.len());
                    raws.push(Raw {
                        matrix,
                        image,
                        length,
                    });
                }
            }
            frontier = next;
        }

        // Canonicalize, check the BFS lengths, and sort.
        let mut elems: Vec<(WeylElement, Vec<Rat>)> = Vec::with_capacity(raws.len());
        for raw in raws {
            let w = WeylElement::from_matrix(rs, raw.matrix)?;
            if w.length() != raw.length {
                return Err(Error::InternalInconsistency(
                    "coset enumeration produced a non-minimal representative".to_string(),
                ));
            }
            elems.push((w, raw.image));
        }
        elems.sort_by(|a, b| {
            (a.0.length(), a.0.word())
                .cmp(&(b.0.length(), b.0.word()))
        });
        let reps: Vec<WeylElement> = elems.iter().map(|(w, _)| w.clone()).collect();
        let images: Vec<Vec<Rat>> = elems.into_iter().map(|(_, v)| v).collect();
        let n = reps.len();

        // Minimality of every representative: all Levi simples stay positive.
        for w in &reps {
            for &j in &levi {
                let img = w.act(rs.simple_root(j)?)?;
                if root_sign(rs, &img) != Some(true) {
                    return Err(Error::InternalInconsistency(
                        "representative is not minimal in its coset".to_string(),
                    ));
                }
            }
        }

        let image_index: HashMap<Vec<Rat>, usize> = images
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let matrix_index: HashMap<RationalMatrix, usize> = reps
            .iter()
            .enumerate()
            .map(|(i, w)| (w.matrix().clone(), i))
            .collect();
        if image_index.len() != n || matrix_index.len() != n {
            return Err(Error::InternalInconsistency(
                "coset representatives are not distinct".to_string(),
            ));
        }

        // Contiguous level structure.
        let max_length = reps.last().map(|w| w.length()).unwrap_or(0);
        let mut level_offsets = vec![0usize; max_length + 2];
        for w in &reps {
            level_offsets[w.length() + 1] += 1;
        }
        for k in 0..=max_length {
            if level_offsets[k + 1] == 0 {
                return Err(Error::InternalInconsistency(
                    "length grading has a gap".to_string(),
                ));
            }
            level_offsets[k + 1] += level_offsets[k];
        }
        if level_offsets[max_length + 1] - level_offsets[max_length] != 1 {
            return Err(Error::InternalInconsistency(
                "top cell is not unique".to_string(),
            ));
        }

        // Longest elements and the factorization w0 = w0_upper * w0_levi.
        let all_nodes: Vec<usize> = (1..=rs.rank()).collect();
        let w0 = longest_element(rs, &all_nodes)?;
        if w0.length() != rs.num_positive_roots() {
            return Err(Error::InternalInconsistency(
                "longest element has wrong length".to_string(),
            ));
        }
        let w0_levi = longest_element(rs, &levi)?;
        let w0_upper = WeylElement::multiply(rs, &w0, &w0_levi)?;
        if reps[n - 1] != w0_upper {
            return Err(Error::InternalInconsistency(
                "top representative does not factor the longest element".to_string(),
            ));
        }

        // Covers: v = u * s_beta with length(v) = length(u) + 1, checked
        // exactly at the element level (the image test alone can overshoot
        // into a longer member of the right coset).
        let minuscule = rs.is_minuscule(node);
        struct BetaData {
            root: usize,
            image: Vec<Rat>,
            matrix: RationalMatrix,
            coeff: i64,
        }
        let mut beta_data = Vec::new();
        for (bi, beta) in rs.positive_roots().iter().enumerate() {
            let coeff = rs.pair_with_coroot(&omega, &beta.coords);
            if coeff.is_zero() {
                continue;
            }
            if !coeff.is_integer() {
                return Err(Error::InternalInconsistency(
                    "non-integral divisor coefficient".to_string(),
                ));
            }
            let c: i64 = coeff
                .numer()
                .try_into()
                .map_err(|_| Error::InternalInconsistency("coefficient overflow".to_string()))?;
            beta_data.push(BetaData {
                root: bi,
                image: reflect(&omega, &beta.coords),
                matrix: reflection_matrix(&beta.coords),
                coeff: c,
            });
        }
        let mut up_edges: Vec<Vec<CoverEdge>> = vec![Vec::new(); n];
        let mut down_edges: Vec<Vec<CoverEdge>> = vec![Vec::new(); n];
        for u in 0..n {
            for bd in &beta_data {
                let img = reps[u].matrix().mul_vec(&bd.image)?;
                let v = *image_index.get(&img).ok_or_else(|| {
                    Error::InternalInconsistency("weight orbit is not closed".to_string())
                })?;
                if reps[v].length() != reps[u].length() + 1 {
                    continue;
                }
                let prod = reps[u].matrix().mul(&bd.matrix)?;
                if &prod == reps[v].matrix() {
                    if minuscule && bd.coeff != 1 {
                        return Err(Error::InternalInconsistency(
                            "cover coefficient differs from 1 on a minuscule space".to_string(),
                        ));
                    }
                    up_edges[u].push(CoverEdge {
                        to: v,
                        root: bd.root,
                        coeff: bd.coeff,
                    });
                }
            }
            up_edges[u].sort_by_key(|e| e.to);
        }
        for u in 0..n {
            for e in &up_edges[u] {
                down_edges[e.to].push(CoverEdge {
                    to: u,
                    root: e.root,
                    coeff: e.coeff,
                });
            }
        }
        for (u, w) in reps.iter().enumerate() {
            if w.length() < max_length && up_edges[u].is_empty() {
                return Err(Error::InternalInconsistency(
                    "non-top cell without an upward cover".to_string(),
                ));
            }
            if w.length() > 0 && down_edges[u].is_empty() {
                return Err(Error::InternalInconsistency(
                    "non-bottom cell without a downward cover".to_string(),
                ));
            }
        }

        // Duality: u -> w0 * u * w0_levi lands in the representative set
        // directly and reverses the grading.
        let mut dual = vec![0usize; n];
        for u in 0..n {
            let m = w0.matrix().mul(reps[u].matrix())?.mul(w0_levi.matrix())?;
            let img = m.mul_vec(&omega)?;
            let v = *image_index.get(&img).ok_or_else(|| {
                Error::InternalInconsistency("dual image outside the orbit".to_string())
            })?;
            if reps[v].matrix() != &m {
                return Err(Error::InternalInconsistency(
                    "dual element is not a minimal representative".to_string(),
                ));
            }
            if reps[v].length() != max_length - reps[u].length() {
                return Err(Error::InternalInconsistency(
                    "duality does not reverse the grading".to_string(),
                ));
            }
            dual[u] = v;
        }
        for u in 0..n {
            if dual[dual[u]] != u {
                return Err(Error::InternalInconsistency(
                    "duality is not an involution".to_string(),
                ));
            }
        }

        // Reflexive-transitive closure of the covers, from the top down.
        let mut up_closure = BitRows::new(n);
        for u in (0..n).rev() {
            up_closure.set(u, u);
            let targets: Vec<usize> = up_edges[u].iter().map(|e| e.to).collect();
            for v in targets {
                up_closure.or_row_into(u, v);
            }
        }

        Ok(CosetPoset {
            root_system,
            node,
            levi,
            minuscule,
            reps,
            images,
            image_index,
            matrix_index,
            level_offsets,
            up_edges,
            down_edges,
            dual,
            w0,
            w0_levi,
            w0_upper,
            up_closure,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    /// The marked node (1-based).
    pub fn node(&self) -> usize {
        self.node
    }

    /// The unmarked nodes (1-based, ascending).
    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn is_minuscule(&self) -> bool {
        self.minuscule
    }

    /// Number of coset representatives.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Dimension of the associated homogeneous space (= maximal length).
    pub fn dimension(&self) -> usize {
        self.level_offsets.len() - 2
    }

    pub fn rep(&self, i: usize) -> &WeylElement {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[WeylElement] {
        &self.reps
    }

    pub fn length_of(&self, i: usize) -> usize {
        self.reps[i].length()
    }

    /// Image of the marked fundamental weight under representative `i`.
    pub fn weight_image(&self, i: usize) -> &[Rat] {
        &self.images[i]
    }

    /// Indices of the representatives of one fixed length, as a contiguous
    /// range (empty if the length exceeds the dimension).
    pub fn level(&self, length: usize) -> Range<usize> {
        if length + 1 >= self.level_offsets.len() {
            return 0..0;
        }
        self.level_offsets[length]..self.level_offsets[length + 1]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.matrix_index.get(w.matrix()).copied()
    }

    pub fn index_of_weight_image(&self, v: &[Rat]) -> Option<usize> {
        self.image_index.get(v).copied()
    }

    /// Index of the unique length-1 representative (the divisor cell).
    pub fn divisor_index(&self) -> usize {
        self.level_offsets[1]
    }

    /// Index of the unique top representative.
    pub fn top_index(&self) -> usize {
        self.reps.len() - 1
    }

    /// Upward covers of `i` (length + 1).
    pub fn up_edges(&self, i: usize) -> &[CoverEdge] {
        &self.up_edges[i]
    }

    /// Downward covers of `i` (length - 1).
    pub fn down_edges(&self, i: usize) -> &[CoverEdge] {
        &self.down_edges[i]
    }

    /// Index of the dual representative `w0 * u * w0_levi`.
    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    /// Longest element of the Levi subgroup.
    pub fn w0_levi(&self) -> &WeylElement {
        &self.w0_levi
    }

    /// Maximal-length coset representative; `w0 = w0_upper * w0_levi`.
    pub fn w0_upper(&self) -> &WeylElement {
        &self.w0_upper
    }

    /// Order relation: does `u <= v` hold?
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.up_closure.get(u, v)
    }

    /// Largest divisor-multiplication coefficient over all covers.
    pub fn max_cover_coefficient(&self) -> i64 {
        self.up_edges
            .iter()
            .flatten()
            .map(|e| e.coeff)
            .max()
            .unwrap_or(0)
    }

    /// Minimal elements of `{x : x >= a and x >= b}` (an antichain; empty
    /// never occurs because the top element bounds everything).
    pub fn minimal_common_upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        let mut minimal: Vec<usize> = Vec::new();
        for x in 0..self.len() {
            if !(self.leq(a, x) && self.leq(b, x)) {
                continue;
            }
            if minimal.iter().any(|&m| self.leq(m, x)) {
                continue;
            }
            minimal.push(x);
        }
        minimal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::rootsys::Series;
    use proptest::prelude::*;

    fn poset(series: Series, rank: usize, node: usize) -> CosetPoset {
        CosetPoset::new(RootSystem::new(series, rank).unwrap(), node).unwrap()
    }

    #[test]
    fn sizes_and_dimensions() {
        let cases = [
            (Series::A, 2, 1, 3, 2),    // plane
            (Series::A, 3, 2, 6, 4),    // 2-planes in 4-space
            (Series::A, 4, 2, 10, 6),   // 2-planes in 5-space
            (Series::C, 3, 1, 6, 5),    // 5-dimensional projective space
            (Series::D, 4, 1, 8, 6),    // 6-dimensional quadric
            (Series::B, 3, 3, 8, 6),    // spinor 6-fold
            (Series::D, 5, 5, 16, 10),  // spinor 10-fold
            (Series::E, 6, 6, 27, 16),
            (Series::E, 7, 7, 56, 27),
        ];
        for (series, rank, node, size, dim) in cases {
            let p = poset(series, rank, node);
            assert_eq!(p.len(), size, "{series}{rank} node {node}");
            assert_eq!(p.dimension(), dim, "{series}{rank} node {node}");
        }
    }

    #[test]
    fn size_matches_weight_orbit() {
        for (series, rank, node) in [
            (Series::A, 4, 2),
            (Series::B, 3, 3),
            (Series::C, 3, 3),
            (Series::D, 5, 1),
            (Series::E, 6, 1),
            (Series::E, 7, 7),
        ] {
            let p = poset(series, rank, node);
            let orbit = p
                .root_system()
                .weight_orbit_size(p.root_system().fundamental_weight(node).unwrap());
            assert_eq!(p.len(), orbit, "{series}{rank} node {node}");
        }
    }

    #[test]
    fn level_sizes() {
        let p = poset(Series::A, 3, 2);
        let sizes: Vec<usize> = (0..=p.dimension()).map(|k| p.level(k).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 1, 1]);
        // Palindromic gradings on a few minuscule posets.
        for (series, rank, node) in [(Series::E, 6, 6), (Series::D, 5, 5), (Series::A, 4, 2)] {
            let p = poset(series, rank, node);
            let sizes: Vec<usize> = (0..=p.dimension()).map(|k| p.level(k).len()).collect();
            let mut rev = sizes.clone();
            rev.reverse();
            assert_eq!(sizes, rev, "{series}{rank} node {node}");
        }
    }

    #[test]
    fn representative_words_are_reduced_and_canonical() {
        let p = poset(Series::D, 4, 1);
        let rs = p.root_system();
        for w in p.reps() {
            assert_eq!(w.length(), w.inversion_count(rs).unwrap());
            let rebuilt = WeylElement::from_word(rs, w.word()).unwrap();
            assert_eq!(&rebuilt, w);
            assert_eq!(rebuilt.word(), w.word());
        }
        assert!(p.rep(0).is_identity());
        assert_eq!(p.rep(p.divisor_index()).word(), &[p.node()]);
    }

    #[test]
    fn word_canonicalization_merges_equal_elements() {
        let rs = RootSystem::new(Series::A, 2).unwrap();
        let a = WeylElement::from_word(&rs, &[2, 1, 2]).unwrap();
        let b = WeylElement::from_word(&rs, &[1, 2, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.word(), b.word());
        let squared = WeylElement::from_word(&rs, &[1, 1]).unwrap();
        assert!(squared.is_identity());
    }

    #[test]
    fn longest_element_invariants() {
        let p = poset(Series::A, 3, 2);
        let rs = p.root_system();
        assert_eq!(p.w0().length(), 6);
        assert_eq!(p.w0_levi().length(), 2);
        assert_eq!(p.w0_upper().length(), 4);
        let recomposed =
            WeylElement::multiply(rs, p.w0_upper(), p.w0_levi()).unwrap();
        assert_eq!(&recomposed, p.w0());
        assert_eq!(p.rep(p.top_index()), p.w0_upper());
    }

    #[test]
    fn duality_reverses_the_grading() {
        for (series, rank, node) in [(Series::E, 6, 6), (Series::A, 4, 2), (Series::B, 3, 3)] {
            let p = poset(series, rank, node);
            for u in 0..p.len() {
                let v = p.dual(u);
                assert_eq!(p.length_of(v), p.dimension() - p.length_of(u));
                assert_eq!(p.dual(v), u);
            }
            assert_eq!(p.dual(0), p.top_index());
        }
        // Length 1 goes to length 15 on the 16-dimensional sixth-node
        // quotient of E6.
        let p = poset(Series::E, 6, 6);
        assert_eq!(p.length_of(p.dual(p.divisor_index())), 15);
    }

    #[test]
    fn cover_structure_of_the_four_dimensional_grassmannian() {
        let p = poset(Series::A, 3, 2);
        let total_edges: usize = (0..p.len()).map(|u| p.up_edges(u).len()).sum();
        assert_eq!(total_edges, 6);
        assert!(p
            .up_edges(0)
            .iter()
            .all(|e| e.coeff == 1 && p.length_of(e.to) == 1));
        // The two middle cells are incomparable and join at the unique
        // length-3 cell.
        let mid: Vec<usize> = p.level(2).collect();
        assert_eq!(mid.len(), 2);
        assert!(!p.leq(mid[0], mid[1]));
        assert!(!p.leq(mid[1], mid[0]));
        let joins = p.minimal_common_upper_bounds(mid[0], mid[1]);
        assert_eq!(joins.len(), 1);
        assert_eq!(p.length_of(joins[0]), 3);
    }

    #[test]
    fn lagrangian_cover_coefficients_reach_two() {
        // Second node of the rank-2 symplectic system: the cover from the
        // divisor cell carries coefficient 2.
        let p = poset(Series::C, 2, 2);
        assert!(!p.is_minuscule());
        assert_eq!(p.len(), 4);
        assert_eq!(p.dimension(), 3);
        let d = p.divisor_index();
        let edges = p.up_edges(d);
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].coeff, 2);
        assert_eq!(p.max_cover_coefficient(), 2);
        assert_eq!(poset(Series::C, 3, 3).max_cover_coefficient(), 2);
        // Minuscule quotients only see coefficient 1.
        for (series, rank, node) in [(Series::E, 6, 6), (Series::A, 4, 2), (Series::D, 4, 1)] {
            assert_eq!(
                poset(series, rank, node).max_cover_coefficient(),
                1,
                "{series}{rank} node {node}"
            );
        }
    }

    #[test]
    fn order_relation_sanity() {
        let p = poset(Series::D, 4, 1);
        let top = p.top_index();
        for u in 0..p.len() {
            assert!(p.leq(0, u));
            assert!(p.leq(u, top));
            assert!(p.leq(u, u));
            for v in 0..p.len() {
                if p.leq(u, v) && p.leq(v, u) {
                    assert_eq!(u, v);
                }
                if p.leq(u, v) && u != v {
                    assert!(p.length_of(u) < p.length_of(v));
                }
            }
        }
    }

    #[test]
    fn rejects_matrices_outside_the_group() {
        let rs = RootSystem::new(Series::A, 2).unwrap();
        let rot = RationalMatrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(WeylElement::from_matrix(&rs, rot).is_err());
    }

    #[test]
    fn group_operations_are_consistent() {
        let rs = RootSystem::new(Series::B, 3).unwrap();
        let a = WeylElement::from_word(&rs, &[1, 3, 2]).unwrap();
        let b = WeylElement::from_word(&rs, &[3, 2, 3, 1]).unwrap();
        let ab = WeylElement::multiply(&rs, &a, &b).unwrap();
        let v: Vec<Rat> = vec![rat(1), rat(-2), rat(3)];
        assert_eq!(
            ab.act(&v).unwrap(),
            a.act(&b.act(&v).unwrap()).unwrap()
        );
        let inv = ab.inverse(&rs).unwrap();
        let e = WeylElement::multiply(&rs, &ab, &inv).unwrap();
        assert!(e.is_identity());
        assert_eq!(inv.length(), ab.length());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_words_have_consistent_lengths(word in proptest::collection::vec(1usize..=3, 0..12)) {
            let rs = RootSystem::new(Series::A, 3).unwrap();
            let w = WeylElement::from_word(&rs, &word).unwrap();
            prop_assert_eq!(w.length(), w.inversion_count(&rs).unwrap());
            prop_assert!(w.length() <= word.len());
            // Parity of the length matches the parity of the word.
            prop_assert_eq!(w.length() % 2, word.len() % 2);
            let inv = w.inverse(&rs).unwrap();
            prop_assert_eq!(inv.length(), w.length());
        }

        #[test]
        fn subword_lengths_are_subadditive(
            left in proptest::collection::vec(1usize..=4, 0..8),
            right in proptest::collection::vec(1usize..=4, 0..8),
        ) {
            let rs = RootSystem::new(Series::D, 4).unwrap();
            let a = WeylElement::from_word(&rs, &left).unwrap();
            let b = WeylElement::from_word(&rs, &right).unwrap();
            let ab = WeylElement::multiply(&rs, &a, &b).unwrap();
            prop_assert!(ab.length() <= a.length() + b.length());
            prop_assert!(ab.length() + b.length() >= a.length());
        }
    }
}
