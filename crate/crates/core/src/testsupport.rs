//! Fixture presentations shared by the unit and integration test suites.
//!
//! Hidden from documentation; the constructors here produce certified
//! [`FreeComplex`] values for bundles whose cohomology is known in closed
//! form, so test expectations can be written against independent values.

use rand::Rng;

use crate::exactla::{monomial_basis, rat, Poly, PolyMatrix};
use crate::sheafcoh::FreeComplex;

/// The rank-2 kernel of the coordinate row `(x, y, z): O^3 -> O(1)` on the
/// plane — the twisted cotangent bundle. Not split; its restriction to any
/// line is `O ⊕ O(-1)`.
pub fn euler_kernel() -> FreeComplex {
    let row = coordinate_row();
    FreeComplex::kernel(row).expect("coordinate row is surjective everywhere")
}

/// The rank-2 cokernel of the coordinate column `(x, y, z)^t: O(-1) -> O^3`
/// on the plane — the twisted tangent bundle, dual to [`euler_kernel`].
pub fn tangent_cokernel() -> FreeComplex {
    let column = coordinate_column();
    FreeComplex::cokernel(column).expect("coordinate column is injective everywhere")
}

/// A genuine three-term presentation on the plane:
/// `O(-1) -> O^4 -> O(1)` with maps `(x, y, z, 0)^t` and `(y, -x, 0, z)`.
/// The middle homology is a rank-2 bundle with a one-dimensional space of
/// sections.
pub fn koszul_monad() -> FreeComplex {
    let x = Poly::var(3, 0);
    let y = Poly::var(3, 1);
    let z = Poly::var(3, 2);
    let left = PolyMatrix::new(
        3,
        vec![-1],
        vec![0, 0, 0, 0],
        vec![
            vec![x.clone()],
            vec![y.clone()],
            vec![z.clone()],
            vec![Poly::zero(3)],
        ],
    )
    .expect("profile fits");
    let right = PolyMatrix::new(
        3,
        vec![0, 0, 0, 0],
        vec![1],
        vec![vec![y, x.neg(), Poly::zero(3), z]],
    )
    .expect("profile fits");
    FreeComplex::monad(left, right).expect("composition is the trivial syzygy")
}

/// The sum of line bundles with the given twists, presented as a kernel
/// complex with nothing to the right.
pub fn line_bundle_sum(nvars: usize, twists: &[i64]) -> FreeComplex {
    let map = PolyMatrix::zero(nvars, twists.to_vec(), vec![]);
    FreeComplex::kernel(map).expect("empty target is trivially surjective")
}

/// The sum of line bundles with the given twists, presented redundantly:
/// one extra summand `O(pad)` is added and then projected away, so the
/// presentation map is nonzero although the bundle is still the plain sum.
pub fn padded_line_bundle_sum(twists: &[i64], pad: i64) -> FreeComplex {
    let mut source = twists.to_vec();
    source.push(pad);
    let mut row: Vec<Poly> = vec![Poly::zero(3); twists.len()];
    row.push(Poly::constant(3, rat(1)));
    let map = PolyMatrix::new(3, source, vec![pad], vec![row]).expect("profile fits");
    FreeComplex::kernel(map).expect("projection is surjective everywhere")
}

/// The sum of line bundles with the given twists, presented as a
/// cokernel: the map embeds one extra summand `O(pad)` into the enlarged
/// target by a constant unit plus monomial entries, so the quotient is
/// the plain sum although the presentation map is nonzero. The monomial
/// entries use only the first two variables, keeping the restriction to
/// the line `z = 0` injective as well.
pub fn padded_line_bundle_cokernel(twists: &[i64], pad: i64) -> FreeComplex {
    let mut target = vec![pad];
    target.extend_from_slice(twists);
    let mut entries = vec![vec![Poly::constant(3, rat(1))]];
    for (i, &t) in twists.iter().enumerate() {
        let d = t - pad;
        let e = if d >= 1 {
            let mut exps = vec![0u32, 0, 0];
            exps[i % 2] = d as u32;
            Poly::monomial(3, exps, rat(1))
        } else {
            Poly::zero(3)
        };
        entries.push(vec![e]);
    }
    let map = PolyMatrix::new(3, vec![pad], target, entries).expect("profile fits");
    FreeComplex::cokernel(map).expect("unit entry keeps the column injective everywhere")
}

/// Seeded generator of split-bundle presentations with scrambled maps.
///
/// Draws a rank in `1..=5` and twists in `[-4, 4]`, then hides the sum
/// behind a nontrivial presentation: either the kernel of a row
/// `⊕O(t_i) ⊕ O(b) -> O(b)` whose last entry is a nonzero constant and
/// whose other entries are random polynomials, or the dual cokernel
/// shape. Such a map is a unit row (column) composed with an automorphism
/// of the enlarged sum, so the presented bundle is exactly `⊕O(t_i)`.
/// Returns the presentation with its twist multiset, descending.
pub fn random_split_bundle<R: Rng + ?Sized>(rng: &mut R) -> (FreeComplex, Vec<i64>) {
    let rank = rng.gen_range(1..=5usize);
    let mut twists: Vec<i64> = (0..rank).map(|_| rng.gen_range(-4..=4)).collect();
    let unit = rat(rng.gen_range(1..=4));
    let complex = if rng.gen() {
        let pad = twists.iter().max().expect("rank at least one") + rng.gen_range(1..=2);
        let mut source = twists.clone();
        source.push(pad);
        let mut row: Vec<Poly> = twists.iter().map(|&t| random_poly(rng, pad - t)).collect();
        row.push(Poly::constant(3, unit));
        let map = PolyMatrix::new(3, source, vec![pad], vec![row]).expect("profile fits");
        FreeComplex::kernel(map).expect("unit slot keeps the row surjective everywhere")
    } else {
        let pad = twists.iter().min().expect("rank at least one") - rng.gen_range(1..=2);
        let mut target = twists.clone();
        target.push(pad);
        let mut entries: Vec<Vec<Poly>> = twists
            .iter()
            .map(|&t| vec![random_poly(rng, t - pad)])
            .collect();
        entries.push(vec![Poly::constant(3, unit)]);
        let map = PolyMatrix::new(3, vec![pad], target, entries).expect("profile fits");
        FreeComplex::cokernel(map).expect("unit slot keeps the column injective everywhere")
    };
    twists.sort_unstable_by(|a, b| b.cmp(a));
    (complex, twists)
}

/// Dense random polynomial of the given degree with small integer
/// coefficients (possibly zero; empty when the degree is negative).
fn random_poly<R: Rng + ?Sized>(rng: &mut R, degree: i64) -> Poly {
    let terms = monomial_basis(3, degree)
        .into_iter()
        .map(|e| (e, rat(rng.gen_range(-3..=3))))
        .collect();
    Poly::from_terms(3, terms).expect("exponents fit the variable count")
}

/// The coordinate row `(x, y, z): O^3 -> O(1)` on the plane.
pub fn coordinate_row() -> PolyMatrix {
    let x = Poly::var(3, 0);
    let y = Poly::var(3, 1);
    let z = Poly::var(3, 2);
    PolyMatrix::new(3, vec![0, 0, 0], vec![1], vec![vec![x, y, z]]).expect("profile fits")
}

/// The coordinate column `(x, y, z)^t: O(-1) -> O^3` on the plane.
pub fn coordinate_column() -> PolyMatrix {
    let x = Poly::var(3, 0);
    let y = Poly::var(3, 1);
    let z = Poly::var(3, 2);
    PolyMatrix::new(
        3,
        vec![-1],
        vec![0, 0, 0],
        vec![vec![x], vec![y], vec![z]],
    )
    .expect("profile fits")
}
