//! Exact rational linear algebra and homogeneous polynomial matrices.
//!
//! Everything in this crate computes over arbitrary-precision rationals —
//! there is no floating point anywhere. This module provides the two
//! arithmetic carriers ([`RationalMatrix`], [`PolyMatrix`]) plus monomial
//! bookkeeping shared by the combinatorics and cohomology layers.

mod poly;
mod ratmat;

pub use poly::{top_basis, CohRow, Poly, PolyMatrix};
pub use ratmat::RationalMatrix;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

/// Shorthand for an exact rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact binomial coefficient as usize (small arguments only).
pub fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    usize::try_from(num / den).expect("binomial fits usize at supported sizes")
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// ascending lexicographic order. `d < 0` yields the empty list, matching
/// the empty space of sections in negative degree.
pub fn monomial_basis(nvars: usize, d: i64) -> Vec<Vec<u32>> {
    if d < 0 {
        return Vec::new();
    }
    let d = u32::try_from(d).expect("degree fits u32");
    let mut out = Vec::with_capacity(monomial_count(nvars, i64::from(d)));
    let mut prefix = Vec::with_capacity(nvars);
    fill_monomials(nvars, d, &mut prefix, &mut out);
    out
}

fn fill_monomials(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if nvars == 0 {
        if d == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if nvars == 1 {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for lead in 0..=d {
        prefix.push(lead);
        fill_monomials(nvars - 1, d - lead, prefix, out);
        prefix.pop();
    }
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    binomial(d + nvars as i64 - 1, nvars as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_basis_counts_and_order() {
        assert_eq!(monomial_basis(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(2, 3).len(), 4);
        assert!(monomial_basis(3, -1).is_empty());
        // Ascending lexicographic order.
        let b = monomial_basis(3, 2);
        assert_eq!(b[0], vec![0, 0, 2]);
        assert_eq!(b[5], vec![2, 0, 0]);
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(b, sorted);
        // Count formula agrees with enumeration across a window.
        for nvars in 1..=4usize {
            for d in -2..8i64 {
                assert_eq!(monomial_basis(nvars, d).len(), monomial_count(nvars, d));
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(10, 5), 252);
    }
}
