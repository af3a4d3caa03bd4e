//! Dimension of the Jacobian ring `ℚ[z]/(∂f)` at the origin, by exact rank
//! computations on Macaulay matrices.
//!
//! Weighted homogeneous inputs use the weighted grading. Everything else uses the
//! local truncations `ℚ[z]/(J + m^N)`, whose dimension is eventually constant at
//! the local Milnor number when the critical point is isolated.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::newton::weighted_homogeneity;
use crate::poly::{ExponentVector, Rational, SparsePolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobianDimension {
    Finite(u64),
    Infinite,
}

impl JacobianDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            JacobianDimension::Finite(m) => Some(m),
            JacobianDimension::Infinite => None,
        }
    }
}

impl std::fmt::Display for JacobianDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JacobianDimension::Finite(m) => write!(f, "{m}"),
            JacobianDimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// Local dimension of the Jacobian ring of `p` at the origin.
///
/// Panics if `p` is zero or has a nonzero constant term.
pub fn jacobian_ring_dimension(p: &SparsePolynomial) -> JacobianDimension {
    assert!(!p.is_zero(), "zero polynomial");
    assert!(p.constant_term().is_zero(), "nonzero constant term");
    let partials: Vec<SparsePolynomial> =
        (0..p.nvars()).map(|i| p.partial_derivative(i).expect("index in range")).collect();
    match weighted_homogeneity(p) {
        Some((weights, d)) => graded_dimension(&partials, &weights, d),
        None => local_dimension(&partials),
    }
}

/// Sum of `dim R_w` over weights up to `B = max(s, 0) + max p`, `s = n·d − 2Σp`.
/// A finite quotient vanishes above `s`; conversely, `R_w = 0` on a window of
/// `max p` consecutive weights forces every higher piece to vanish.
fn graded_dimension(partials: &[SparsePolynomial], weights: &[i64], d: i64) -> JacobianDimension {
    let n = weights.len() as i64;
    let s = n * d - 2 * weights.iter().sum::<i64>();
    let maxp = *weights.iter().max().unwrap();
    let bound = s.max(0) + maxp;
    let mut total = 0u64;
    for w in 0..=bound {
        let cols = monomials_of_weight(weights, w);
        if cols.is_empty() {
            continue;
        }
        let index: HashMap<&ExponentVector, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for (i, g) in partials.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let shift = w - (d - weights[i]);
            if shift < 0 {
                continue;
            }
            for m in monomials_of_weight(weights, shift) {
                rows.push(sparse_row(&g.mul_monomial(&m, &Rational::one()), |e| index.get(e).copied()));
            }
        }
        let dim = (cols.len() - rank(rows)) as u64;
        if w > bound - maxp && dim > 0 {
            return JacobianDimension::Infinite;
        }
        total += dim;
    }
    JacobianDimension::Finite(total)
}

/// `D(N) = dim ℚ[z]/(J + m^N)` for `N = 1, 2, …` until `D(N) = D(N+1)`, which by
/// Nakayama gives `m^N ⊆ J` locally. An isolated point has `D(N) ≤ μ ≤ ∏ deg ∂_i f`
/// and `D` strictly increases until it stabilizes, so passing that bound means `μ = ∞`.
fn local_dimension(partials: &[SparsePolynomial]) -> JacobianDimension {
    if partials.iter().any(|g| g.is_zero()) {
        return JacobianDimension::Infinite;
    }
    let bezout: u64 = partials.iter().map(|g| g.total_degree().unwrap_or(0).max(1) as u64).product();
    let n = partials[0].nvars();
    let mut prev = truncated_dimension(partials, n, 1);
    let mut order = 1u32;
    loop {
        let next = truncated_dimension(partials, n, order + 1);
        if next == prev {
            return JacobianDimension::Finite(prev);
        }
        if next > bezout {
            return JacobianDimension::Infinite;
        }
        prev = next;
        order += 1;
    }
}

fn truncated_dimension(partials: &[SparsePolynomial], n: usize, order: u32) -> u64 {
    let cols: Vec<ExponentVector> = (0..order).flat_map(|k| monomials_of_degree(n, k)).collect();
    let index: HashMap<&ExponentVector, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in partials {
        let low = g.terms().map(|(e, _)| e.iter().sum::<u32>()).min().unwrap_or(0);
        for k in 0..order.saturating_sub(low) {
            for m in monomials_of_degree(n, k) {
                let row = sparse_row(&g.mul_monomial(&m, &Rational::one()), |e| index.get(e).copied());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    (cols.len() - rank(rows)) as u64
}

fn sparse_row<F>(p: &SparsePolynomial, column: F) -> BTreeMap<usize, Rational>
where
    F: Fn(&ExponentVector) -> Option<usize>,
{
    p.terms().filter_map(|(e, c)| column(e).map(|j| (j, c.clone()))).collect()
}

fn monomials_of_weight(weights: &[i64], w: i64) -> Vec<ExponentVector> {
    fn go(weights: &[i64], w: i64, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        let i = cur.len();
        if i + 1 == weights.len() {
            if w % weights[i] == 0 {
                cur.push((w / weights[i]) as u32);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let mut a = 0;
        while a * weights[i] <= w {
            cur.push(a as u32);
            go(weights, w - a * weights[i], cur, out);
            cur.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    if w >= 0 {
        go(weights, w, &mut Vec::new(), &mut out);
    }
    out
}

fn monomials_of_degree(n: usize, k: u32) -> Vec<ExponentVector> {
    monomials_of_weight(&vec![1; n], k as i64)
}

/// Rank over ℚ of sparse rows, by incremental echelon insertion.
fn rank(rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        while let Some((&c, v)) = row.iter().next() {
            let Some(piv) = pivots.get(&c) else {
                let inv = v.recip();
                row.values_mut().for_each(|x| *x *= &inv);
                pivots.insert(c, row);
                break;
            };
            let factor = v.clone();
            for (j, x) in piv {
                let entry = row.entry(*j).or_insert_with(Rational::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    row.remove(j);
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn dim(s: &str, n: usize) -> JacobianDimension {
        jacobian_ring_dimension(&parse_polynomial(s, n).unwrap())
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(dim("z1^2 + z2^2", 2), JacobianDimension::Finite(1));
        assert_eq!(dim("z1^2 + z2^3", 2), JacobianDimension::Finite(2));
        assert_eq!(dim("z1^2 + z2^3 + z3^7", 3), JacobianDimension::Finite(12));
        assert_eq!(dim("z1^3 + z2^3 + z3^3", 3), JacobianDimension::Finite(8));
        assert_eq!(dim("z1 + z2^2", 2), JacobianDimension::Finite(0));
    }

    #[test]
    fn non_isolated() {
        assert_eq!(dim("z1^3 z2 - 2 z1^2 z2^2 + z1 z2^3", 2), JacobianDimension::Infinite);
        assert_eq!(dim("z1^2", 2), JacobianDimension::Infinite);
        assert_eq!(dim("z1^2 + z2^2", 3), JacobianDimension::Infinite);
    }

    #[test]
    fn local_examples() {
        // A_4 after the change of coordinates u = z1 + z2.
        assert_eq!(dim("z1^2 + 2 z1 z2 + z2^2 + z1^5", 2), JacobianDimension::Finite(4));
        // Morse point plus a higher-order perturbation.
        assert_eq!(dim("z1^2 + z2^2 + z1^3 z2", 2), JacobianDimension::Finite(1));
        assert_eq!(dim("z1^2 + z2^3 + z1 z2^2 + z3^2", 3), JacobianDimension::Finite(2));
        assert!(dim("z1^2 z2 + z2^5 + z1^4", 2).finite().is_some());
    }
}
