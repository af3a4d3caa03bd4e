use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, UnivariatePolynomial};
use crate::error::{Error, Result};

/// Exponent vector `α` of a monomial `z^α`; its length is the ambient variable count.
pub type ExponentVector = Vec<u32>;

/// Polynomial with exact rational coefficients in a fixed number of variables.
///
/// Zero coefficients are never stored, and every key has length `nvars`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exponent: ExponentVector, c: Rational) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, c);
        p
    }

    /// The variable `z_{index+1}` (0-based index).
    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exponent: ExponentVector, c: Rational) {
        assert_eq!(exponent.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponent) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exponent);
                }
            }
            None => {
                self.terms.insert(exponent, c);
            }
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exponent: &[u32], c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            let ne = e.iter().zip(exponent).map(|(a, b)| a + b).collect();
            out.add_term(ne, v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in the 0-based variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange { index: var, nvars: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c * Rational::from_integer(e[var].into()));
        }
        Ok(out)
    }

    /// Pull back along the monomial map `z_i ↦ ∏_v y_v^{M[i][v]}`.
    ///
    /// `matrix` is `k × m` with `k ≤ nvars`; variables past `k` are passed through
    /// unchanged and appended after the `m` new variables.
    pub fn substitute_monomial_map(&self, matrix: &[Vec<u32>]) -> Result<Self> {
        let k = matrix.len();
        if k == 0 || k > self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {k} rows for a polynomial in {} variables",
                self.nvars
            )));
        }
        let m = matrix[0].len();
        if matrix.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        let extra = self.nvars - k;
        let mut out = Self::zero(m + extra);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; m + extra];
            for (v, slot) in ne.iter_mut().take(m).enumerate() {
                *slot = (0..k).map(|i| matrix[i][v] * e[i]).sum();
            }
            ne[m..].copy_from_slice(&e[k..]);
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a value for one variable; the variable stays in the ring with exponent 0.
    pub fn specialize(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[var];
            ne[var] = 0;
            out.add_term(ne, c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter_terms<F: Fn(&[u32]) -> bool>(&self, keep: F) -> Self {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restriction `f^I` to the coordinate subspace spanned by `coords`, expressed in
    /// those coordinates only (in the given order).
    pub fn restrict_to(&self, coords: &[usize]) -> Self {
        let mut out = Self::zero(coords.len());
        for (e, c) in &self.terms {
            let outside = (0..self.nvars).any(|i| !coords.contains(&i) && e[i] != 0);
            if outside {
                continue;
            }
            out.add_term(coords.iter().map(|&i| e[i]).collect(), c.clone());
        }
        out
    }

    /// Re-embed into a ring with more variables; `positions[i]` is the new index of variable `i`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &p) in positions.iter().enumerate() {
                ne[p] = e[i];
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> ExponentVector {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn divide_monomial(&self, exponent: &[u32]) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(exponent).any(|(a, b)| a < b) {
                return None;
            }
            out.add_term(e.iter().zip(exponent).map(|(a, b)| a - b).collect(), c.clone());
        }
        Some(out)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars);
        let (dlead, dc) = divisor.leading_term()?;
        let dlead = dlead.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((le, lc)) = rem.leading_term() {
            if le.iter().zip(&dlead).any(|(a, b)| a < b) {
                return None;
            }
            let qe: ExponentVector = le.iter().zip(&dlead).map(|(a, b)| a - b).collect();
            let qc = lc / &dc;
            rem = &rem - &divisor.mul_monomial(&qe, &qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// View as a univariate polynomial in `var`; fails if another variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UnivariatePolynomial> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k != 0) {
                return None;
            }
            let k = e[var] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UnivariatePolynomial::new(coeffs))
    }

    pub fn from_univariate(u: &UnivariatePolynomial, nvars: usize, var: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in u.coefficients().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Group terms by the exponent of `var`: `p = Σ_j var^j · coeff_j`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, SparsePolynomial> {
        let mut out: BTreeMap<u32, SparsePolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let j = ne[var];
            ne[var] = 0;
            out.entry(j).or_insert_with(|| Self::zero(self.nvars)).add_term(ne, c.clone());
        }
        out
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical printer: terms by descending lexicographic exponent, variables `z1, z2, …`.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = SparsePolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn p(s: &str, n: usize) -> SparsePolynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn derivative_power_rule() {
        let f = p("z1^2 + z2^3", 2);
        assert_eq!(f.partial_derivative(0).unwrap(), p("2*z1", 2));
        assert_eq!(f.partial_derivative(1).unwrap(), p("3*z2^2", 2));
        assert!(p("5", 2).partial_derivative(0).unwrap().is_zero());
        assert!(matches!(f.partial_derivative(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn monomial_map_identity_and_shear() {
        let f = p("z1^2 + 3*z1*z2 - z2^5", 2);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(f.substitute_monomial_map(&id).unwrap(), f);
        // z1 -> y1, z2 -> y1*y2
        let m = vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]];
        let g = p("z1*z2", 3).substitute_monomial_map(&m).unwrap();
        assert_eq!(g, p("z1^2*z2", 3));
    }

    #[test]
    fn monomial_map_chart_matches_manual_substitution() {
        // Chart of Cone((21,14,6), e1, (3,2,1)): columns P, e1, R.
        let f = p("z1^2 + z2^3 + z3^7", 3);
        let m = vec![vec![21, 1, 3], vec![14, 0, 2], vec![6, 0, 1]];
        let g = f.substitute_monomial_map(&m).unwrap();
        // term by term: z1^2 -> y1^42 y2^2 y3^6, z2^3 -> y1^42 y3^6, z3^7 -> y1^42 y3^7
        let manual = p("z1^42*z2^2*z3^6 + z1^42*z3^6 + z1^42*z3^7", 3);
        assert_eq!(g, manual);
        assert_eq!(g.monomial_content()[0], 42);
    }

    #[test]
    fn exact_division() {
        let a = p("z1^2 - z2^2", 2);
        let b = p("z1 - z2", 2);
        assert_eq!(a.exact_div(&b).unwrap(), p("z1 + z2", 2));
        assert!(p("z1^2 + z2^2", 2).exact_div(&b).is_none());
    }

    #[test]
    fn printer_is_descending_lex() {
        let f = p("z3^7 - 2 z1 z2^3 + 1/2", 3);
        assert_eq!(f.to_string(), "-2*z1*z2^3 + z3^7 + 1/2");
        assert_eq!(f.coefficient(&[0, 0, 0]), rat(1) / rat(2));
    }
}
