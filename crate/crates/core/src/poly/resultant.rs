use num_traits::One;

use super::{Rational, SparsePolynomial};
use crate::error::{Error, Result};

/// Sylvester resultant of `p` and `q` with respect to the 0-based variable `var`.
///
/// The result lives in the same ring with `var` absent. The determinant is taken
/// fraction-free (Bareiss), so every intermediate division is exact.
pub fn resultant(p: &SparsePolynomial, q: &SparsePolynomial, var: usize) -> Result<SparsePolynomial> {
    if p.nvars() != q.nvars() {
        return Err(Error::DimensionMismatch("resultant operands differ in variable count".into()));
    }
    if var >= p.nvars() {
        return Err(Error::IndexOutOfRange { index: var, nvars: p.nvars() });
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dp = p.degree_in(var).unwrap_or(0) as usize;
    let dq = q.degree_in(var).unwrap_or(0) as usize;
    if dp == 0 && dq == 0 {
        return Err(Error::BothConstant);
    }
    if dp == 0 {
        return Ok(p.pow(dq as u32));
    }
    if dq == 0 {
        return Ok(q.pow(dp as u32));
    }
    let n = p.nvars();
    let cp = p.coefficients_in(var);
    let cq = q.coefficients_in(var);
    let coeff = |m: &std::collections::BTreeMap<u32, SparsePolynomial>, j: usize| {
        m.get(&(j as u32)).cloned().unwrap_or_else(|| SparsePolynomial::zero(n))
    };
    let size = dp + dq;
    let mut mat = vec![vec![SparsePolynomial::zero(n); size]; size];
    for i in 0..dq {
        for j in 0..=dp {
            mat[i][i + j] = coeff(&cp, dp - j);
        }
    }
    for i in 0..dp {
        for j in 0..=dq {
            mat[dq + i][i + j] = coeff(&cq, dq - j);
        }
    }
    Ok(bareiss_determinant(mat))
}

pub(crate) fn bareiss_determinant(mut m: Vec<Vec<SparsePolynomial>>) -> SparsePolynomial {
    let size = m.len();
    let nvars = m[0][0].nvars();
    let mut sign = Rational::one();
    let mut prev = SparsePolynomial::constant(nvars, Rational::one());
    for k in 0..size {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return SparsePolynomial::zero(nvars);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[size - 1][size - 1].scale(&sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn p(s: &str) -> SparsePolynomial {
        parse_polynomial(s, 2).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let r = resultant(&p("z1 - 1"), &p("z1 - 2"), 0).unwrap();
        assert_eq!(r, SparsePolynomial::constant(2, rat(-1)));
        let r = resultant(&p("z1 - z2"), &p("z1 + z2"), 0).unwrap();
        assert_eq!(r, p("2*z2"));
        let r = resultant(&p("z1^2 - 2 z1 z2 + z2^2"), &p("z1 - z2"), 0).unwrap();
        assert!(r.is_zero());
        assert!(matches!(resultant(&p("z2"), &p("z2 + 1"), 0), Err(Error::BothConstant)));
    }

    #[test]
    fn resultant_matches_discriminant_of_quadratic() {
        // Res(a w^2 + b w + c, 2 a w + b) = -a (b^2 - 4 a c)
        let f = p("z1^2 + z2 z1 + 3");
        let r = resultant(&f, &f.partial_derivative(0).unwrap(), 0).unwrap();
        assert_eq!(r, p("12 - z2^2"));
    }
}
