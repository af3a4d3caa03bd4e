//! Critical points of a two-variable polynomial on the torus `(ℂ*)²`.
//!
//! The decision is exact: a resultant eliminates one variable, and the
//! candidate roots are then examined with a gcd over `ℚ[y]/(r)` that splits
//! `r` whenever a zero divisor shows up.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rational, SparsePolynomial, UnivariatePolynomial};

type Uni = UnivariatePolynomial;

/// A polynomial in `x` whose coefficients are polynomials in `y`, ascending in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivariate {
    coeffs: Vec<Uni>,
}

impl Bivariate {
    /// Split a two-variable sparse polynomial with `x` the 0-based variable `x_var`.
    pub fn from_sparse(p: &SparsePolynomial, x_var: usize) -> Self {
        assert_eq!(p.nvars(), 2, "bivariate view needs two variables");
        let y_var = 1 - x_var;
        let mut coeffs = Vec::new();
        for (j, c) in p.coefficients_in(x_var) {
            let j = j as usize;
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Uni::zero());
            }
            coeffs[j] = c.to_univariate(y_var).expect("two variables");
        }
        Bivariate { coeffs }
    }

    pub fn coefficients(&self) -> &[Uni] {
        &self.coeffs
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.iter().filter_map(Uni::degree).max().unwrap_or(0)
    }

    fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .flat_map(|c| c.coefficients().iter())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// `Res_x(self, other)` up to a nonzero rational factor, by evaluation at
    /// integer points and interpolation.
    pub fn resultant_x(&self, other: &Self) -> Uni {
        let (da, db) = match (self.degree_x(), other.degree_x()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Uni::zero(),
        };
        if da == 0 {
            return self.coeffs[0].pow(db as u32);
        }
        if db == 0 {
            return other.coeffs[0].pow(da as u32);
        }
        let la = Rational::from_integer(self.denominator_lcm());
        let lb = Rational::from_integer(other.denominator_lcm());
        let bound = db * self.degree_y() + da * other.degree_y();
        let xs: Vec<i64> = (0..=bound as i64).collect();
        let ys: Vec<BigInt> = xs
            .iter()
            .map(|&y0| {
                let y0 = Rational::from_integer(BigInt::from(y0));
                let ea: Vec<BigInt> =
                    self.coeffs.iter().map(|c| (c.evaluate(&y0) * &la).to_integer()).collect();
                let eb: Vec<BigInt> =
                    other.coeffs.iter().map(|c| (c.evaluate(&y0) * &lb).to_integer()).collect();
                integer_determinant(sylvester(&ea, &eb))
            })
            .collect();
        interpolate(&xs, &ys)
    }
}

fn sylvester(a: &[BigInt], b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..db {
        for j in 0..=da {
            m[i][i + j] = a[da - j].clone();
        }
    }
    for i in 0..da {
        for j in 0..=db {
            m[db + i][i + j] = b[db - j].clone();
        }
    }
    m
}

fn integer_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, s);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Uni {
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.iter().cloned().map(Rational::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let span = Rational::from_integer(BigInt::from(xs[i] - xs[i - level]));
            dd[i] = (&dd[i] - &dd[i - 1]) / span;
        }
    }
    let mut p = Uni::constant(dd[n - 1].clone());
    for k in (0..n - 1).rev() {
        let lin = Uni::new(vec![Rational::from_integer(BigInt::from(-xs[k])), Rational::one()]);
        p = &(&p * &lin) + &Uni::constant(dd[k].clone());
    }
    p
}

/// How the polynomial and its gradient meet on the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusZero {
    /// A whole curve of common zeros (the polynomial has a repeated factor).
    Curve,
    /// Isolated common zeros; one of them has coordinate `z{coordinate+1}` a root
    /// of `minimal_polynomial`.
    Point { coordinate: usize, minimal_polynomial: Uni },
}

impl fmt::Display for TorusZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusZero::Curve => write!(f, "a curve of critical points on the torus"),
            TorusZero::Point { coordinate, minimal_polynomial } => write!(
                f,
                "a torus critical point with z{} a root of {}",
                coordinate + 1,
                minimal_polynomial
            ),
        }
    }
}

fn affinely_independent(points: &[Vec<u32>]) -> bool {
    match points.len() {
        0..=2 => true,
        3 => {
            let d = |i: usize, k: usize| points[i][k] as i64 - points[0][k] as i64;
            d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0) != 0
        }
        _ => false,
    }
}

/// Decide whether `g`, `∂g/∂z1` and `∂g/∂z2` vanish simultaneously somewhere on `(ℂ*)²`.
///
/// Returns `None` when there is no such point.
pub fn common_torus_zero(g: &SparsePolynomial) -> Option<TorusZero> {
    assert_eq!(g.nvars(), 2, "torus test needs two variables");
    if g.is_zero() {
        return Some(TorusZero::Curve);
    }
    let h = g.divide_monomial(&g.monomial_content()).expect("content divides");
    if affinely_independent(&h.support()) {
        return None;
    }
    let euler = |v: usize| {
        let mut e = vec![0; 2];
        e[v] = 1;
        h.partial_derivative(v).expect("two variables").mul_monomial(&e, &Rational::one())
    };
    let b = euler(0);
    let c = euler(1);
    let x_var = if h.degree_in(0).unwrap_or(0) > 0 { 0 } else { 1 };
    let y_var = 1 - x_var;
    let ha = Bivariate::from_sparse(&h, x_var);
    let system = [ha.clone(), Bivariate::from_sparse(&b, x_var), Bivariate::from_sparse(&c, x_var)];
    // Every irreducible factor of h that divides b + t·c for two values of t
    // divides both; past this many tries a zero resultant means a shared factor.
    // A common zero makes every such resultant vanish at its y-coordinate, so
    // the search runs modulo the gcd of the first two nonzero ones.
    let tries = h.total_degree().unwrap_or(0) as i64 + 2;
    let mut found: Option<Uni> = None;
    for t in 0..tries {
        let bt = &b + &c.scale(&Rational::from_integer(BigInt::from(t)));
        if bt.is_zero() {
            continue;
        }
        let res = ha.resultant_x(&Bivariate::from_sparse(&bt, x_var));
        if res.is_zero() {
            continue;
        }
        let r = res.squarefree_part();
        let r = r.shift_down(r.valuation());
        let second = found.is_some();
        let r = match found.take() {
            None => r,
            Some(prev) => prev.gcd(&r),
        };
        if r.is_constant() {
            return None;
        }
        found = Some(r);
        if second {
            break;
        }
    }
    let Some(r) = found else {
        return Some(TorusZero::Curve);
    };
    search(r.monic(), &system).map(|m| TorusZero::Point { coordinate: y_var, minimal_polynomial: m })
}

type Split = (Uni, Uni);

fn search(r: Uni, system: &[Bivariate]) -> Option<Uni> {
    match attempt(&r, system) {
        Ok(true) => Some(r),
        Ok(false) => None,
        Err((r1, r2)) => search(r1, system).or_else(|| search(r2, system)),
    }
}

fn attempt(r: &Uni, system: &[Bivariate]) -> Result<bool, Split> {
    let mut g: Vec<Uni> = Vec::new();
    for p in system {
        g = gcd_mod(r, g, reduce(r, &p.coeffs))?;
    }
    nonzero_root(r, g)
}

fn reduce(r: &Uni, p: &[Uni]) -> Vec<Uni> {
    let mut out: Vec<Uni> = p.iter().map(|c| c.rem(r)).collect();
    trim(&mut out);
    out
}

fn trim(p: &mut Vec<Uni>) {
    while p.last().is_some_and(Uni::is_zero) {
        p.pop();
    }
}

fn invert(r: &Uni, c: &Uni) -> Result<Uni, Split> {
    let g = c.gcd(r);
    if g.is_constant() {
        Ok(c.inverse_mod(r).expect("coprime to the modulus"))
    } else {
        let other = r.exact_div(&g).expect("gcd divides");
        Err((g, other.monic()))
    }
}

fn make_monic(r: &Uni, mut p: Vec<Uni>) -> Result<Vec<Uni>, Split> {
    trim(&mut p);
    let Some(lc) = p.last() else {
        return Ok(p);
    };
    let inv = invert(r, lc)?;
    Ok(p.iter().map(|c| (c * &inv).rem(r)).collect())
}

fn rem_monic(r: &Uni, a: &[Uni], b: &[Uni]) -> Vec<Uni> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    while a.len() > db {
        let k = a.len() - 1;
        let q = a[k].clone();
        if !q.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                a[k - db + i] = (&a[k - db + i] - &(&q * bc)).rem(r);
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn gcd_mod(r: &Uni, a: Vec<Uni>, b: Vec<Uni>) -> Result<Vec<Uni>, Split> {
    let mut a = make_monic(r, a)?;
    let mut b = make_monic(r, b)?;
    while !b.is_empty() {
        let rem = if a.is_empty() { Vec::new() } else { rem_monic(r, &a, &b) };
        a = b;
        b = make_monic(r, rem)?;
    }
    Ok(a)
}

fn nonzero_root(r: &Uni, mut g: Vec<Uni>) -> Result<bool, Split> {
    if g.is_empty() {
        return Ok(true);
    }
    while g[0].is_zero() {
        g.remove(0);
    }
    invert(r, &g[0])?;
    Ok(g.len() > 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> SparsePolynomial {
        parse_polynomial(s, 2).unwrap()
    }

    #[test]
    fn resultant_by_interpolation_matches_sylvester() {
        let a = p("x^2 y + 3 x - y^2 + 1");
        let b = p("x^3 - 2 x y + y^3");
        let fast = Bivariate::from_sparse(&a, 0).resultant_x(&Bivariate::from_sparse(&b, 0));
        let slow = crate::poly::resultant(&a, &b, 0).unwrap().to_univariate(1).unwrap();
        assert_eq!(fast.monic(), slow.monic());
    }

    #[test]
    fn smooth_examples_have_no_torus_critical_point() {
        assert_eq!(common_torus_zero(&p("x^2 + y^2 + x y + 1")), None);
        assert_eq!(common_torus_zero(&p("x^5 + y^3 + x + 2")), None);
        assert_eq!(common_torus_zero(&p("x^3 + y^7 + 1")), None);
        assert_eq!(common_torus_zero(&p("x y^2 + x^2 y + 1 + x y")), None);
    }

    #[test]
    fn singular_examples_are_found() {
        // (x-1)^2 + (y-1)^2 is singular at (1, 1)
        assert!(matches!(common_torus_zero(&p("x^2 - 2x + y^2 - 2y + 2")), Some(TorusZero::Point { .. })));
        // cusp (y-2)^2 = (x-3)^3
        let cusp = p("y^2 - 4 y + 4 - x^3 + 9 x^2 - 27 x + 27");
        assert!(common_torus_zero(&cusp).is_some());
        // repeated factor
        assert_eq!(common_torus_zero(&p("x^2 + 2 x y + y^2 + 2 x + 2 y + 1")), Some(TorusZero::Curve));
        // singular only off the torus: node at the origin
        assert_eq!(common_torus_zero(&p("y^2 - x^2 - x^3")), None);
    }

    #[test]
    fn splitting_picks_the_right_component() {
        let g = p("y^2 - 4y + 4 - x^2 + 2x - 1 + x^3 - 3x^2 + 3x - 1");
        // g = (y-2)^2 - (x-1)^2 + (x-1)^3: node at (1, 2)
        match common_torus_zero(&g) {
            Some(TorusZero::Point { minimal_polynomial, .. }) => {
                assert!(minimal_polynomial.evaluate(&crate::poly::rat(2)).is_zero());
            }
            other => panic!("expected a point, got {other:?}"),
        }
    }
}
