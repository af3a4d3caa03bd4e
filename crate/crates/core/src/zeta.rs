//! Divisors in the group ring of roots of unity, the Milnor–Orlik formula and the
//! A'Campo zeta-function read off a regular subdivision of the dual Newton diagram.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::degeneracy::{degeneracy_report_for, generic_deformation};
use crate::error::{Error, Result};
use crate::fan::SimplicialSubdivision;
use crate::jacobian::{jacobian_ring_dimension, JacobianDimension};
use crate::lattice;
use crate::newton::{face_of_weight, lattice_measures, newton_data, weighted_homogeneity, NewtonData};
use crate::poly::{rat, rat_frac, Rational, SparsePolynomial};
use crate::resolution::admissible_subdivision;

/// `Σ c_a Λ_a`, where `Λ_a` is the divisor of `t^a − 1`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingDivisor {
    coefficients: BTreeMap<u64, Rational>,
}

impl GroupRingDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn lambda(a: u64) -> Self {
        Self::from_pairs([(a, rat(1))])
    }

    /// `Λ_1`, the identity of the ring.
    pub fn one() -> Self {
        Self::lambda(1)
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, Rational)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (a, c) in pairs {
            out.add_term(a, c);
        }
        out
    }

    fn add_term(&mut self, a: u64, c: Rational) {
        assert!(a > 0, "Λ_0 is not defined");
        let entry = self.coefficients.entry(a).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&a);
        }
    }

    pub fn coefficient(&self, a: u64) -> Rational {
        self.coefficients.get(&a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<u64, Rational> {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.values().all(|c| c.is_integer())
    }

    /// Sorted `(a, c_a)` pairs; fails on a fractional coefficient.
    pub fn integer_pairs(&self) -> Result<Vec<(u64, i64)>> {
        self.coefficients
            .iter()
            .map(|(&a, c)| {
                if !c.is_integer() {
                    return Err(Error::Arithmetic(format!("coefficient {c} of Λ_{a} is not an integer")));
                }
                c.to_integer().to_i64().map(|c| (a, c)).ok_or_else(|| Error::Arithmetic("coefficient overflow".into()))
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_pairs(self.coefficients.iter().map(|(&a, x)| (a, x * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_pairs(self.coefficients.iter().chain(&other.coefficients).map(|(&a, c)| (a, c.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }
}

impl fmt::Display for GroupRingDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.coefficients.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let m = c.abs();
            if m.is_one() {
                write!(f, "L{a}")?;
            } else {
                write!(f, "{m}*L{a}")?;
            }
        }
        Ok(())
    }
}

/// Bilinear extension of `Λ_a·Λ_b = gcd(a, b)·Λ_lcm(a, b)`.
pub fn divisor_multiply(x: &GroupRingDivisor, y: &GroupRingDivisor) -> GroupRingDivisor {
    let mut out = GroupRingDivisor::zero();
    for (&a, ca) in &x.coefficients {
        for (&b, cb) in &y.coefficients {
            let g = a.gcd(&b);
            out.add_term(a.lcm(&b), ca * cb * Rational::from_integer(BigInt::from(g)));
        }
    }
    out
}

/// `Σ c_a·a`; a ring homomorphism to ℤ.
pub fn divisor_size(x: &GroupRingDivisor) -> Result<i64> {
    Ok(x.integer_pairs()?.into_iter().map(|(a, c)| a as i64 * c).sum())
}

/// `d/p_i = u_i/v_i` in lowest terms, one pair per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedDegreeData {
    pub pairs: Vec<(u64, u64)>,
}

impl WeightedDegreeData {
    pub fn new(weights: &[i64], d: i64) -> Result<Self> {
        if weights.is_empty() || d <= 0 || weights.iter().any(|&p| p <= 0) {
            return Err(Error::InvalidWeights(format!("weights {weights:?} with degree {d}")));
        }
        let pairs = weights
            .iter()
            .map(|&p| {
                let g = d.gcd(&p);
                ((d / g) as u64, (p / g) as u64)
            })
            .collect();
        Ok(WeightedDegreeData { pairs })
    }
}

/// `(−1)^n ∏ ((1/v_i)·Λ_{u_i} − Λ_1)`.
pub fn milnor_orlik_divisor(weights: &[i64], d: i64) -> Result<GroupRingDivisor> {
    let data = WeightedDegreeData::new(weights, d)?;
    let mut acc = GroupRingDivisor::one();
    for &(u, v) in &data.pairs {
        let factor = GroupRingDivisor::lambda(u).scale(&rat_frac(1, v as i64)).sub(&GroupRingDivisor::one());
        acc = divisor_multiply(&acc, &factor);
    }
    if weights.len() % 2 == 1 {
        acc = acc.scale(&rat(-1));
    }
    if !acc.is_integral() {
        return Err(Error::Arithmetic(format!("Milnor-Orlik divisor {acc} is not integral")));
    }
    Ok(acc)
}

/// `μ = ∏ (d/p_i − 1)`.
pub fn mu_from_formula(weights: &[i64], d: i64) -> Result<u64> {
    WeightedDegreeData::new(weights, d)?;
    let mu = weights.iter().fold(rat(1), |acc, &p| acc * (rat_frac(d, p) - rat(1)));
    if !mu.is_integer() || mu.is_negative() {
        return Err(Error::InvalidWeights(format!("∏(d/p_i − 1) = {mu} for weights {weights:?}, d = {d}")));
    }
    mu.to_integer().to_u64().ok_or_else(|| Error::Arithmetic("Milnor number overflow".into()))
}

/// `∏_a (1 − t^a)^{m_a}`; the reduced form is multiplied by `t − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaFactored {
    pub factors: BTreeMap<u64, i64>,
    pub reduced: bool,
}

impl ZetaFactored {
    pub fn from_factors<I: IntoIterator<Item = (u64, i64)>>(factors: I, reduced: bool) -> Self {
        let mut map = BTreeMap::new();
        for (a, m) in factors {
            *map.entry(a).or_insert(0) += m;
        }
        map.retain(|_, m| *m != 0);
        ZetaFactored { factors: map, reduced }
    }

    /// `ζ̃ = ζ·(t − 1)`; already reduced values are returned unchanged.
    pub fn to_reduced(&self) -> Self {
        if self.reduced {
            return self.clone();
        }
        Self::from_factors(self.factors.iter().map(|(&a, &m)| (a, m)).chain([(1, 1)]), true)
    }

    /// `Σ m_a Λ_a`.
    pub fn divisor(&self) -> GroupRingDivisor {
        GroupRingDivisor::from_pairs(self.factors.iter().map(|(&a, &m)| (a, rat(m))))
    }

    pub fn pairs(&self) -> Vec<(u64, i64)> {
        self.factors.iter().map(|(&a, &m)| (a, m)).collect()
    }
}

impl fmt::Display for ZetaFactored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(a, m)| format!("(1-t^{a})^{m}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Euler characteristic of the part of the exceptional divisor of `Q` that lies over
/// the origin and avoids the strict transform and every other divisor with `d > 0`.
pub fn chi_double_prime(q: &[i64], nd: &NewtonData, sub: &SimplicialSubdivision) -> Result<i64> {
    if nd.nvars() != 3 {
        return Err(Error::UnsupportedDimension(nd.nvars()));
    }
    let v = sub.vertex_index(q).ok_or_else(|| Error::UnknownVertex(q.to_vec()))?;
    if nd.d(q) <= 0 {
        return Err(Error::NotExceptional(q.to_vec()));
    }
    let mut chi = 0;
    for cone in sub.all_cones().into_iter().filter(|c| c.contains(&v)) {
        if cone.iter().any(|&w| w != v && nd.d(&sub.vertices[w]) > 0) {
            continue;
        }
        let sum = cone.iter().fold(vec![0; 3], |acc, &w| lattice::add(&acc, &sub.vertices[w]));
        if sum.iter().any(|&x| x <= 0) {
            continue;
        }
        chi += match cone.len() {
            1 => {
                let face = face_of_weight(q, nd)?;
                if face.dimension == 2 {
                    lattice_measures(&face)?.normalized_volume
                } else {
                    0
                }
            }
            2 => {
                let face = face_of_weight(&lattice::primitive(&sum), nd)?;
                if face.dimension == 1 {
                    -lattice_measures(&face)?.lattice_length
                } else {
                    0
                }
            }
            _ => 1,
        };
    }
    Ok(chi)
}

/// `ζ(t) = ∏_{Q : d(Q) > 0} (1 − t^{d(Q)})^{−χ(Q)}` for a Newton non-degenerate `f`
/// in three variables (raw convention).
pub fn acampo_zeta(nd: &NewtonData, sub: &SimplicialSubdivision) -> Result<ZetaFactored> {
    if nd.nvars() != 3 {
        return Err(Error::UnsupportedDimension(nd.nvars()));
    }
    let report = degeneracy_report_for(nd)?;
    if let Some(face) = report.degenerate_faces().next() {
        return Err(Error::Degenerate(format!("face with weight {:?}", face.weight)));
    }
    let mut factors = Vec::new();
    for q in &sub.vertices {
        let d = nd.d(q);
        if d > 0 {
            factors.push((d as u64, -chi_double_prime(q, nd, sub)?));
        }
    }
    Ok(ZetaFactored::from_factors(factors, false))
}

/// Zeta-function of a weighted homogeneous isolated singularity, computed on the
/// non-degenerate member of a seeded deformation with the same Newton boundary.
pub fn zeta_via_deformation(f: &SparsePolynomial, seed: u64) -> Result<ZetaFactored> {
    weighted_homogeneity(f).ok_or(Error::NotWeightedHomogeneous)?;
    if jacobian_ring_dimension(f) == JacobianDimension::Infinite {
        return Err(Error::NotIsolated);
    }
    let nd = newton_data(f)?;
    let sub = admissible_subdivision(&nd)?;
    let family = generic_deformation(f, seed)?;
    let (_, sample) = &family.samples[0];
    acampo_zeta(&newton_data(sample)?, &sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn lam(pairs: &[(u64, i64)]) -> GroupRingDivisor {
        GroupRingDivisor::from_pairs(pairs.iter().map(|&(a, c)| (a, rat(c))))
    }

    #[test]
    fn products() {
        let l = GroupRingDivisor::lambda;
        assert_eq!(divisor_multiply(&l(2), &l(3)), l(6));
        assert_eq!(divisor_multiply(&l(2), &l(2)), lam(&[(2, 2)]));
        let a = lam(&[(4, 3), (6, -1)]);
        assert_eq!(divisor_multiply(&GroupRingDivisor::one(), &a), a);
    }

    #[test]
    fn milnor_orlik_examples() {
        assert_eq!(milnor_orlik_divisor(&[3, 2], 6).unwrap(), lam(&[(6, 1), (3, -1), (2, -1), (1, 1)]));
        assert_eq!(milnor_orlik_divisor(&[1, 1, 1], 2).unwrap(), lam(&[(1, 1), (2, -1)]));
        assert!(milnor_orlik_divisor(&[1, 1], 1).unwrap().is_zero());
        assert_eq!(mu_from_formula(&[21, 14, 6], 42).unwrap(), 12);
        assert_eq!(mu_from_formula(&[1, 1, 1], 4).unwrap(), 27);
        assert_eq!(mu_from_formula(&[1, 1], 1).unwrap(), 0);
        assert!(mu_from_formula(&[2, 3], 4).is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(divisor_size(&lam(&[(6, 1), (3, -1), (2, -1), (1, 1)])).unwrap(), 2);
        assert_eq!(divisor_size(&lam(&[(1, 1), (2, -1)])).unwrap(), -1);
        assert_eq!(divisor_size(&GroupRingDivisor::zero()).unwrap(), 0);
        assert!(divisor_size(&GroupRingDivisor::lambda(2).scale(&rat_frac(1, 2))).is_err());
    }

    fn reduced_zeta(s: &str) -> ZetaFactored {
        let nd = newton_data(&parse_polynomial(s, 3).unwrap()).unwrap();
        let sub = admissible_subdivision(&nd).unwrap();
        acampo_zeta(&nd, &sub).unwrap().to_reduced()
    }

    #[test]
    fn node() {
        let nd = newton_data(&parse_polynomial("z1^2 + z2^2 + z3^2", 3).unwrap()).unwrap();
        let sub = admissible_subdivision(&nd).unwrap();
        assert_eq!(chi_double_prime(&[1, 1, 1], &nd, &sub).unwrap(), 1);
        let z = acampo_zeta(&nd, &sub).unwrap();
        assert_eq!(z.pairs(), vec![(2, -1)]);
        assert_eq!(z.to_reduced().divisor(), lam(&[(1, 1), (2, -1)]));
        assert!(chi_double_prime(&[1, 0, 0], &nd, &sub).is_err());
    }

    #[test]
    fn acampo_matches_milnor_orlik() {
        let z = reduced_zeta("z1^2 + z2^3 + z3^7");
        assert_eq!(z.divisor(), milnor_orlik_divisor(&[21, 14, 6], 42).unwrap());
        let z = reduced_zeta("z1^3 + z2^3 + z3^3");
        assert_eq!(divisor_size(&z.divisor()).unwrap(), -8);
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let nd = newton_data(&parse_polynomial("z1^2 + 2 z1 z2 + z2^2 + z3^2", 3).unwrap()).unwrap();
        let sub = admissible_subdivision(&nd).unwrap();
        assert!(matches!(acampo_zeta(&nd, &sub), Err(Error::Degenerate(_))));
    }
}
