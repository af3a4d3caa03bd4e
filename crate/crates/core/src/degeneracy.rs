//! Face functions, Newton non-degeneracy per face, edge factorizations in
//! coordinate planes and generic coefficient deformations.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{self, to_i64};
use crate::newton::{newton_data, Face, NewtonData};
use crate::poly::{common_torus_zero, rat, rat_frac, Bivariate, Rational, SparsePolynomial, UnivariatePolynomial};

/// Terms of `p` with exponents on `face`.
pub fn face_function(p: &SparsePolynomial, face: &Face) -> Result<SparsePolynomial> {
    check_face(p, face)?;
    Ok(p.filter_terms(|e| face.contains(e)))
}

fn check_face(p: &SparsePolynomial, face: &Face) -> Result<()> {
    let ok = face.points.iter().all(|e| e.len() == p.nvars() && !p.coefficient(e).is_zero())
        && p.terms().all(|(e, _)| lattice::dot(&to_i64(e), &face.weight) >= face.d)
        && p.terms().filter(|(e, _)| lattice::dot(&to_i64(e), &face.weight) == face.d).count() == face.points.len();
    if ok {
        Ok(())
    } else {
        Err(Error::FaceMismatch(format!("face with weight {:?} is not a face of {p}", face.weight)))
    }
}

/// Verdict of the non-degeneracy test on one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceVerdict {
    pub nondegenerate: bool,
    pub witness: String,
}

/// Univariate polynomial `q(w) = Σ c_i w^i` read along an edge from its
/// lexicographically smaller end in steps of the primitive edge direction.
pub fn edge_polynomial(f_edge: &SparsePolynomial, face: &Face) -> UnivariatePolynomial {
    let corners = face.corners();
    let (lo, hi) = if corners[0] <= corners[1] { (&corners[0], &corners[1]) } else { (&corners[1], &corners[0]) };
    let delta = lattice::sub(&to_i64(hi), &to_i64(lo));
    let len = lattice::gcd_all(&delta);
    let dir: Vec<i64> = delta.iter().map(|x| x / len).collect();
    let coeffs = (0..=len)
        .map(|i| {
            let e: Vec<u32> = to_i64(lo).iter().zip(&dir).map(|(a, u)| (a + i * u) as u32).collect();
            f_edge.coefficient(&e)
        })
        .collect();
    UnivariatePolynomial::new(coeffs)
}

/// Whether the face function has no critical point on the torus.
pub fn is_nondegenerate_on_face(p: &SparsePolynomial, face: &Face) -> Result<FaceVerdict> {
    let f = face_function(p, face)?;
    match face.dimension {
        0 => Ok(FaceVerdict { nondegenerate: true, witness: "monomial".into() }),
        1 => {
            let q = edge_polynomial(&f, face);
            let g = q.gcd(&q.derivative());
            if g.is_constant() {
                Ok(FaceVerdict { nondegenerate: true, witness: format!("edge polynomial {q} is squarefree") })
            } else {
                Ok(FaceVerdict {
                    nondegenerate: false,
                    witness: format!("edge polynomial {q} has repeated factor {g}"),
                })
            }
        }
        _ => facet_nondegeneracy(p, face),
    }
}

/// Saturated basis of the lattice `Q^⊥ ∩ ℤ³`, Gauss-reduced.
fn orthogonal_basis(q: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let (g, s, t) = lattice::ext_gcd(q[0], q[1]);
    let (mut u, mut v) = if g == 0 {
        (vec![1, 0, 0], vec![0, 1, 0])
    } else {
        (vec![q[1] / g, -q[0] / g, 0], vec![-s * q[2], -t * q[2], g])
    };
    let norm = |x: &[i64]| lattice::dot(x, x);
    loop {
        if norm(&u) > norm(&v) {
            std::mem::swap(&mut u, &mut v);
        }
        let dot = lattice::dot(&u, &v);
        if 2 * dot.abs() <= norm(&u) {
            break;
        }
        let k = (dot as f64 / norm(&u) as f64).round() as i64;
        v = v.iter().zip(&u).map(|(a, b)| a - k * b).collect();
    }
    (u, v)
}

/// Express a facet's face function as a polynomial in two torus coordinates.
pub fn facet_reduction(f_face: &SparsePolynomial, face: &Face) -> SparsePolynomial {
    let (u, v) = orthogonal_basis(&face.weight);
    let base = to_i64(&face.points[0]);
    let coords: Vec<(i64, i64, Rational)> = f_face
        .terms()
        .map(|(e, c)| {
            let delta = lattice::sub(&to_i64(e), &base);
            // delta = a·u + b·v, solved by Cramer on a non-vanishing 2×2 minor
            let (i, j) = [(0, 1), (0, 2), (1, 2)]
                .into_iter()
                .find(|&(i, j)| u[i] * v[j] - u[j] * v[i] != 0)
                .expect("independent basis");
            let det = u[i] * v[j] - u[j] * v[i];
            let a = (delta[i] * v[j] - delta[j] * v[i]) / det;
            let b = (u[i] * delta[j] - u[j] * delta[i]) / det;
            (a, b, c.clone())
        })
        .collect();
    let amin = coords.iter().map(|c| c.0).min().unwrap_or(0);
    let bmin = coords.iter().map(|c| c.1).min().unwrap_or(0);
    SparsePolynomial::from_terms(
        2,
        coords.into_iter().map(|(a, b, c)| (vec![(a - amin) as u32, (b - bmin) as u32], c)),
    )
}

/// Exact torus critical-point test for a two-dimensional face in three variables.
pub fn facet_nondegeneracy(p: &SparsePolynomial, face: &Face) -> Result<FaceVerdict> {
    if face.dimension != 2 || p.nvars() != 3 {
        return Err(Error::FaceMismatch("facet test needs a two-dimensional face in three variables".into()));
    }
    let f = face_function(p, face)?;
    let g = facet_reduction(&f, face);
    Ok(match common_torus_zero(&g) {
        None => FaceVerdict { nondegenerate: true, witness: "no common torus zero of g, g_x, g_y".into() },
        Some(z) => FaceVerdict { nondegenerate: false, witness: z.to_string() },
    })
}

/// Data of a face function on an edge in a coordinate plane `{j, k}`:
/// `f = c·z_j^a·z_k^b·z_k^{p_j·K}·q(z_j^{p_k}/z_k^{p_j})` with `q` monic of degree `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFactorization {
    pub plane: (usize, usize),
    pub weights: (i64, i64),
    pub c: Rational,
    pub a: u32,
    pub b: u32,
    pub q: UnivariatePolynomial,
    pub factors: Vec<(UnivariatePolynomial, u32)>,
    /// Total degree of the distinct factors.
    pub ell: usize,
    /// Degree of `q`, i.e. the sum of multiplicities counted with degrees.
    pub k: usize,
}

impl EdgeFactorization {
    /// Product of the factors with multiplicity at least two.
    pub fn multiple_part(&self) -> UnivariatePolynomial {
        self.factors
            .iter()
            .filter(|(_, m)| *m >= 2)
            .fold(UnivariatePolynomial::one(), |acc, (f, _)| &acc * f)
    }

    pub fn is_degenerate(&self) -> bool {
        self.factors.iter().any(|(_, m)| *m >= 2)
    }

    /// Re-substitute into the plane coordinates (as a polynomial in all variables).
    pub fn expand(&self, nvars: usize) -> SparsePolynomial {
        let (j, k) = self.plane;
        let (pj, pk) = (self.weights.0 as u32, self.weights.1 as u32);
        let kk = self.k as u32;
        let mut out = SparsePolynomial::zero(nvars);
        for (i, ci) in self.q.coefficients().iter().enumerate() {
            let i = i as u32;
            let mut e = vec![0u32; nvars];
            e[j] = self.a + pk * i;
            e[k] = self.b + pj * (kk - i);
            out.add_term(e, ci * &self.c);
        }
        out
    }
}

/// Factor the face function on the edge `Γ(f) ∩ ℝ^I`, `I = plane`, whose normal
/// in the plane is `weights`.
pub fn edge_factorization(p: &SparsePolynomial, plane: (usize, usize), weights: (i64, i64)) -> Result<EdgeFactorization> {
    let (j, k) = plane;
    let w = lattice::primitive(&[weights.0, weights.1]);
    if j == k || j >= p.nvars() || k >= p.nvars() || w.iter().any(|&x| x <= 0) {
        return Err(Error::NotAnEdge(format!("plane {plane:?} with weights {weights:?}")));
    }
    let (pj, pk) = (w[0], w[1]);
    let restricted = p.restrict_to(&[j, k]);
    if restricted.is_zero() {
        return Err(Error::NotAnEdge(format!("no terms in the plane {plane:?}")));
    }
    let d = restricted.terms().map(|(e, _)| pj * e[0] as i64 + pk * e[1] as i64).min().unwrap();
    let on_edge: Vec<(Vec<u32>, Rational)> = restricted
        .terms()
        .filter(|(e, _)| pj * e[0] as i64 + pk * e[1] as i64 == d)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    if on_edge.len() < 2 {
        return Err(Error::NotAnEdge(format!("weights {weights:?} select a vertex in the plane {plane:?}")));
    }
    // The edge is Γ(f) ∩ ℝ^I only if it is also a face of the full polyhedron.
    if p.nvars() == 3 {
        let other = 3 - j - k;
        let mut q = vec![0i64; 3];
        q[j] = pj;
        q[k] = pk;
        q[other] = d + 1;
        let dq = p.terms().map(|(e, _)| lattice::dot(&to_i64(e), &q)).min().unwrap();
        if dq != d {
            return Err(Error::NotAnEdge(format!("edge in the plane {plane:?} is not on the boundary")));
        }
    }
    let a = on_edge.iter().map(|(e, _)| e[0]).min().unwrap();
    let b = on_edge.iter().map(|(e, _)| e[1]).min().unwrap();
    let amax = on_edge.iter().map(|(e, _)| e[0]).max().unwrap();
    let kk = ((amax - a) as i64 / pk) as usize;
    let mut coeffs = vec![Rational::zero(); kk + 1];
    for (e, c) in &on_edge {
        coeffs[((e[0] - a) as i64 / pk) as usize] = c.clone();
    }
    let raw = UnivariatePolynomial::new(coeffs);
    let c = raw.leading_coefficient();
    let q = raw.monic();
    let factors = q.squarefree_decomposition()?;
    let ell = factors.iter().map(|(f, _)| f.degree().unwrap_or(0)).sum();
    Ok(EdgeFactorization { plane: (j, k), weights: (pj, pk), c, a, b, q, factors, ell, k: kk })
}

/// Verdicts for every compact face plus the degenerate edges lying in coordinate planes.
#[derive(Clone, Debug)]
pub struct DegeneracyReport {
    pub verdicts: Vec<(Face, FaceVerdict)>,
    pub degenerate_edges: Vec<EdgeFactorization>,
}

impl DegeneracyReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.nondegenerate)
    }

    pub fn degenerate_faces(&self) -> impl Iterator<Item = &Face> {
        self.verdicts.iter().filter(|(_, v)| !v.nondegenerate).map(|(f, _)| f)
    }
}

/// Coordinate plane `(j, k)` containing an edge, if any.
pub fn edge_plane(face: &Face, nvars: usize) -> Option<(usize, usize)> {
    if face.dimension != 1 {
        return None;
    }
    if nvars == 2 {
        return Some((0, 1));
    }
    let zero = face.zero_coordinates();
    let i = *zero.first()?;
    let rest: Vec<usize> = (0..3).filter(|&x| x != i).collect();
    Some((rest[0], rest[1]))
}

pub fn degeneracy_report_for(nd: &NewtonData) -> Result<DegeneracyReport> {
    let p = &nd.polynomial;
    let mut verdicts = Vec::new();
    let mut degenerate_edges = Vec::new();
    for face in &nd.faces {
        let v = is_nondegenerate_on_face(p, face)?;
        if !v.nondegenerate {
            if let Some((j, k)) = edge_plane(face, p.nvars()) {
                let w = (face.weight[j], face.weight[k]);
                degenerate_edges.push(edge_factorization(p, (j, k), w)?);
            }
        }
        verdicts.push((face.clone(), v));
    }
    Ok(DegeneracyReport { verdicts, degenerate_edges })
}

pub fn degeneracy_report(p: &SparsePolynomial) -> Result<DegeneracyReport> {
    degeneracy_report_for(&newton_data(p)?)
}

/// Integer points of `Γ(f)`: points of `Γ₊(f)` on at least one compact face.
pub fn boundary_lattice_points(nd: &NewtonData) -> Vec<Vec<u32>> {
    let n = nd.nvars();
    let bounds: Vec<u32> = (0..n).map(|i| nd.vertices.iter().map(|v| v[i]).max().unwrap_or(0)).collect();
    let dvals: Vec<i64> = nd.facet_normals.iter().map(|q| nd.d(q)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let x = to_i64(&cur);
        let mut tight = vec![0i64; n];
        let mut inside = true;
        for (q, &d) in nd.facet_normals.iter().zip(&dvals) {
            let val = lattice::dot(q, &x);
            if val < d {
                inside = false;
                break;
            }
            if val == d {
                tight = lattice::add(&tight, q);
            }
        }
        if inside && tight.iter().all(|&t| t > 0) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if cur[i] < bounds[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Discriminant in the deformation parameter of one edge polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDiscriminant {
    pub face: Face,
    /// `Res_w(q_s, ∂q_s/∂w)` as a polynomial in `s`, up to a nonzero constant.
    pub discriminant: UnivariatePolynomial,
}

/// `F(s, z) = f(z) + s·direction(z)` with verified samples.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub base: SparsePolynomial,
    pub direction: SparsePolynomial,
    /// Verified parameter values and the corresponding members `f_s`.
    pub samples: Vec<(Rational, SparsePolynomial)>,
    pub seed_used: u64,
    pub attempts: u32,
    pub discriminants: Vec<EdgeDiscriminant>,
}

impl DeformationFamily {
    pub fn member(&self, s: &Rational) -> SparsePolynomial {
        &self.base + &self.direction.scale(s)
    }

    /// `F(s, z)` with `s` as the last variable.
    pub fn total(&self) -> SparsePolynomial {
        let n = self.base.nvars();
        let positions: Vec<usize> = (0..n).collect();
        let base = self.base.embed(n + 1, &positions);
        let mut dir = self.direction.embed(n + 1, &positions);
        let mut e = vec![0; n + 1];
        e[n] = 1;
        dir = dir.mul_monomial(&e, &Rational::one());
        &base + &dir
    }
}

pub const DEFORMATION_ATTEMPTS: u32 = 8;

/// Coefficients for `count` boundary points from a seeded ChaCha stream: numerators in
/// `[-10, 10] \ {0}`, denominators in `1..=3`; then one extra sample parameter.
pub fn seeded_draw(seed: u64, count: usize) -> (Vec<Rational>, Rational) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..count)
        .map(|_| {
            let mut num = 0;
            while num == 0 {
                num = rng.gen_range(-10i64..=10);
            }
            rat_frac(num, rng.gen_range(1i64..=3))
        })
        .collect();
    let s = rat_frac(rng.gen_range(1i64..=5), rng.gen_range(6i64..=11));
    (coeffs, s)
}

pub fn generic_deformation(p: &SparsePolynomial, seed: u64) -> Result<DeformationFamily> {
    generic_deformation_with(p, seed, seeded_draw)
}

/// Same as [`generic_deformation`] with a caller-supplied coefficient source.
pub fn generic_deformation_with<F>(p: &SparsePolynomial, seed: u64, draw: F) -> Result<DeformationFamily>
where
    F: Fn(u64, usize) -> (Vec<Rational>, Rational),
{
    let nd = newton_data(p)?;
    let points = boundary_lattice_points(&nd);
    let mut failures = Vec::new();
    for attempt in 0..DEFORMATION_ATTEMPTS {
        let s_seed = seed.wrapping_add(attempt as u64);
        let (coeffs, extra) = draw(s_seed, points.len());
        let direction = SparsePolynomial::from_terms(p.nvars(), points.iter().cloned().zip(coeffs));
        match check_family(p, &nd, &direction, &[rat(1), extra]) {
            Ok((samples, discriminants)) => {
                return Ok(DeformationFamily {
                    base: p.clone(),
                    direction,
                    samples,
                    seed_used: s_seed,
                    attempts: attempt + 1,
                    discriminants,
                });
            }
            Err(msg) => failures.push(format!("seed {s_seed}: {msg}")),
        }
    }
    Err(Error::DeformationFailed { attempts: DEFORMATION_ATTEMPTS, detail: failures.join("; ") })
}

type FamilyCheck = (Vec<(Rational, SparsePolynomial)>, Vec<EdgeDiscriminant>);

fn same_boundary(a: &NewtonData, b: &NewtonData) -> bool {
    let key = |nd: &NewtonData| -> Vec<(usize, Vec<i64>, i64)> {
        nd.faces.iter().map(|f| (f.dimension, f.weight.clone(), f.d)).collect()
    };
    a.vertices == b.vertices && key(a) == key(b)
}

fn check_family(
    p: &SparsePolynomial,
    nd: &NewtonData,
    direction: &SparsePolynomial,
    params: &[Rational],
) -> std::result::Result<FamilyCheck, String> {
    let mut samples = Vec::new();
    for s in params {
        if s.is_zero() {
            return Err("zero sample parameter".into());
        }
        let fs = p + &direction.scale(s);
        let nds = newton_data(&fs).map_err(|e| e.to_string())?;
        if !same_boundary(nd, &nds) {
            return Err(format!("Newton boundary changes at s = {s}"));
        }
        let rep = degeneracy_report_for(&nds).map_err(|e| e.to_string())?;
        if let Some(face) = rep.degenerate_faces().next() {
            return Err(format!("degenerate at s = {s} on the face with weight {:?}", face.weight));
        }
        samples.push((s.clone(), fs));
    }
    let mut discriminants = Vec::new();
    for face in nd.faces_of_dimension(1) {
        let q0 = edge_polynomial(&p.filter_terms(|e| lattice::dot(&to_i64(e), &face.weight) == face.d), face);
        let q1 = edge_polynomial(&direction.filter_terms(|e| lattice::dot(&to_i64(e), &face.weight) == face.d), face);
        // q_s(w) as a polynomial in (w, s)
        let mut qs = SparsePolynomial::zero(2);
        for (i, c) in q0.coefficients().iter().enumerate() {
            qs.add_term(vec![i as u32, 0], c.clone());
        }
        for (i, c) in q1.coefficients().iter().enumerate() {
            qs.add_term(vec![i as u32, 1], c.clone());
        }
        let dq = qs.partial_derivative(0).expect("two variables");
        let disc = Bivariate::from_sparse(&qs, 0).resultant_x(&Bivariate::from_sparse(&dq, 0));
        if disc.is_zero() {
            return Err(format!("edge discriminant vanishes identically on weight {:?}", face.weight));
        }
        discriminants.push(EdgeDiscriminant { face: face.clone(), discriminant: disc });
    }
    Ok((samples, discriminants))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::face_of_weight;
    use crate::poly::parse_polynomial;

    fn p3(s: &str) -> SparsePolynomial {
        parse_polynomial(s, 3).unwrap()
    }

    const FLAGSHIP: &str = "z1^4 + z2^3 z3 - 2 z2^2 z3^2 + z2 z3^3 + z1^2 z2 z3";

    #[test]
    fn face_functions() {
        let f = parse_polynomial("z1^2 + z2^3 + z1 z2^5", 2).unwrap();
        let nd = newton_data(&f).unwrap();
        let e = nd.faces_of_dimension(1).next().unwrap();
        assert_eq!(face_function(&f, e).unwrap(), parse_polynomial("z1^2 + z2^3", 2).unwrap());
        let g = p3(FLAGSHIP);
        let nd = newton_data(&g).unwrap();
        let face = face_of_weight(&[1, 0, 0], &nd).unwrap();
        assert_eq!(face_function(&g, &face).unwrap(), p3("z2^3 z3 - 2 z2^2 z3^2 + z2 z3^3"));
    }

    #[test]
    fn edge_verdicts() {
        let g = p3(FLAGSHIP);
        let nd = newton_data(&g).unwrap();
        let edge = nd.faces.iter().find(|f| f.dimension == 1 && f.zero_coordinates() == vec![0]).unwrap();
        let v = is_nondegenerate_on_face(&g, edge).unwrap();
        assert!(!v.nondegenerate);
        let c = parse_polynomial("z1^2 + z2^3", 2).unwrap();
        let nd = newton_data(&c).unwrap();
        assert!(is_nondegenerate_on_face(&c, &nd.faces[2]).unwrap().nondegenerate);
        assert!(nd.faces_of_dimension(0).all(|f| is_nondegenerate_on_face(&c, f).unwrap().nondegenerate));
    }

    #[test]
    fn edge_factorizations() {
        let ef = edge_factorization(&p3(FLAGSHIP), (1, 2), (1, 1)).unwrap();
        assert_eq!((ef.a, ef.b, ef.k, ef.ell), (1, 1, 2, 1));
        assert_eq!(ef.factors, vec![(UnivariatePolynomial::from_i64(&[-1, 1]), 2)]);
        assert_eq!(ef.expand(3), p3("z2^3 z3 - 2 z2^2 z3^2 + z2 z3^3"));
        let ef = edge_factorization(&p3("z1^2 + z2^3 + z3^7"), (1, 2), (7, 3)).unwrap();
        assert_eq!((ef.a, ef.b), (0, 0));
        assert_eq!(ef.q, UnivariatePolynomial::from_i64(&[1, 1]));
        // z2^2 z3 (z2^2 - z3^3)(z2^2 - 2 z3^3) = z2^6 z3 - 3 z2^4 z3^4 + 2 z2^2 z3^7
        let h = p3("z1^9 + z2^6 z3 - 3 z2^4 z3^4 + 2 z2^2 z3^7");
        let ef = edge_factorization(&h, (1, 2), (3, 2)).unwrap();
        assert_eq!((ef.a, ef.b), (2, 1));
        assert_eq!(ef.factors.len(), 1);
        assert_eq!(ef.factors[0].1, 1);
        assert_eq!(ef.expand(3), h.restrict_to(&[1, 2]).embed(3, &[1, 2]));
        assert!(edge_factorization(&h, (1, 2), (1, 1)).is_err());
    }

    #[test]
    fn facet_examples() {
        let f = p3("z1^2 + z2^2 + z3^2");
        let nd = newton_data(&f).unwrap();
        let top = nd.faces_of_dimension(2).next().unwrap();
        assert!(facet_nondegeneracy(&f, top).unwrap().nondegenerate);
        let f = p3("z1^2 + 2 z1 z2 + z2^2 + z3^2");
        let nd = newton_data(&f).unwrap();
        let top = nd.faces_of_dimension(2).next().unwrap();
        assert!(facet_nondegeneracy(&f, top).unwrap().nondegenerate);
        // (z1 z2 - z3^2)^2 + z1^5 + z2^5: the repeated factor sits on an edge
        let f = p3("z1^2 z2^2 - 2 z1 z2 z3^2 + z3^4 + z1^5 + z2^5");
        let rep = degeneracy_report(&f).unwrap();
        let bad: Vec<&Face> = rep.degenerate_faces().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].dimension, 1);
        assert_eq!(bad[0].points, vec![vec![0, 0, 4], vec![1, 1, 2], vec![2, 2, 0]]);
        // (z1 + z2 - z3)^2: a curve of torus critical points
        let g = p3("z1^2 + z2^2 + z3^2 + 2 z1 z2 - 2 z1 z3 - 2 z2 z3");
        let nd = newton_data(&g).unwrap();
        let top = nd.faces_of_dimension(2).next().unwrap();
        assert!(!facet_nondegeneracy(&g, top).unwrap().nondegenerate);
        // three concurrent-free lines: isolated torus double points such as (1,1,1)
        let g = p3("z1^3 + z2^3 + z3^3 - 3 z1 z2 z3");
        let nd = newton_data(&g).unwrap();
        let top = nd.faces_of_dimension(2).next().unwrap();
        let v = facet_nondegeneracy(&g, top).unwrap();
        assert!(!v.nondegenerate, "{}", v.witness);
    }

    #[test]
    fn boundary_points_of_the_flagship() {
        let nd = newton_data(&p3(FLAGSHIP)).unwrap();
        let pts = boundary_lattice_points(&nd);
        assert!(pts.contains(&vec![0, 2, 2]));
        assert!(pts.contains(&vec![2, 1, 1]));
        assert!(!pts.contains(&vec![0, 4, 0]));
        assert!(pts.iter().all(|e| e.iter().sum::<u32>() == 4));
    }

    #[test]
    fn deformation_retries_past_a_bad_draw() {
        let f = p3(FLAGSHIP);
        let fam = generic_deformation_with(&f, 5, |seed, n| {
            if seed == 5 {
                (vec![Rational::zero(); n], rat(1) / rat(2))
            } else {
                seeded_draw(seed, n)
            }
        })
        .unwrap();
        assert_eq!(fam.seed_used, 6);
        assert_eq!(fam.attempts, 2);
    }
}
