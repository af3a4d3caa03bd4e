//! Newton polyhedron `Γ₊(f)`, the compact faces of its boundary `Γ(f)`, the dual
//! fan of weight vectors and the Newton number.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, to_i64};
use crate::poly::{ExponentVector, SparsePolynomial};

/// A compact face `Δ(Q)` together with a weight `Q` from the relative interior of
/// its normal cone and `d(Q) = min_α Q·α`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Face {
    pub dimension: usize,
    /// Support exponents lying on the face, ascending.
    pub points: Vec<ExponentVector>,
    pub weight: Vec<i64>,
    pub d: i64,
}

impl Face {
    pub fn contains(&self, alpha: &[u32]) -> bool {
        self.points.iter().any(|p| p.as_slice() == alpha)
    }

    /// Coordinates that vanish at every point of the face.
    pub fn zero_coordinates(&self) -> Vec<usize> {
        let n = self.points[0].len();
        (0..n).filter(|&i| self.points.iter().all(|p| p[i] == 0)).collect()
    }

    /// Vertices of the face (endpoints for an edge, hull corners for a polygon).
    pub fn corners(&self) -> Vec<ExponentVector> {
        match self.dimension {
            0 => self.points.clone(),
            1 => {
                let dir = lattice::sub(&to_i64(&self.points[1]), &to_i64(&self.points[0]));
                let key = |p: &ExponentVector| lattice::dot(&to_i64(p), &dir);
                let lo = self.points.iter().min_by_key(|p| key(p)).unwrap().clone();
                let hi = self.points.iter().max_by_key(|p| key(p)).unwrap().clone();
                vec![lo, hi]
            }
            _ => {
                let (drop, _) = plane_projection(&self.weight);
                let proj: Vec<(i64, i64)> = self.points.iter().map(|p| project(p, drop)).collect();
                let hull = lattice::convex_hull(&proj);
                self.points.iter().filter(|p| hull.contains(&project(p, drop))).cloned().collect()
            }
        }
    }
}

fn plane_projection(normal: &[i64]) -> (usize, i64) {
    let i = (0..normal.len()).rev().find(|&i| normal[i] != 0).expect("nonzero normal");
    (i, normal[i].abs())
}

fn project(p: &[u32], drop: usize) -> (i64, i64) {
    let v: Vec<i64> = (0..p.len()).filter(|&j| j != drop).map(|j| p[j] as i64).collect();
    (v[0], v[1])
}

/// Lattice data of a face: normalized volume in the intrinsic lattice of its span and
/// the number of boundary lattice segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeMeasures {
    pub normalized_volume: i64,
    pub lattice_length: i64,
}

/// For an edge both numbers are its lattice length; for a polygon the normalized
/// area (twice the lattice area) and the lattice perimeter.
pub fn lattice_measures(face: &Face) -> Result<LatticeMeasures> {
    match face.dimension {
        0 => Err(Error::FaceMismatch("a vertex has no lattice measure".into())),
        1 => {
            let c = face.corners();
            let len = lattice::gcd_all(&lattice::sub(&to_i64(&c[1]), &to_i64(&c[0])));
            Ok(LatticeMeasures { normalized_volume: len, lattice_length: len })
        }
        _ => {
            let pts: Vec<Vec<i64>> = face.points.iter().map(|p| to_i64(p)).collect();
            let normal = span_normal(&pts);
            let (drop, scale) = plane_projection(&normal);
            let proj: Vec<(i64, i64)> = face.points.iter().map(|p| project(p, drop)).collect();
            let area = lattice::hull_double_area(&proj) / scale;
            let hull = lattice::convex_hull(&proj);
            let perim: i64 = (0..hull.len())
                .map(|i| {
                    let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
                    lattice::gcd(b.0 - a.0, b.1 - a.1)
                })
                .sum();
            Ok(LatticeMeasures { normalized_volume: area, lattice_length: perim })
        }
    }
}

/// Primitive normal of the plane through a planar, non-collinear point set in ℤ³.
fn span_normal(pts: &[Vec<i64>]) -> Vec<i64> {
    let base = &pts[0];
    for i in 1..pts.len() {
        for j in i + 1..pts.len() {
            let c = lattice::cross(&lattice::sub(&pts[i], base), &lattice::sub(&pts[j], base));
            if c.iter().any(|&x| x != 0) {
                return lattice::primitive(&c);
            }
        }
    }
    panic!("points are collinear")
}

/// Newton polyhedron data of a polynomial vanishing at the origin.
#[derive(Clone, Debug)]
pub struct NewtonData {
    pub polynomial: SparsePolynomial,
    pub vertices: Vec<ExponentVector>,
    /// All compact faces of `Γ(f)`, by dimension and then by points.
    pub faces: Vec<Face>,
    /// `convenient[i]` holds when some support point lies on the `z_{i+1}` axis.
    pub convenient: Vec<bool>,
    /// Primitive inner normals of all facets of `Γ₊(f)`, compact or not, ascending.
    pub facet_normals: Vec<Vec<i64>>,
}

impl NewtonData {
    pub fn nvars(&self) -> usize {
        self.polynomial.nvars()
    }

    pub fn is_convenient(&self) -> bool {
        self.convenient.iter().all(|&c| c)
    }

    /// `d(Q) = min over the support of Q·α`.
    pub fn d(&self, q: &[i64]) -> i64 {
        support_min(&self.polynomial, q)
    }

    pub fn faces_of_dimension(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dimension == k)
    }

    /// Dimension of `Δ(Q)` as a face of `Γ₊(f)`, counting recession directions.
    pub fn polyhedral_dimension(&self, q: &[i64]) -> usize {
        let pts = minimizers(&self.polynomial, q);
        let n = self.nvars();
        let base = to_i64(&pts[0]);
        let mut rows: Vec<Vec<i64>> = pts.iter().skip(1).map(|p| lattice::sub(&to_i64(p), &base)).collect();
        rows.extend((0..n).filter(|&j| q[j] == 0).map(|j| lattice::unit(n, j)));
        lattice::rank(&rows)
    }
}

fn support_min(p: &SparsePolynomial, q: &[i64]) -> i64 {
    p.terms().map(|(e, _)| lattice::dot(&to_i64(e), q)).min().expect("nonzero polynomial")
}

fn minimizers(p: &SparsePolynomial, q: &[i64]) -> Vec<ExponentVector> {
    let d = support_min(p, q);
    p.terms().filter(|(e, _)| lattice::dot(&to_i64(e), q) == d).map(|(e, _)| e.clone()).collect()
}

fn affine_dimension(points: &[ExponentVector]) -> usize {
    let base = to_i64(&points[0]);
    let rows: Vec<Vec<i64>> = points.iter().skip(1).map(|p| lattice::sub(&to_i64(p), &base)).collect();
    lattice::rank(&rows)
}

/// Orient a normal so all entries are non-negative; `None` for mixed signs or zero.
fn nonnegative(v: Vec<i64>) -> Option<Vec<i64>> {
    if v.iter().all(|&x| x == 0) {
        return None;
    }
    if v.iter().all(|&x| x >= 0) {
        Some(lattice::primitive(&v))
    } else if v.iter().all(|&x| x <= 0) {
        Some(lattice::primitive(&v.iter().map(|x| -x).collect::<Vec<_>>()))
    } else {
        None
    }
}

fn check_input(p: &SparsePolynomial) -> Result<()> {
    if !(2..=3).contains(&p.nvars()) {
        return Err(Error::UnsupportedDimension(p.nvars()));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.constant_term().eq(&num_traits::Zero::zero()) {
        return Err(Error::ConstantTerm);
    }
    Ok(())
}

/// Compute `Γ₊(f)`: facets by exact normal enumeration, compact faces as
/// intersections of at most `n` facets.
pub fn newton_data(p: &SparsePolynomial) -> Result<NewtonData> {
    check_input(p)?;
    let n = p.nvars();
    let support: Vec<Vec<i64>> = p.support().iter().map(|e| to_i64(e)).collect();
    let mut candidates: BTreeSet<Vec<i64>> = (0..n).map(|i| lattice::unit(n, i)).collect();
    let m = support.len();
    for i in 0..m {
        for j in i + 1..m {
            let u = lattice::sub(&support[j], &support[i]);
            if n == 2 {
                candidates.extend(nonnegative(vec![-u[1], u[0]]));
                continue;
            }
            for k in 0..n {
                candidates.extend(nonnegative(lattice::cross(&u, &lattice::unit(n, k))));
            }
            for l in j + 1..m {
                let v = lattice::sub(&support[l], &support[i]);
                candidates.extend(nonnegative(lattice::cross(&u, &v)));
            }
        }
    }
    let mut data = NewtonData {
        polynomial: p.clone(),
        vertices: Vec::new(),
        faces: Vec::new(),
        convenient: (0..n)
            .map(|i| p.terms().any(|(e, _)| (0..n).all(|j| j == i || e[j] == 0)))
            .collect(),
        facet_normals: Vec::new(),
    };
    data.facet_normals = candidates.into_iter().filter(|q| data.polyhedral_dimension(q) == n - 1).collect();

    let facet_points: Vec<BTreeSet<ExponentVector>> =
        data.facet_normals.iter().map(|q| minimizers(p, q).into_iter().collect()).collect();
    let nf = data.facet_normals.len();
    let mut seen: BTreeSet<Vec<ExponentVector>> = BTreeSet::new();
    for k in 1..=n {
        for subset in lattice::subsets(nf, k) {
            let mut common = facet_points[subset[0]].clone();
            for &s in &subset[1..] {
                common = common.intersection(&facet_points[s]).cloned().collect();
            }
            if common.is_empty() {
                continue;
            }
            let pts: Vec<ExponentVector> = common.iter().cloned().collect();
            if !seen.insert(pts.clone()) {
                continue;
            }
            let mut q = vec![0i64; n];
            for (idx, fp) in facet_points.iter().enumerate() {
                if common.is_subset(fp) {
                    q = lattice::add(&q, &data.facet_normals[idx]);
                }
            }
            if q.iter().any(|&x| x <= 0) {
                continue;
            }
            let q = lattice::primitive(&q);
            let face_pts = minimizers(p, &q);
            if face_pts != pts {
                continue;
            }
            let d = support_min(p, &q);
            data.faces.push(Face { dimension: affine_dimension(&pts), points: pts, weight: q, d });
        }
    }
    data.faces.sort();
    data.faces.dedup();
    data.vertices = data.faces_of_dimension(0).map(|f| f.points[0].clone()).collect();
    data.vertices.sort();
    Ok(data)
}

/// The face `Δ(Q)` of minimizers of `Q·α` over the support and `d(Q)`.
pub fn face_of_weight(q: &[i64], nd: &NewtonData) -> Result<Face> {
    if q.len() != nd.nvars() {
        return Err(Error::DimensionMismatch(format!("weight of length {} for {} variables", q.len(), nd.nvars())));
    }
    if q.iter().any(|&x| x < 0) || q.iter().all(|&x| x == 0) {
        return Err(Error::InvalidWeights(format!("{q:?} is not a non-negative nonzero weight")));
    }
    let q = lattice::primitive(q);
    let points = minimizers(&nd.polynomial, &q);
    let d = support_min(&nd.polynomial, &q);
    Ok(Face { dimension: affine_dimension(&points), points, weight: q, d })
}

/// Primitive positive weight `P` and degree `d` with `P·α = d` on the whole support.
///
/// When the normal is not unique (one monomial, or collinear support in three
/// variables) the lexicographically smallest positive normal is returned.
pub fn weighted_homogeneity(p: &SparsePolynomial) -> Option<(Vec<i64>, i64)> {
    if p.is_zero() {
        return None;
    }
    let n = p.nvars();
    let pts: Vec<Vec<i64>> = p.support().iter().map(|e| to_i64(e)).collect();
    let diffs: Vec<Vec<i64>> = pts.iter().skip(1).map(|x| lattice::sub(x, &pts[0])).collect();
    let r = lattice::rank(&diffs);
    let q = if r + 1 == n {
        let normal = if n == 2 {
            let u = diffs.iter().find(|u| u.iter().any(|&x| x != 0))?;
            vec![-u[1], u[0]]
        } else {
            let mut found = None;
            'outer: for i in 0..diffs.len() {
                for j in i + 1..diffs.len() {
                    let c = lattice::cross(&diffs[i], &diffs[j]);
                    if c.iter().any(|&x| x != 0) {
                        found = Some(c);
                        break 'outer;
                    }
                }
            }
            found?
        };
        let q = nonnegative(normal)?;
        if q.contains(&0) {
            return None;
        }
        q
    } else if r + 1 < n {
        smallest_positive_normal(&diffs, n)?
    } else {
        return None;
    };
    let d = lattice::dot(&q, &pts[0]);
    Some((q, d))
}

fn smallest_positive_normal(diffs: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    const BOUND: i64 = 64;
    let ok = |q: &[i64]| diffs.iter().all(|u| lattice::dot(u, q) == 0);
    if n == 2 {
        return Some(vec![1, 1]).filter(|q| ok(q));
    }
    for a in 1..=BOUND {
        for b in 1..=BOUND {
            for c in 1..=BOUND {
                if ok(&[a, b, c]) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// The dual Newton diagram `Γ*(f)`: rays are the facet normals of `Γ₊(f)` and each
/// full-dimensional cell is the normal cone of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualFan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    /// Ray indices of each cell; in three dimensions in counter-clockwise cyclic order
    /// seen from inside the orthant.
    pub cells: Vec<Vec<usize>>,
}

impl DualFan {
    /// All cones of the fan (rays, walls and cells) as sorted ray-index lists.
    pub fn cones(&self) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for cell in &self.cells {
            let k = cell.len();
            for &r in cell {
                out.insert(vec![r]);
            }
            if self.dim == 3 {
                for i in 0..k {
                    let mut w = vec![cell[i], cell[(i + 1) % k]];
                    w.sort();
                    out.insert(w);
                }
            }
            let mut c = cell.clone();
            c.sort();
            out.insert(c);
        }
        let mut v: Vec<Vec<usize>> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    /// Two-dimensional walls `{i, j}` with `i < j`.
    pub fn walls(&self) -> Vec<(usize, usize)> {
        self.cones().into_iter().filter(|c| c.len() == 2).map(|c| (c[0], c[1])).collect()
    }

    /// Whether `q` lies in the closed cell.
    pub fn cell_contains(&self, cell: usize, q: &[i64]) -> bool {
        let c = &self.cells[cell];
        if self.dim == 2 {
            let (a, b) = (&self.rays[c[0]], &self.rays[c[1]]);
            return lattice::det2(a, q) >= 0 && lattice::det2(q, b) >= 0;
        }
        let k = c.len();
        (0..k).all(|i| lattice::det3(&self.rays[c[i]], &self.rays[c[(i + 1) % k]], q) >= 0)
    }
}

pub fn dual_newton_diagram(nd: &NewtonData) -> DualFan {
    let n = nd.nvars();
    let rays = nd.facet_normals.clone();
    let facet_points: Vec<BTreeSet<ExponentVector>> =
        rays.iter().map(|q| minimizers(&nd.polynomial, q).into_iter().collect()).collect();
    let mut cells = Vec::new();
    for v in &nd.vertices {
        let around: Vec<usize> = (0..rays.len()).filter(|&i| facet_points[i].contains(v)).collect();
        let cell = if n == 2 {
            let (a, b) = (around[0], around[1]);
            if lattice::det2(&rays[a], &rays[b]) > 0 {
                vec![a, b]
            } else {
                vec![b, a]
            }
        } else {
            cyclic_order(nd, &rays, &around)
        };
        cells.push(cell);
    }
    DualFan { dim: n, rays, cells }
}

fn cyclic_order(nd: &NewtonData, rays: &[Vec<i64>], around: &[usize]) -> Vec<usize> {
    let adjacent = |a: usize, b: usize| nd.polyhedral_dimension(&lattice::add(&rays[a], &rays[b])) == 1;
    let mut order = vec![around[0]];
    let mut used: BTreeSet<usize> = [around[0]].into_iter().collect();
    while order.len() < around.len() {
        let last = *order.last().unwrap();
        let next = around.iter().copied().find(|&c| !used.contains(&c) && adjacent(last, c));
        match next {
            Some(c) => {
                order.push(c);
                used.insert(c);
            }
            None => break,
        }
    }
    let centre = order.iter().fold(vec![0; 3], |acc, &i| lattice::add(&acc, &rays[i]));
    if lattice::det3(&rays[order[0]], &rays[order[1]], &centre) < 0 {
        order[1..].reverse();
    }
    order
}

/// `k!·V` for the region under `Γ(f^I)` in the coordinate subspace `coords`.
fn scaled_volume(p: &SparsePolynomial, coords: &[usize]) -> Result<i64> {
    let q = p.restrict_to(coords);
    if coords.len() == 1 {
        return Ok(q.terms().map(|(e, _)| e[0] as i64).min().unwrap_or(0));
    }
    let nd = newton_data(&q)?;
    let k = coords.len();
    let mut total = 0;
    for face in nd.faces_of_dimension(k - 1) {
        total += face.d * lattice_measures(face)?.normalized_volume;
    }
    Ok(total)
}

/// Kouchnirenko's Newton number `ν = Σ_k (−1)^{n−k} k!·Σ_{|I|=k} V_I`.
pub fn newton_number(nd: &NewtonData) -> Result<i64> {
    if let Some(i) = nd.convenient.iter().position(|&c| !c) {
        return Err(Error::NonConvenient(i + 1));
    }
    let n = nd.nvars();
    let sign = |k: usize| if (n - k).is_multiple_of(2) { 1 } else { -1 };
    let mut nu = sign(0);
    for k in 1..=n {
        for coords in lattice::subsets(n, k) {
            nu += sign(k) * scaled_volume(&nd.polynomial, &coords)?;
        }
    }
    Ok(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn nd(s: &str, n: usize) -> NewtonData {
        newton_data(&parse_polynomial(s, n).unwrap()).unwrap()
    }

    #[test]
    fn brieskorn_faces() {
        let d = nd("z1^2 + z2^3 + z3^7", 3);
        assert_eq!(d.vertices, vec![vec![0, 0, 7], vec![0, 3, 0], vec![2, 0, 0]]);
        assert_eq!(d.faces_of_dimension(1).count(), 3);
        let top: Vec<_> = d.faces_of_dimension(2).collect();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].weight, vec![21, 14, 6]);
        assert_eq!(top[0].d, 42);
    }

    #[test]
    fn interior_point_of_an_edge_is_not_a_vertex() {
        let d = nd("z1^2 + z1 z2 + z2^2", 2);
        assert_eq!(d.vertices, vec![vec![0, 2], vec![2, 0]]);
        let edge = d.faces_of_dimension(1).next().unwrap();
        assert_eq!(edge.points.len(), 3);
    }

    #[test]
    fn faces_of_weights() {
        let d = nd("z1^2 + z2^3 + z3^7", 3);
        let f = face_of_weight(&[1, 0, 0], &d).unwrap();
        assert_eq!((f.d, f.points.clone()), (0, vec![vec![0, 0, 7], vec![0, 3, 0]]));
        let f = face_of_weight(&[1, 1, 1], &d).unwrap();
        assert_eq!((f.d, f.dimension), (2, 0));
    }

    #[test]
    fn weighted_homogeneity_examples() {
        let p = |s: &str, n| parse_polynomial(s, n).unwrap();
        assert_eq!(weighted_homogeneity(&p("z1^2+z2^3+z3^7", 3)), Some((vec![21, 14, 6], 42)));
        assert_eq!(weighted_homogeneity(&p("z1^2+z2^3+z2^4", 2)), None);
        assert_eq!(weighted_homogeneity(&p("z1 z2", 2)), Some((vec![1, 1], 2)));
        assert_eq!(weighted_homogeneity(&p("z1 z2 z3", 3)), Some((vec![1, 1, 1], 3)));
        // collinear support in three variables: normals orthogonal to (2,-1,0)
        assert_eq!(weighted_homogeneity(&p("z1^2 + z2^4", 3)), Some((vec![2, 1, 1], 4)));
    }

    #[test]
    fn dual_fans() {
        let f = dual_newton_diagram(&nd("z1^2 + z2^3", 2));
        assert!(f.rays.contains(&vec![3, 2]));
        assert_eq!(f.cells.len(), 2);
        let f = dual_newton_diagram(&nd("z1^2 + z2^2 + z3^2", 3));
        assert_eq!(f.rays.len(), 4);
        assert_eq!(f.cells.len(), 3);
        assert!(f.cells.iter().all(|c| c.len() == 3));
        let f = dual_newton_diagram(&nd("z1 z2 z3", 3));
        assert_eq!(f.cells.len(), 1);
        assert_eq!(f.cones().last().unwrap(), &vec![0, 1, 2]);
    }

    #[test]
    fn newton_numbers_and_measures() {
        assert_eq!(newton_number(&nd("z1^2 + z2^3", 2)).unwrap(), 2);
        assert_eq!(newton_number(&nd("z1^3 + z2^3 + z3^3", 3)).unwrap(), 8);
        assert_eq!(newton_number(&nd("z1^2 + z2^2", 2)).unwrap(), 1);
        assert_eq!(newton_number(&nd("z1^2 + z2^3 + z3^7", 3)).unwrap(), 12);
        assert!(matches!(newton_number(&nd("z1^2 + z1 z2^3", 2)), Err(Error::NonConvenient(2))));
        let d = nd("z1^2 + z2^2 + z3^2", 3);
        let top = d.faces_of_dimension(2).next().unwrap();
        assert_eq!(lattice_measures(top).unwrap().normalized_volume, 4);
        let d = nd("z2^3 + z3^7 + z1^2", 3);
        let e = face_of_weight(&[1, 0, 0], &d).unwrap();
        assert_eq!(lattice_measures(&e).unwrap().lattice_length, 1);
        assert!(lattice_measures(&face_of_weight(&[1, 1, 1], &d).unwrap()).is_err());
    }
}
