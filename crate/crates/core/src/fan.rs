//! Simplicial integer cones and regular subdivisions of fans in dimensions 2 and 3.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice;
use crate::newton::DualFan;

/// A simplicial cone spanned by primitive, linearly independent generators kept in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cone {
    generators: Vec<Vec<i64>>,
}

impl Cone {
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidCone("no generators".into()));
        }
        let n = generators[0].len();
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::InvalidCone("generators of different lengths".into()));
        }
        let mut gens: Vec<Vec<i64>> = generators.iter().map(|g| lattice::primitive(g)).collect();
        if lattice::rank(&gens) != gens.len() {
            return Err(Error::InvalidCone(format!("dependent generators {generators:?}")));
        }
        gens.sort();
        Ok(Cone { generators: gens })
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators[0].len()
    }

    pub fn multiplicity(&self) -> i64 {
        multiplicity(self)
    }

    pub fn is_regular(&self) -> bool {
        self.multiplicity() == 1
    }

    pub fn has_generator(&self, q: &[i64]) -> bool {
        self.generators.iter().any(|g| g.as_slice() == q)
    }

    /// Whether `q` lies in the closed cone (full-dimensional cones only).
    pub fn contains(&self, q: &[i64]) -> bool {
        match coefficients(&self.generators, q) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }
}

/// Coefficients of `q` in a full-dimensional basis, scaled by `|det|`.
fn coefficients(gens: &[Vec<i64>], q: &[i64]) -> Option<Vec<i64>> {
    let n = q.len();
    if gens.len() != n {
        return None;
    }
    let det = lattice::small_det(gens);
    let sign = det.signum();
    let c = (0..n)
        .map(|i| {
            let mut m = gens.to_vec();
            m[i] = q.to_vec();
            lattice::small_det(&m) * sign
        })
        .collect();
    Some(c)
}

/// Index of the generated sublattice in the lattice of the span: the gcd of the
/// maximal minors.
pub fn multiplicity(c: &Cone) -> i64 {
    lattice::minors_gcd(&c.generators)
}

/// Hirzebruch–Jung rays strictly between `a` and `b`, ordered from `a` to `b`.
pub fn hirzebruch_jung(a: &[i64], b: &[i64]) -> Result<Vec<Vec<i64>>> {
    let a = lattice::primitive(a);
    let b = lattice::primitive(b);
    let m = lattice::minors_gcd(&[a.clone(), b.clone()]);
    if m == 0 {
        return Err(Error::InvalidCone(format!("{a:?} and {b:?} are dependent")));
    }
    if m == 1 {
        return Ok(Vec::new());
    }
    let k = (0..m)
        .find(|k| b.iter().zip(&a).all(|(bi, ai)| (bi - k * ai) % m == 0))
        .expect("span lattice basis exists");
    let w: Vec<i64> = b.iter().zip(&a).map(|(bi, ai)| (bi - k * ai) / m).collect();
    let to_ambient = |(x, y): (i64, i64)| -> Vec<i64> { a.iter().zip(&w).map(|(ai, wi)| x * ai + y * wi).collect() };
    let rays = hj_planar((1, 0), (k, m));
    Ok(rays.into_iter().map(to_ambient).collect())
}

/// Planar version with `det(a, b) > 0`.
fn hj_planar(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
    let det = |u: (i64, i64), v: (i64, i64)| u.0 * v.1 - u.1 * v.0;
    let mut out = Vec::new();
    let mut cur = a;
    while det(cur, b) > 1 {
        let (g, s, t) = lattice::ext_gcd(cur.0, cur.1);
        debug_assert_eq!(g, 1);
        // det(cur, (-t, s)) = cur.0*s + cur.1*t = 1
        let c0 = (-t, s);
        let dab = det(cur, b);
        let num = -det(c0, b);
        let j = num.div_euclid(dab) + if num.rem_euclid(dab) != 0 { 1 } else { 0 };
        let c = (c0.0 + j * cur.0, c0.1 + j * cur.1);
        out.push(c);
        cur = c;
    }
    out
}

/// Where a vertex of a subdivision came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Original,
    Inserted,
}

/// A simplicial fan given by its vertices and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialSubdivision {
    pub dim: usize,
    /// Primitive rays, ascending.
    pub vertices: Vec<Vec<i64>>,
    /// Maximal cones as ascending vertex-index lists, ascending.
    pub cones: Vec<Vec<usize>>,
    pub provenance: Vec<Provenance>,
}

impl SimplicialSubdivision {
    fn build(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<Vec<i64>>>, original: &BTreeSet<Vec<i64>>) -> Self {
        let mut vertices = rays;
        vertices.sort();
        vertices.dedup();
        let index: BTreeMap<&Vec<i64>, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut idx_cones: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|g| index[g]).collect();
                v.sort();
                v
            })
            .collect();
        idx_cones.sort();
        idx_cones.dedup();
        let provenance = vertices
            .iter()
            .map(|v| if original.contains(v) { Provenance::Original } else { Provenance::Inserted })
            .collect();
        SimplicialSubdivision { dim, vertices, cones: idx_cones, provenance }
    }

    pub fn vertex_index(&self, q: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == q)
    }

    pub fn cone(&self, indices: &[usize]) -> Cone {
        Cone::new(indices.iter().map(|&i| self.vertices[i].clone()).collect()).expect("subdivision cones are simplicial")
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones.iter().map(|c| self.cone(c)).collect()
    }

    /// Every cone of the fan (all faces of maximal cones), by dimension then indices.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.cones {
            for k in 1..=c.len() {
                for s in lattice::subsets(c.len(), k) {
                    out.insert(s.iter().map(|&i| c[i]).collect());
                }
            }
        }
        let mut v: Vec<Vec<usize>> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    /// Maximal cones containing `q`.
    pub fn locate(&self, q: &[i64]) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cone(&self.cones[i]).contains(q)).collect()
    }
}

/// Cones containing a vertex and the vertices adjacent to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub cones: Vec<Vec<usize>>,
    pub adjacent: Vec<usize>,
}

pub fn incidence(sub: &SimplicialSubdivision, q: &[i64]) -> Result<Incidence> {
    let v = sub.vertex_index(q).ok_or_else(|| Error::UnknownVertex(q.to_vec()))?;
    let cones: Vec<Vec<usize>> = sub.all_cones().into_iter().filter(|c| c.contains(&v)).collect();
    let adjacent: BTreeSet<usize> =
        cones.iter().filter(|c| c.len() == 2).flat_map(|c| c.iter().copied()).filter(|&i| i != v).collect();
    Ok(Incidence { cones, adjacent: adjacent.into_iter().collect() })
}

/// Regular simplicial refinement of a fan covering the positive orthant.
pub fn regularize(fan: &DualFan) -> Result<SimplicialSubdivision> {
    let original: BTreeSet<Vec<i64>> = fan.rays.iter().cloned().collect();
    if fan.cells.is_empty() {
        return Err(Error::InvalidFan("no cells".into()));
    }
    match fan.dim {
        2 => regularize_2d(fan, &original),
        3 => regularize_3d(fan, &original),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn regularize_2d(fan: &DualFan, original: &BTreeSet<Vec<i64>>) -> Result<SimplicialSubdivision> {
    let mut rays: Vec<Vec<i64>> = fan.rays.clone();
    let mut cones = Vec::new();
    for cell in &fan.cells {
        if cell.len() != 2 {
            return Err(Error::InvalidFan(format!("planar cell with {} rays", cell.len())));
        }
        let (a, b) = (&fan.rays[cell[0]], &fan.rays[cell[1]]);
        let mut chain = vec![a.clone()];
        chain.extend(hirzebruch_jung(a, b)?);
        chain.push(b.clone());
        for w in chain.windows(2) {
            cones.push(vec![w[0].clone(), w[1].clone()]);
        }
        rays.extend(chain);
    }
    Ok(SimplicialSubdivision::build(2, rays, cones, original))
}

fn regularize_3d(fan: &DualFan, original: &BTreeSet<Vec<i64>>) -> Result<SimplicialSubdivision> {
    let mut wall_rays: BTreeMap<(usize, usize), Vec<Vec<i64>>> = BTreeMap::new();
    for (i, j) in fan.walls() {
        wall_rays.insert((i, j), hirzebruch_jung(&fan.rays[i], &fan.rays[j])?);
    }
    let mut cones: Vec<Vec<Vec<i64>>> = Vec::new();
    for cell in &fan.cells {
        let k = cell.len();
        if k < 3 {
            return Err(Error::InvalidFan(format!("cell with {k} rays")));
        }
        let mut polygon = Vec::new();
        for i in 0..k {
            let (a, b) = (cell[i], cell[(i + 1) % k]);
            polygon.push(fan.rays[a].clone());
            let inner = if a < b {
                wall_rays[&(a, b)].clone()
            } else {
                let mut v = wall_rays[&(b, a)].clone();
                v.reverse();
                v
            };
            polygon.extend(inner);
        }
        cones.extend(ear_clip(polygon)?);
    }
    while let Some(pos) = worst_cone(&cones) {
        let gens = cones[pos].clone();
        let t = minimal_interior_point(&gens);
        let mut next = Vec::with_capacity(cones.len() + 2);
        for c in cones {
            match coefficients(&c, &t) {
                Some(coef) if coef.iter().all(|&x| x >= 0) => {
                    for i in 0..3 {
                        if coef[i] > 0 {
                            let mut nc = c.clone();
                            nc[i] = t.clone();
                            nc.sort();
                            next.push(nc);
                        }
                    }
                }
                _ => next.push(c),
            }
        }
        cones = next;
    }
    let rays: Vec<Vec<i64>> = cones.iter().flatten().cloned().collect();
    Ok(SimplicialSubdivision::build(3, rays, cones, original))
}

/// Position of the lexicographically smallest non-regular cone.
fn worst_cone(cones: &[Vec<Vec<i64>>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in cones.iter().enumerate() {
        if lattice::small_det(c).abs() > 1 && best.is_none_or(|b| c < &cones[b]) {
            best = Some(i);
        }
    }
    best
}

/// Nonzero lattice point `Σ t_i g_i`, `0 ≤ t_i < 1`, with minimal `Σ t_i`
/// (ties broken lexicographically on the `t_i`).
fn minimal_interior_point(gens: &[Vec<i64>]) -> Vec<i64> {
    let det = lattice::small_det(gens);
    let m = det.abs();
    let step = |x: &[i64]| -> Vec<i64> {
        coefficients(gens, x).expect("full-dimensional").iter().map(|c| c.rem_euclid(m)).collect()
    };
    let generators: Vec<Vec<i64>> = (0..3).map(|i| step(&lattice::unit(3, i))).collect();
    let mut group: BTreeSet<Vec<i64>> = BTreeSet::new();
    let zero = vec![0i64; 3];
    group.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(c) = queue.pop_front() {
        for g in &generators {
            let nc: Vec<i64> = c.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(m)).collect();
            if group.insert(nc.clone()) {
                queue.push_back(nc);
            }
        }
    }
    let best = group
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .min_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then(a.cmp(b)))
        .expect("non-regular cone has interior points");
    (0..3).map(|j| (0..3).map(|i| best[i] * gens[i][j]).sum::<i64>() / m).collect()
}

/// Triangulate a convex cone given by its boundary rays in counter-clockwise order.
/// Each step clips the lexicographically smallest strictly convex corner whose
/// triangle holds no other boundary ray.
fn ear_clip(mut polygon: Vec<Vec<i64>>) -> Result<Vec<Vec<Vec<i64>>>> {
    let mut out = Vec::new();
    while polygon.len() > 3 {
        let k = polygon.len();
        let mut best: Option<usize> = None;
        for i in 0..k {
            let (u, v, w) = (&polygon[(i + k - 1) % k], &polygon[i], &polygon[(i + 1) % k]);
            if lattice::det3(u, v, w) <= 0 {
                continue;
            }
            let tri = [u.clone(), v.clone(), w.clone()];
            let blocked = (0..k)
                .filter(|&j| j != i && j != (i + k - 1) % k && j != (i + 1) % k)
                .any(|j| coefficients(&tri, &polygon[j]).is_some_and(|c| c.iter().all(|&x| x >= 0)));
            if blocked {
                continue;
            }
            if best.is_none_or(|b| polygon[i] < polygon[b]) {
                best = Some(i);
            }
        }
        let i = best.ok_or_else(|| Error::InvalidFan("cell is not a convex cone".into()))?;
        let k = polygon.len();
        let mut tri = vec![polygon[(i + k - 1) % k].clone(), polygon[i].clone(), polygon[(i + 1) % k].clone()];
        tri.sort();
        out.push(tri);
        polygon.remove(i);
    }
    if lattice::det3(&polygon[0], &polygon[1], &polygon[2]) == 0 {
        return Err(Error::InvalidFan("flat cell".into()));
    }
    polygon.sort();
    out.push(polygon);
    Ok(out)
}

/// Unimodular chart matrix whose columns are the generators of `c`; the
/// distinguished weight comes first, then coordinate vectors by index, then the rest
/// in lexicographic order. Rows are indexed by the original variables.
pub fn chart_matrix(c: &Cone, distinguished: Option<&[i64]>) -> Result<Vec<Vec<i64>>> {
    let n = c.ambient_dim();
    if c.dim() != n {
        return Err(Error::InvalidCone(format!("chart needs a {n}-dimensional cone")));
    }
    if !c.is_regular() {
        return Err(Error::InvalidCone(format!("cone of multiplicity {}", c.multiplicity())));
    }
    let cols = chart_columns(c, distinguished);
    Ok((0..n).map(|i| cols.iter().map(|g| g[i]).collect()).collect())
}

/// Generators in chart order (see [`chart_matrix`]).
pub fn chart_columns(c: &Cone, distinguished: Option<&[i64]>) -> Vec<Vec<i64>> {
    let n = c.ambient_dim();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    if let Some(p) = distinguished.filter(|p| c.has_generator(p)) {
        cols.push(p.to_vec());
    }
    for i in 0..n {
        let e = lattice::unit(n, i);
        if c.has_generator(&e) && !cols.contains(&e) {
            cols.push(e);
        }
    }
    for g in c.generators() {
        if !cols.contains(g) {
            cols.push(g.clone());
        }
    }
    cols
}

/// Whether every maximal cone of `sub` lies in some cell of `fan`.
pub fn refines(sub: &SimplicialSubdivision, fan: &DualFan) -> bool {
    sub.cones.iter().all(|c| {
        (0..fan.cells.len()).any(|cell| c.iter().all(|&v| fan.cell_contains(cell, &sub.vertices[v])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{dual_newton_diagram, newton_data};
    use crate::poly::parse_polynomial;

    fn fan(s: &str, n: usize) -> DualFan {
        dual_newton_diagram(&newton_data(&parse_polynomial(s, n).unwrap()).unwrap())
    }

    #[test]
    fn multiplicities() {
        let c = |g: Vec<Vec<i64>>| Cone::new(g).unwrap().multiplicity();
        assert_eq!(c(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), 1);
        assert_eq!(c(vec![vec![1, 0], vec![1, 2]]), 2);
        assert_eq!(c(vec![vec![21, 14, 6], vec![1, 0, 0]]), 2);
        assert!(Cone::new(vec![vec![1, 2, 3], vec![2, 4, 6]]).is_err());
    }

    #[test]
    fn hj_small_cases() {
        assert_eq!(hirzebruch_jung(&[1, 0], &[1, 2]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(hirzebruch_jung(&[1, 0], &[3, 2]).unwrap(), vec![vec![2, 1]]);
        assert_eq!(hirzebruch_jung(&[1, 0], &[1, 3]).unwrap(), vec![vec![1, 1], vec![1, 2]]);
        assert!(hirzebruch_jung(&[1, 0, 0], &[0, 1, 0]).unwrap().is_empty());
    }

    #[test]
    fn cusp_fan_regularization() {
        let sub = regularize(&fan("z1^2 + z2^3", 2)).unwrap();
        assert_eq!(sub.vertices, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 2]]);
        assert!(sub.maximal_cones().iter().all(Cone::is_regular));
    }

    #[test]
    fn regular_fans_are_unchanged() {
        let f = fan("z1^2 + z2^2 + z3^2", 3);
        let sub = regularize(&f).unwrap();
        assert_eq!(sub.vertices.len(), 4);
        assert_eq!(sub.cones.len(), 3);
        let f = fan("z1 + z2 + z3", 3);
        let sub = regularize(&f).unwrap();
        assert_eq!(sub.vertices.len(), 4);
    }

    #[test]
    fn brieskorn_fan_is_regular_and_refines() {
        let f = fan("z1^2 + z2^3 + z3^7", 3);
        let sub = regularize(&f).unwrap();
        assert!(sub.maximal_cones().iter().all(Cone::is_regular));
        assert!(refines(&sub, &f));
        assert!(sub.vertex_index(&[21, 14, 6]).is_some());
    }

    #[test]
    fn incidence_of_the_node() {
        let sub = regularize(&fan("z1^2 + z2^2 + z3^2", 3)).unwrap();
        let inc = incidence(&sub, &[1, 1, 1]).unwrap();
        assert_eq!(inc.cones.len(), 7);
        assert_eq!(inc.adjacent.len(), 3);
        let inc = incidence(&sub, &[1, 0, 0]).unwrap();
        assert_eq!(inc.adjacent.len(), 3);
        assert!(incidence(&sub, &[5, 5, 4]).is_err());
    }

    #[test]
    fn chart_matrix_layout() {
        let id = chart_matrix(&Cone::new(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap(), None).unwrap();
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let p = vec![6, 4, 3];
        let c = Cone::new(vec![vec![2, 3, 2], vec![1, 0, 0], p.clone()]).unwrap();
        let m = chart_matrix(&c, Some(&p)).unwrap();
        assert_eq!(m, vec![vec![6, 1, 2], vec![4, 0, 3], vec![3, 0, 2]]);
        // p3 r2 - p2 r3 = 6*2 - 14*1 = -2 for P = (21,14,6), R = (3,2,1): not a chart
        let p = vec![21, 14, 6];
        let bad = Cone::new(vec![p.clone(), vec![1, 0, 0], vec![3, 2, 1]]).unwrap();
        assert!(chart_matrix(&bad, Some(&p)).is_err());
    }
}
