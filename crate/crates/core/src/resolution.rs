//! Toric modification from a regular subdivision of the dual Newton diagram: chart
//! pullbacks, strict transforms, the coefficients `h_{s,j}` near a degenerate edge
//! and the algebraic certificate that the modification resolves the whole family.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::degeneracy::{degeneracy_report_for, edge_plane, DeformationFamily, EdgeFactorization};
use crate::error::{Error, Result};
use crate::fan::{chart_columns, refines, regularize, Cone, SimplicialSubdivision};
use crate::jacobian::{jacobian_ring_dimension, JacobianDimension};
use crate::lattice::{self, to_i64};
use crate::newton::{dual_newton_diagram, newton_data, weighted_homogeneity, Face, NewtonData};
use crate::poly::{rat, SparsePolynomial, UnivariatePolynomial};

/// Regular simplicial refinement of `Γ*(f)` in three variables.
///
/// Non-convenient polyhedra are accepted: their dual fan still covers the orthant.
pub fn admissible_subdivision(nd: &NewtonData) -> Result<SimplicialSubdivision> {
    if nd.nvars() != 3 {
        return Err(Error::UnsupportedDimension(nd.nvars()));
    }
    regularize(&dual_newton_diagram(nd))
}

/// One chart `z = y^M` of the modification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartData {
    /// Generators in chart-variable order.
    pub columns: Vec<Vec<i64>>,
    /// `matrix[i][v]`: exponent of `y_v` in `z_i`.
    pub matrix: Vec<Vec<i64>>,
    /// `d(Q_v)` for each chart variable.
    pub divisor_exponents: Vec<i64>,
    /// Pullback divided by `∏ y_v^{d(Q_v)}`; a family parameter stays the last variable.
    pub strict_transform: SparsePolynomial,
}

fn min_weight(p: &SparsePolynomial, q: &[i64]) -> i64 {
    p.terms().map(|(e, _)| lattice::dot(&to_i64(&e[..q.len()]), q)).min().unwrap_or(0)
}

fn pullback_with_columns(p: &SparsePolynomial, columns: Vec<Vec<i64>>) -> Result<ChartData> {
    let n = columns.len();
    let matrix: Vec<Vec<i64>> = (0..n).map(|i| columns.iter().map(|g| g[i]).collect()).collect();
    let m32: Vec<Vec<u32>> = matrix.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    let pulled = p.substitute_monomial_map(&m32)?;
    let divisor_exponents: Vec<i64> = columns.iter().map(|q| min_weight(p, q)).collect();
    let mut mono = vec![0u32; pulled.nvars()];
    for (slot, &d) in mono.iter_mut().zip(&divisor_exponents) {
        *slot = d as u32;
    }
    let strict_transform = pulled
        .divide_monomial(&mono)
        .ok_or_else(|| Error::Divisibility(format!("cone {columns:?}, exponents {divisor_exponents:?}")))?;
    let content = strict_transform.monomial_content();
    if let Some(v) = (0..n).find(|&v| content[v] > 0) {
        return Err(Error::Divisibility(format!("strict transform still divisible by y{} in cone {columns:?}", v + 1)));
    }
    Ok(ChartData { columns, matrix, divisor_exponents, strict_transform })
}

/// Pullback of `p` (three variables, optionally followed by a parameter) along the
/// chart of a regular 3-cone, with `distinguished` as the first chart variable.
pub fn chart_pullback(p: &SparsePolynomial, sigma: &Cone, distinguished: Option<&[i64]>) -> Result<ChartData> {
    if sigma.ambient_dim() != 3 || sigma.dim() != 3 {
        return Err(Error::InvalidCone("charts need a 3-dimensional cone".into()));
    }
    if !sigma.is_regular() {
        return Err(Error::InvalidCone(format!("cone of multiplicity {}", sigma.multiplicity())));
    }
    pullback_with_columns(p, chart_columns(sigma, distinguished))
}

/// Pullback of `F(s, z)`; the monomial factor does not depend on `s`.
pub fn family_chart_pullback(family: &DeformationFamily, sigma: &Cone, distinguished: Option<&[i64]>) -> Result<ChartData> {
    chart_pullback(&family.total(), sigma, distinguished)
}

/// `h_{s,j}(y₃) = base + s·direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCoefficient {
    pub j: u32,
    pub base: UnivariatePolynomial,
    pub direction: UnivariatePolynomial,
}

impl HCoefficient {
    pub fn at(&self, s: &crate::poly::Rational) -> UnivariatePolynomial {
        &self.base + &self.direction.scale(s)
    }
}

/// Coefficients of `y₂^j` in the strict transform on the chart with columns
/// `(P, e_axis, R)`, restricted to `y₁ = 0`. `sigma` must have `P` and `e_axis`
/// among its generators.
pub fn h_coefficients(family: &DeformationFamily, sigma: &Cone, p: &[i64], axis: usize) -> Result<Vec<HCoefficient>> {
    Ok(h_chart(family, sigma, p, axis)?.1)
}

fn h_chart(family: &DeformationFamily, sigma: &Cone, p: &[i64], axis: usize) -> Result<(ChartData, Vec<HCoefficient>)> {
    let e = lattice::unit(3, axis);
    if sigma.dim() != 3 || !sigma.has_generator(p) || !sigma.has_generator(&e) || !sigma.is_regular() {
        return Err(Error::ChartShape(format!("{:?} is not a regular cone over Cone({p:?}, {e:?})", sigma.generators())));
    }
    let r = sigma.generators().iter().find(|g| g.as_slice() != p && **g != e).unwrap().clone();
    let chart = pullback_with_columns(&family.total(), vec![p.to_vec(), e, r])?;
    let on_divisor = chart.strict_transform.specialize(0, &rat(0));
    let mut out = Vec::new();
    for (j, coeff) in on_divisor.coefficients_in(1) {
        let parts = coeff.coefficients_in(3);
        let uni = |k: u32| {
            parts.get(&k).map(|c| c.to_univariate(2).expect("only y3 remains")).unwrap_or_else(UnivariatePolynomial::zero)
        };
        if parts.keys().any(|&k| k > 1) {
            return Err(Error::ChartShape("family is not linear in s".into()));
        }
        out.push(HCoefficient { j, base: uni(0), direction: uni(1) });
    }
    Ok((chart, out))
}

/// A named pass/fail certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub certificate: String,
}

fn check(name: &str, passed: bool, certificate: String) -> Check {
    Check { name: name.into(), passed, certificate }
}

/// The two charts over `Cone(P, e_axis)` for one degenerate edge.
#[derive(Clone, Debug)]
pub struct DegenerateEdgeCharts {
    pub edge: Face,
    pub factorization: EdgeFactorization,
    pub axis: usize,
    pub sigma: Vec<Vec<i64>>,
    pub sigma_prime: Vec<Vec<i64>>,
    pub h_sigma: Vec<HCoefficient>,
    pub h_sigma_prime: Vec<HCoefficient>,
}

#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub subdivision: SimplicialSubdivision,
    pub charts: Vec<ChartData>,
    pub checks: Vec<Check>,
    pub degenerate_edge_charts: Vec<DegenerateEdgeCharts>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn strip(u: &UnivariatePolynomial) -> UnivariatePolynomial {
    u.shift_down(u.valuation())
}

fn multiple_part(u: &UnivariatePolynomial) -> Result<UnivariatePolynomial> {
    Ok(u.squarefree_decomposition()?
        .into_iter()
        .filter(|(_, m)| *m >= 2)
        .fold(UnivariatePolynomial::one(), |acc, (f, _)| &acc * &f))
}

/// `h_{s,j}` as a polynomial in `(y₁, y₂, y₃, s)` times `y₂^k`.
fn lift(c: &HCoefficient, k: u32) -> SparsePolynomial {
    let mut acc = SparsePolynomial::zero(4);
    for (s_pow, u) in [(0, &c.base), (1, &c.direction)] {
        for (i, x) in u.coefficients().iter().enumerate() {
            acc.add_term(vec![0, k, i as u32, s_pow], x.clone());
        }
    }
    acc
}

fn h_at(h: &[HCoefficient], j: u32) -> UnivariatePolynomial {
    h.iter().find(|c| c.j == j).map(|c| c.base.clone()).unwrap_or_else(UnivariatePolynomial::zero)
}

/// Certificates that the toric modification of `sub` resolves every member of the
/// family: isolatedness, the gcd conditions on degenerate edges, the subdivision
/// structure around them, face non-degeneracy and the chart factorizations.
pub fn verify_simultaneous_resolution(family: &DeformationFamily, sub: &SimplicialSubdivision) -> Result<ResolutionReport> {
    let f = &family.base;
    let (p, d) = weighted_homogeneity(f).ok_or(Error::NotWeightedHomogeneous)?;
    let nd = newton_data(f)?;
    if nd.nvars() != 3 {
        return Err(Error::UnsupportedDimension(nd.nvars()));
    }
    let mut checks = Vec::new();

    let mu = jacobian_ring_dimension(f);
    checks.push(check("a:isolated", mu != JacobianDimension::Infinite, format!("Jacobian ring dimension {mu}")));

    let report = degeneracy_report_for(&nd)?;
    let mut degenerate: Vec<(Face, EdgeFactorization, usize)> = Vec::new();
    let mut other_degenerate = Vec::new();
    for face in report.degenerate_faces() {
        match edge_plane(face, 3) {
            Some((j, k)) => {
                let fac = report.degenerate_edges.iter().find(|e| e.plane == (j, k)).cloned();
                match fac {
                    Some(fac) => degenerate.push((face.clone(), fac, 3 - j - k)),
                    None => other_degenerate.push(face.clone()),
                }
            }
            None => other_degenerate.push(face.clone()),
        }
    }
    for (_, fac, _) in &degenerate {
        let (j, k) = fac.plane;
        let g = lattice::gcd(p[j], p[k]);
        checks.push(check(
            &format!("b:coprime-weights[z{},z{}]", j + 1, k + 1),
            g == 1,
            format!("gcd(p{}, p{}) = gcd({}, {}) = {g}", j + 1, k + 1, p[j], p[k]),
        ));
    }

    let fan = dual_newton_diagram(&nd);
    let irregular: Vec<Vec<usize>> =
        sub.cones.iter().filter(|c| !sub.cone(c).is_regular()).cloned().collect();
    checks.push(check(
        "c:regular-refinement",
        irregular.is_empty() && refines(sub, &fan),
        format!("{} maximal cones, irregular {irregular:?}, refines Γ*: {}", sub.cones.len(), refines(sub, &fan)),
    ));

    let mut edge_charts = Vec::new();
    for (face, fac, axis) in &degenerate {
        let e = lattice::unit(3, *axis);
        let ip = sub.vertex_index(&p);
        let ie = sub.vertex_index(&e);
        let over: Vec<Vec<usize>> = match (ip, ie) {
            (Some(a), Some(b)) => sub.cones.iter().filter(|c| c.contains(&a) && c.contains(&b)).cloned().collect(),
            _ => Vec::new(),
        };
        let name = format!("c:two-cones-over[P,e{}]", axis + 1);
        checks.push(check(&name, over.len() == 2, format!("{} maximal cones contain Cone({p:?}, {e:?})", over.len())));
        if over.len() != 2 {
            continue;
        }
        let (sigma, sigma_prime) = (sub.cone(&over[0]), sub.cone(&over[1]));
        let (chart_s, h_s) = h_chart(family, &sigma, &p, *axis)?;
        let (chart_t, h_t) = h_chart(family, &sigma_prime, &p, *axis)?;
        let q = fac.q.clone();
        let q_rev = q.reversed().monic();
        let m_edge = fac.multiple_part();
        let m_edge_rev = m_edge.reversed().monic();
        let mut any_j_ok = true;
        for (label, chart, h) in [("sigma", &chart_s, &h_s), ("sigma'", &chart_t, &h_t)] {
            let h00 = strip(&h_at(h, 0));
            let h00m = if h00.is_zero() { h00.clone() } else { h00.monic() };
            checks.push(check(
                &format!("h00-matches-edge[{label}]"),
                h00m == q || h00m == q_rev,
                format!("h_(0,0) = {} on columns {:?}; edge q = {q}", h_at(h, 0), chart.columns),
            ));
            let m = multiple_part(&h00)?;
            let matches_edge = m == m_edge || m == m_edge_rev;
            let h01 = h_at(h, 1);
            let g = m.gcd(&h01);
            checks.push(check(
                &format!("d:gcd(m,h01)[{label}]"),
                matches_edge && g.degree() == Some(0),
                format!("m = {m}, h_(0,1) = {h01}, gcd = {g}"),
            ));
            let mut all = m.clone();
            for c in h.iter().filter(|c| c.j >= 1) {
                all = all.gcd(&c.base);
            }
            any_j_ok &= all.degree() == Some(0);
            let on_divisor = chart.strict_transform.filter_terms(|e| e[0] == 0 && e[1] <= 1);
            let rebuilt = h
                .iter()
                .filter(|c| c.j <= 1)
                .fold(SparsePolynomial::zero(4), |acc, c| &acc + &lift(c, c.j));
            let derivative =
                chart.strict_transform.partial_derivative(1)?.filter_terms(|e| e[0] == 0 && e[1] == 0);
            let h1 = h.iter().find(|c| c.j == 1).map(|c| lift(c, 0)).unwrap_or_else(|| SparsePolynomial::zero(4));
            checks.push(check(
                &format!("g:linear-in-y2[{label}]"),
                on_divisor == rebuilt && derivative == h1,
                format!("F~ = h_(s,0) + y2*h_(s,1) mod (y1, y2^2): {}", on_divisor == rebuilt),
            ));
        }
        checks.push(check(
            &format!("d':no-common-zero-over-j[P,e{}]", axis + 1),
            any_j_ok,
            "gcd of m with all h_(0,j), j >= 1".into(),
        ));
        let g01 = f.coefficients_in(*axis).get(&1).cloned().unwrap_or_else(|| SparsePolynomial::zero(3));
        let (j, k) = fac.plane;
        let at = |zj: i64, zk: i64| {
            let mut pt = vec![rat(0); 3];
            pt[j] = rat(zj);
            pt[k] = rat(zk);
            g01.evaluate(&pt)
        };
        let ok_a = fac.a < 2 || !at(0, 1).is_zero();
        let ok_b = fac.b < 2 || !at(1, 0).is_zero();
        checks.push(check(
            &format!("e:axis-terms[P,e{}]", axis + 1),
            ok_a && ok_b,
            format!("a = {}, b = {}, g01(0,1) = {}, g01(1,0) = {}", fac.a, fac.b, at(0, 1), at(1, 0)),
        ));
        edge_charts.push(DegenerateEdgeCharts {
            edge: face.clone(),
            factorization: fac.clone(),
            axis: *axis,
            sigma: chart_s.columns.clone(),
            sigma_prime: chart_t.columns.clone(),
            h_sigma: h_s,
            h_sigma_prime: h_t,
        });
    }

    if edge_charts.len() > 1 {
        // each degenerate edge is certified on its own chart pair; a shared chart is flagged
        let key = |cols: &[Vec<i64>]| {
            let mut c = cols.to_vec();
            c.sort();
            c
        };
        let mut seen: BTreeMap<Vec<Vec<i64>>, usize> = BTreeMap::new();
        let mut shared = Vec::new();
        for (i, e) in edge_charts.iter().enumerate() {
            for cols in [&e.sigma, &e.sigma_prime] {
                if let Some(&other) = seen.get(&key(cols)) {
                    if other != i {
                        shared.push(cols.clone());
                    }
                }
                seen.insert(key(cols), i);
            }
        }
        checks.push(check(
            "multi-edge:disjoint-charts",
            shared.is_empty(),
            format!("{} degenerate edges, charts shared: {shared:?}", edge_charts.len()),
        ));
    }

    checks.push(check(
        "f:base-faces",
        other_degenerate.is_empty(),
        format!("{} degenerate faces outside coordinate-plane edges", other_degenerate.len()),
    ));
    let mut sample_failures = Vec::new();
    for (s, fs) in &family.samples {
        let rep = degeneracy_report_for(&newton_data(fs)?)?;
        if !rep.is_nondegenerate() {
            sample_failures.push(s.to_string());
        }
    }
    checks.push(check(
        "f:sample-faces",
        sample_failures.is_empty() && !family.samples.is_empty(),
        format!("{} samples, degenerate at {sample_failures:?}", family.samples.len()),
    ));

    let mut charts = Vec::new();
    let mut chart_errors = Vec::new();
    let mut exponent_mismatch = Vec::new();
    for cone in sub.maximal_cones() {
        match family_chart_pullback(family, &cone, Some(&p)) {
            Ok(chart) => {
                for (q, &e) in chart.columns.iter().zip(&chart.divisor_exponents) {
                    if nd.d(q) != e || (q == &p && e != d) {
                        exponent_mismatch.push(q.clone());
                    }
                }
                charts.push(chart);
            }
            Err(err) => chart_errors.push(format!("{:?}: {err}", cone.generators())),
        }
    }
    checks.push(check(
        "chart-factorization",
        chart_errors.is_empty() && exponent_mismatch.is_empty(),
        format!("{} charts, errors {chart_errors:?}, exponent mismatches {exponent_mismatch:?}", charts.len()),
    ));

    Ok(ResolutionReport { subdivision: sub.clone(), charts, checks, degenerate_edge_charts: edge_charts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::generic_deformation;
    use crate::poly::parse_polynomial;

    fn nd(s: &str) -> NewtonData {
        newton_data(&parse_polynomial(s, 3).unwrap()).unwrap()
    }

    #[test]
    fn node_subdivision() {
        let sub = admissible_subdivision(&nd("z1^2 + z2^2 + z3^2")).unwrap();
        assert_eq!(sub.vertices, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 1]]);
        assert_eq!(sub.cones.len(), 3);
        assert!(sub.maximal_cones().iter().all(|c| c.is_regular()));
    }

    #[test]
    fn inserted_vertices_are_interior() {
        let sub = admissible_subdivision(&nd("z1^2 + z2^3 + z3^7")).unwrap();
        for v in &sub.vertices {
            let axis = v.iter().filter(|&&x| x == 0).count() == 2;
            assert!(axis || v.iter().all(|&x| x > 0), "{v:?}");
        }
    }

    #[test]
    fn node_chart() {
        let f = parse_polynomial("z1^2 + z2^2 + z3^2", 3).unwrap();
        let sigma = Cone::new(vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let chart = chart_pullback(&f, &sigma, Some(&[1, 1, 1])).unwrap();
        assert_eq!(chart.divisor_exponents, vec![2, 0, 0]);
        assert_eq!(chart.strict_transform, parse_polynomial("z2^2 + z3^2 + 1", 3).unwrap());
    }

    #[test]
    fn weighted_chart_exponent() {
        let f = parse_polynomial("z1^2 + z2^3 + z3^7", 3).unwrap();
        let sub = admissible_subdivision(&newton_data(&f).unwrap()).unwrap();
        let p = [21, 14, 6];
        for c in sub.maximal_cones().iter().filter(|c| c.has_generator(&p)) {
            let chart = chart_pullback(&f, c, Some(&p)).unwrap();
            assert_eq!(chart.columns[0], p.to_vec());
            assert_eq!(chart.divisor_exponents[0], 42);
        }
    }

    #[test]
    fn nondegenerate_family_passes() {
        let f = parse_polynomial("z1^2 + z2^3 + z3^7", 3).unwrap();
        let fam = generic_deformation(&f, 1).unwrap();
        let sub = admissible_subdivision(&newton_data(&f).unwrap()).unwrap();
        let rep = verify_simultaneous_resolution(&fam, &sub).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.degenerate_edge_charts.is_empty());
    }

    #[test]
    fn h_coefficients_of_flagship() {
        let f = parse_polynomial("z1^4 + z2^3 z3 - 2 z2^2 z3^2 + z2 z3^3 + z1^2 z2 z3", 3).unwrap();
        let sub = admissible_subdivision(&newton_data(&f).unwrap()).unwrap();
        let fam = generic_deformation(&f, 1).unwrap();
        let e1 = [1, 0, 0];
        let (a, b) = (sub.vertex_index(&[1, 1, 1]).unwrap(), sub.vertex_index(&e1).unwrap());
        let over: Vec<&Vec<usize>> = sub.cones.iter().filter(|c| c.contains(&a) && c.contains(&b)).collect();
        assert_eq!(over.len(), 2);
        let h = h_coefficients(&fam, &sub.cone(over[0]), &[1, 1, 1], 0).unwrap();
        let js: Vec<u32> = h.iter().filter(|c| !c.base.is_zero()).map(|c| c.j).collect();
        assert_eq!(js, vec![0, 2, 4]);
        let h00 = strip(&h[0].base).monic();
        let sq = h00.squarefree_decomposition().unwrap();
        assert_eq!(sq.iter().filter(|(_, m)| *m == 2).map(|(f, _)| f.clone()).collect::<Vec<_>>(),
            vec![UnivariatePolynomial::from_i64(&[-1, 1])]);
    }

    #[test]
    fn non_isolated_family_fails_a() {
        let f = parse_polynomial("z1^4 + z2^3 z3 - 2 z2^2 z3^2 + z2 z3^3 + z1^2 z2 z3", 3).unwrap();
        let fam = generic_deformation(&f, 1).unwrap();
        let sub = admissible_subdivision(&newton_data(&f).unwrap()).unwrap();
        let rep = verify_simultaneous_resolution(&fam, &sub).unwrap();
        assert!(!rep.passed());
        assert!(rep.checks.iter().any(|c| c.name == "a:isolated" && !c.passed));
    }

    #[test]
    fn shared_charts_between_degenerate_edges_are_flagged() {
        // (z1^2 - z2^2)^2 and (z2^2 - z3^2)^2 on two edges; Cone(P, e1, e3) lies over both
        let f = parse_polynomial("z1^4 - 2 z1^2 z2^2 + z2^4 - 2 z2^2 z3^2 + z3^4", 3).unwrap();
        let fam = generic_deformation(&f, 1).unwrap();
        let sub = admissible_subdivision(&newton_data(&f).unwrap()).unwrap();
        let rep = verify_simultaneous_resolution(&fam, &sub).unwrap();
        assert_eq!(rep.degenerate_edge_charts.len(), 2);
        let multi = rep.checks.iter().find(|c| c.name == "multi-edge:disjoint-charts").unwrap();
        assert!(!multi.passed, "{}", multi.certificate);
    }
}
