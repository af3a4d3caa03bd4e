//! Builds the JSON report for each command. Keys of every object are sorted, and
//! divisors and zeta factors are lists of `[a, value]` pairs ascending in `a`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use singwb_core::degeneracy::{degeneracy_report_for, generic_deformation, EdgeFactorization};
use singwb_core::jacobian::{jacobian_ring_dimension, JacobianDimension};
use singwb_core::newton::{newton_data, newton_number, weighted_homogeneity, NewtonData};
use singwb_core::poly::{parse_polynomial, SparsePolynomial};
use singwb_core::resolution::{admissible_subdivision, verify_simultaneous_resolution, HCoefficient};
use singwb_core::zeta::{
    acampo_zeta, divisor_size, milnor_orlik_divisor, mu_from_formula, zeta_via_deformation, GroupRingDivisor,
    ZetaFactored,
};
use singwb_core::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize)]
pub struct Request {
    pub command: String,
    pub polynomial: String,
    pub vars: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub input: Request,
    pub payload: BTreeMap<String, Value>,
    /// Exit code 0 exactly when all of these hold.
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Default)]
struct Section {
    payload: BTreeMap<String, Value>,
    verdicts: BTreeMap<String, bool>,
}

impl Section {
    fn put(&mut self, key: &str, value: Value) {
        self.payload.insert(key.to_string(), value);
    }

    fn verdict(&mut self, key: &str, value: bool) {
        self.verdicts.insert(key.to_string(), value);
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::NegativeExponent { .. }
            | Error::UnknownVariable { .. }
            | Error::VariableCount { .. }
            | Error::UnsupportedDimension(_)
            | Error::ZeroPolynomial
            | Error::ConstantTerm
            | Error::NotWeightedHomogeneous
    )
}

/// Report and exit code: 0 when every verdict holds, 1 on a certified failure,
/// 2 on invalid input.
pub fn run(request: &Request) -> (Report, u8) {
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        input: request.clone(),
        payload: BTreeMap::new(),
        verdicts: BTreeMap::new(),
        error: None,
    };
    let outcome = parse_polynomial(&request.polynomial, request.vars).and_then(|f| {
        newton_data(&f)?;
        let n = request.vars;
        match request.command.as_str() {
            "analyze" => analyze(&f),
            "resolve" => resolve(&f, n, request.seed),
            "zeta" => zeta(&f, n, request.seed),
            "mu" => mu(&f),
            "verify" => verify(&f, n, request.seed),
            other => unreachable!("unknown command {other}"),
        }
    });
    match outcome {
        Ok(section) => {
            report.payload = section.payload;
            report.verdicts = section.verdicts;
            let code = if report.verdicts.values().all(|&v| v) { 0 } else { 1 };
            (report, code)
        }
        Err(e) => {
            let input = is_input_error(&e);
            report.error = Some(ErrorInfo { kind: if input { "input" } else { "certificate" }, message: e.to_string() });
            (report, if input { 2 } else { 1 })
        }
    }
}

fn pairs(d: &GroupRingDivisor) -> Value {
    match d.integer_pairs() {
        Ok(p) => json!(p),
        Err(_) => json!(d.coefficients().iter().map(|(a, c)| json!([a, c.to_string()])).collect::<Vec<_>>()),
    }
}

fn edge_json(e: &EdgeFactorization) -> Value {
    json!({
        "plane": [e.plane.0 + 1, e.plane.1 + 1],
        "weights": [e.weights.0, e.weights.1],
        "c": e.c.to_string(),
        "a": e.a,
        "b": e.b,
        "q": e.q.to_string(),
        "factors": e.factors.iter().map(|(f, m)| json!({"factor": f.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        "ell": e.ell,
        "k": e.k,
    })
}

fn newton_json(nd: &NewtonData, f: &SparsePolynomial) -> Value {
    let wh = weighted_homogeneity(f).map(|(p, d)| json!({"weights": p, "degree": d}));
    let nu = newton_number(nd).ok();
    json!({
        "vertices": nd.vertices,
        "faces": nd.faces.iter().map(|face| json!({
            "dimension": face.dimension,
            "weight": face.weight,
            "d": face.d,
            "points": face.points,
        })).collect::<Vec<_>>(),
        "convenient": nd.is_convenient(),
        "facet_normals": nd.facet_normals,
        "weighted_homogeneity": wh,
        "newton_number": nu,
    })
}

fn analyze(f: &SparsePolynomial) -> Result<Section, Error> {
    let nd = newton_data(f)?;
    let rep = degeneracy_report_for(&nd)?;
    let mut s = Section::default();
    s.put("newton", newton_json(&nd, f));
    s.put(
        "degeneracy",
        json!({
            "nondegenerate": rep.is_nondegenerate(),
            "faces": rep.verdicts.iter().map(|(face, v)| json!({
                "dimension": face.dimension,
                "weight": face.weight,
                "nondegenerate": v.nondegenerate,
                "witness": v.witness,
            })).collect::<Vec<_>>(),
            "degenerate_edges": rep.degenerate_edges.iter().map(edge_json).collect::<Vec<_>>(),
        }),
    );
    Ok(s)
}

fn h_json(h: &[HCoefficient]) -> Value {
    json!(h
        .iter()
        .map(|c| json!({"j": c.j, "base": c.base.to_string(), "direction": c.direction.to_string()}))
        .collect::<Vec<_>>())
}

fn resolve(f: &SparsePolynomial, n: usize, seed: u64) -> Result<Section, Error> {
    if n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    weighted_homogeneity(f).ok_or(Error::NotWeightedHomogeneous)?;
    let nd = newton_data(f)?;
    let sub = admissible_subdivision(&nd)?;
    let family = generic_deformation(f, seed)?;
    let report = verify_simultaneous_resolution(&family, &sub)?;
    let mut s = Section::default();
    s.put(
        "subdivision",
        json!({"vertices": sub.vertices, "provenance": sub.provenance, "cones": sub.cones}),
    );
    s.put(
        "deformation",
        json!({
            "direction": family.direction.to_string(),
            "seed_used": family.seed_used,
            "attempts": family.attempts,
            "samples": family.samples.iter().map(|(t, _)| t.to_string()).collect::<Vec<_>>(),
        }),
    );
    s.put("checks", json!(report.checks));
    s.put(
        "degenerate_edge_charts",
        json!(report
            .degenerate_edge_charts
            .iter()
            .map(|e| json!({
                "edge": e.edge.points,
                "axis": e.axis + 1,
                "sigma": e.sigma,
                "sigma_prime": e.sigma_prime,
                "h_sigma": h_json(&e.h_sigma),
                "h_sigma_prime": h_json(&e.h_sigma_prime),
            }))
            .collect::<Vec<_>>()),
    );
    s.put(
        "charts",
        json!(report
            .charts
            .iter()
            .map(|c| json!({
                "columns": c.columns,
                "divisor_exponents": c.divisor_exponents,
                "strict_transform": c.strict_transform.to_string(),
            }))
            .collect::<Vec<_>>()),
    );
    s.verdict("resolution", report.passed());
    Ok(s)
}

fn zeta_json(z: &ZetaFactored, route: &str) -> Value {
    let reduced = z.to_reduced().divisor();
    json!({
        "route": route,
        "zeta": z.pairs(),
        "reduced_divisor": pairs(&reduced),
        "size": divisor_size(&reduced).ok(),
    })
}

fn zeta(f: &SparsePolynomial, n: usize, seed: u64) -> Result<Section, Error> {
    let wh = weighted_homogeneity(f);
    if n == 2 && wh.is_none() {
        return Err(Error::NotWeightedHomogeneous);
    }
    let mut s = Section::default();
    let mo = match &wh {
        Some((p, d)) => Some(milnor_orlik_divisor(p, *d)?),
        None => None,
    };
    s.put("milnor_orlik", mo.as_ref().map(pairs).unwrap_or(Value::Null));
    let mut acampo: Option<GroupRingDivisor> = None;
    if n == 3 {
        let nd = newton_data(f)?;
        if degeneracy_report_for(&nd)?.is_nondegenerate() {
            let z = acampo_zeta(&nd, &admissible_subdivision(&nd)?)?;
            acampo = Some(z.to_reduced().divisor());
            s.put("acampo", zeta_json(&z, "direct"));
        } else if wh.is_some() {
            match zeta_via_deformation(f, seed) {
                Ok(z) => {
                    acampo = Some(z.to_reduced().divisor());
                    s.put("acampo", zeta_json(&z, "deformation"));
                }
                Err(e) => {
                    s.put("acampo", json!({"route": "deformation", "error": e.to_string()}));
                    s.verdict("acampo_available", false);
                }
            }
        } else {
            s.put("acampo", json!({"route": null, "error": "Newton degenerate and not weighted homogeneous"}));
            s.verdict("acampo_available", false);
        }
    } else {
        s.put("acampo", Value::Null);
    }
    if let (Some(a), Some(b)) = (&mo, &acampo) {
        s.put("equal", json!(a == b));
        s.verdict("equal", a == b);
    }
    Ok(s)
}

fn mu(f: &SparsePolynomial) -> Result<Section, Error> {
    let mut s = Section::default();
    let formula = weighted_homogeneity(f).and_then(|(p, d)| mu_from_formula(&p, d).ok());
    let nd = newton_data(f)?;
    let nondegenerate = degeneracy_report_for(&nd)?.is_nondegenerate();
    let newton = newton_number(&nd).ok();
    let oracle = jacobian_ring_dimension(f);
    s.put("formula", json!(formula));
    s.put("newton", json!(newton));
    s.put("newton_applicable", json!(newton.is_some() && nondegenerate));
    s.put(
        "oracle",
        match oracle {
            JacobianDimension::Finite(m) => json!(m),
            JacobianDimension::Infinite => json!("infinite"),
        },
    );
    let oracle_value = oracle.finite();
    let mut equal = oracle_value.is_some();
    if let Some(m) = formula {
        equal &= Some(m) == oracle_value;
    }
    if let (Some(nu), true) = (newton, nondegenerate) {
        equal &= Some(nu as u64) == oracle_value;
    }
    s.put("equal", json!(equal));
    s.verdict("isolated", oracle_value.is_some());
    s.verdict("equal", equal);
    Ok(s)
}

fn verify(f: &SparsePolynomial, n: usize, seed: u64) -> Result<Section, Error> {
    let mut s = Section::default();
    let wh = weighted_homogeneity(f).is_some();
    let mut parts: Vec<(&str, Result<Section, Error>)> = vec![("analyze", analyze(f)), ("mu", mu(f))];
    if n == 3 && wh {
        parts.push(("resolve", resolve(f, n, seed)));
    }
    if wh || n == 3 {
        parts.push(("zeta", zeta(f, n, seed)));
    }
    for (name, part) in parts {
        match part {
            Ok(sec) => {
                s.put(name, json!(sec.payload));
                for (k, v) in sec.verdicts {
                    s.verdict(&format!("{name}.{k}"), v);
                }
            }
            Err(e) => {
                s.put(name, json!({"error": e.to_string()}));
                s.verdict(&format!("{name}.completed"), false);
            }
        }
    }
    Ok(s)
}
