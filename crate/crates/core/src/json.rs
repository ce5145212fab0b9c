//! JSON file formats for inputs and reports.
//!
//! Point sets: `{"dim": n, "points": [[..], ..]}`.
//! Polytopes: `{"dim": n, "facets": [{"normal": [..], "offset": "p/q"}]}` for
//! `x·normal >= offset`; on input `"vertices"` (a V-description) is accepted instead.
//! Polynomials: `{"dim": n, "terms": [{"exp": [..], "coeff": c}]}`, coefficients
//! as signed integers reduced mod p.

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chain::{
    ChainReport, ChainStep, ErosionIdentities, NegativeChain, NormalChain, StepValidation,
};
use crate::field::PrimeField;
use crate::koszul::KoszulReport;
use crate::membership::{Decomposition, Foundation, MembershipReport, StabilizationReport};
use crate::osculate::{Multiplicity, OsculationReport};
use crate::pointset::{Point, PointSet};
use crate::polytope::{convex_hull, Facet, HPolytope};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sparsepoly::SparsePoly;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, JsonError>;

fn invalid(e: impl ToString) -> JsonError {
    JsonError::Invalid(e.to_string())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatIn {
    Int(i64),
    Str(String),
}

impl RatIn {
    fn value(&self) -> Result<Rational> {
        match self {
            RatIn::Int(v) => Ok(Rational::from_integer((*v).into())),
            RatIn::Str(s) => parse_rational(s).map_err(invalid),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetIn {
    dim: usize,
    points: Vec<Point>,
}

#[derive(Deserialize)]
struct FacetIn {
    normal: Vec<i64>,
    offset: RatIn,
}

#[derive(Deserialize)]
struct PolytopeIn {
    dim: usize,
    #[serde(default)]
    facets: Option<Vec<FacetIn>>,
    #[serde(default)]
    vertices: Option<Vec<Vec<RatIn>>>,
}

#[derive(Deserialize)]
struct TermIn {
    exp: Point,
    coeff: i64,
}

#[derive(Deserialize)]
struct PolyIn {
    dim: usize,
    terms: Vec<TermIn>,
}

pub fn pointset_from_value(v: Value) -> Result<PointSet> {
    let p: PointSetIn = serde_json::from_value(v)?;
    PointSet::new(p.dim, p.points).map_err(invalid)
}

pub fn parse_pointset(s: &str) -> Result<PointSet> {
    pointset_from_value(serde_json::from_str(s)?)
}

pub fn pointset_to_json(s: &PointSet) -> Value {
    json!({ "dim": s.dim(), "points": s.to_vec() })
}

pub fn polytope_from_value(v: Value) -> Result<HPolytope> {
    let p: PolytopeIn = serde_json::from_value(v)?;
    match (p.facets, p.vertices) {
        (Some(facets), _) => {
            let facets = facets
                .into_iter()
                .map(|f| Ok(Facet::new(f.normal, f.offset.value()?)))
                .collect::<Result<Vec<_>>>()?;
            HPolytope::new(p.dim, facets).map_err(invalid)
        }
        (None, Some(points)) => {
            let pts = points
                .iter()
                .map(|q| q.iter().map(RatIn::value).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if pts.iter().any(|q| q.len() != p.dim) {
                return Err(invalid("point of the wrong dimension"));
            }
            convex_hull(p.dim, &pts).map_err(invalid)
        }
        (None, None) => Err(invalid("a polytope needs \"facets\" or \"vertices\"")),
    }
}

pub fn parse_polytope(s: &str) -> Result<HPolytope> {
    polytope_from_value(serde_json::from_str(s)?)
}

fn rational_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

pub fn polytope_to_json(p: &HPolytope) -> Value {
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|f| json!({ "normal": f.normal, "offset": format_rational(&f.offset) }))
        .collect();
    let vertices: Vec<Vec<String>> = p.vertices().iter().map(|v| rational_point(v)).collect();
    json!({ "dim": p.dim(), "facets": facets, "vertices": vertices })
}

pub fn poly_from_value(v: Value, field: PrimeField) -> Result<SparsePoly> {
    let p: PolyIn = serde_json::from_value(v)?;
    SparsePoly::from_terms(field, p.dim, p.terms.into_iter().map(|t| (t.exp, t.coeff)))
        .map_err(invalid)
}

pub fn parse_poly(s: &str, field: PrimeField) -> Result<SparsePoly> {
    poly_from_value(serde_json::from_str(s)?, field)
}

pub fn poly_to_json(p: &SparsePoly) -> Value {
    let field = p.field();
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(e, c)| json!({ "exp": e, "coeff": field.lift_signed(*c) }))
        .collect();
    json!({ "dim": p.dim(), "terms": terms })
}

pub fn membership_json(r: &MembershipReport, translation: &[i64]) -> Value {
    json!({
        "dimW": r.dim_w,
        "dimKer": r.dim_ker,
        "dimV": r.dim_v,
        "basis": r.basis.iter().map(poly_to_json).collect::<Vec<_>>(),
        "omega": { "rows": r.omega_rows, "cols": r.omega_cols },
        "primes": r.primes,
        "seeds": r.seeds,
        "translation": translation,
    })
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    match d {
        Decomposition::Member {
            multipliers,
            kernel_dim,
        } => json!({
            "member": true,
            "multipliers": multipliers.iter().map(poly_to_json).collect::<Vec<_>>(),
            "kernelDim": kernel_dim,
        }),
        Decomposition::NotAMember => json!({ "member": false }),
    }
}

pub fn foundation_json(f: &Foundation) -> Value {
    json!({
        "enclosingFactor": format_rational(&f.enclosing),
        "t": format_rational(&f.t),
        "shiftA": f.shift_a,
        "shiftB": f.shift_b,
        "supports": f.supports.iter().map(pointset_to_json).collect::<Vec<_>>(),
        "withinHypotheses": f.within_hypotheses,
    })
}

fn step_json(s: &ChainStep) -> Value {
    json!({
        "facet": s.facet,
        "tau": format_rational(&s.tau),
        "bracket": [format_rational(&s.bracket.0), format_rational(&s.bracket.1)],
    })
}

fn validation_json(v: &StepValidation) -> Value {
    json!({
        "facetCount": v.facet_count,
        "decomposition": v.decomposition,
        "coplanar": v.coplanar,
        "singleShift": v.single_shift,
    })
}

fn identities_json(v: &ErosionIdentities) -> Value {
    json!({ "monotone": v.monotone, "latticeErosion": v.lattice_erosion, "slab": v.slab })
}

pub fn chain_json(
    chain: &NormalChain,
    report: &ChainReport,
    identities: &[ErosionIdentities],
) -> Value {
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .zip(&report.steps)
        .zip(identities)
        .map(|((s, v), id)| {
            let mut o = step_json(s);
            o["validation"] = validation_json(v);
            o["identities"] = identities_json(id);
            o
        })
        .collect();
    json!({
        "base": polytope_to_json(&chain.base),
        "center": rational_point(&chain.center),
        "epsilon0": format_rational(&chain.epsilon0),
        "facetOrder": chain.order,
        "terms": chain.terms.iter().map(polytope_to_json).collect::<Vec<_>>(),
        "steps": steps,
        "firstTerm": report.first_term,
        "periodicDilations": report.periodic_dilations,
        "brackets": report.brackets,
        "reaches": report.reaches,
        "valid": report.passed() && identities.iter().all(|i| i.passed()),
    })
}

pub fn negative_chain_json(chain: &NegativeChain) -> Value {
    json!({
        "base": polytope_to_json(&chain.base),
        "center": rational_point(&chain.center),
        "epsilonMinus1": format_rational(&chain.epsilon_minus1),
        "facetOrder": chain.order,
        "surrounded": chain.surrounded,
        "terms": chain.terms.iter().map(polytope_to_json).collect::<Vec<_>>(),
        "steps": chain.steps.iter().map(step_json).collect::<Vec<_>>(),
    })
}

pub fn koszul_json(r: &KoszulReport) -> Value {
    json!({
        "k": r.k,
        "formula": r.formula,
        "formulaAsPrinted": r.formula_as_printed,
        "oracle": r.oracle,
        "matches": r.formula_matches(),
        "confirmedReading": r.confirmed.to_string(),
        "primes": r.primes,
        "seeds": r.seeds,
    })
}

pub fn stabilization_json(r: &StabilizationReport) -> Value {
    json!({
        "firstIndex": r.first_index,
        "dims": r.dims,
        "increases": r.increases,
        "constant": r.is_constant(),
        "primes": r.primes,
        "seeds": r.seeds,
    })
}

fn multiplicity_json(m: &Multiplicity) -> Value {
    match m {
        Multiplicity::Exact(v) => json!(v),
        Multiplicity::AtLeast(n) => json!(format!(">={n}")),
    }
}

pub fn osculation_json(r: &OsculationReport) -> Value {
    let flags: Vec<Value> = r
        .flags
        .iter()
        .map(|e| json!({ "i": e.i, "achievedMultiplicity": multiplicity_json(&e.achieved), "kernelDim": e.kernel_dim }))
        .collect();
    json!({
        "point": [r.point.0.value(), r.point.1.value()],
        "hullDim": r.hull_dim,
        "dimV": r.dim_v,
        "rank": r.rank,
        "seriesOrder": r.order,
        "mixedArea": r.mixed_area,
        "pointAttempts": r.point_attempts,
        "flags": flags,
    })
}

/// Pretty-printed with a trailing newline; key order is fixed, so equal
/// values always serialize to equal bytes.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
