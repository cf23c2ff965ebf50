//! JSON wire formats. Rationals are strings `"p/q"` (integers bare, `"5"`),
//! matrices are row-major arrays of arrays, and object keys come out sorted.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::analysis::{CompositionReport, IsoResult, RhReport, StarReport, StarWitness};
use crate::arrangement::{Arrangement, Hyperplane, Line};
use crate::convolution::{ConvolvedSystem, MiddleConvolvedSystem};
use crate::error::{Error, Result};
use crate::exact::rational::{rational_from_json, rational_to_json};
use crate::exact::{parse_rational, ExactMatrix, Rational};
use crate::freelie::word::word_from_str;
use crate::freelie::{word_to_string, BraidCheck, LieElement};
use crate::holonomy::{IntegrabilityReport, PfaffianSystem, Presentation};

fn bad(what: impl Into<String>) -> Error {
    Error::InvalidInput(what.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("`{what}` must be an array")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("`{key}` must be a non-negative integer")))
}

fn vector_from_json(v: &Value, what: &str) -> Result<Vec<Rational>> {
    array(v, what)?.iter().map(rational_from_json).collect()
}

fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|row| vector_from_json(row, "matrix row"))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(rows)
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_to_json(m.row(r))).collect())
}

pub fn arrangement_from_json(v: &Value) -> Result<Arrangement> {
    let dim = usize_field(v, "dim")?;
    let hyperplanes = array(field(v, "hyperplanes")?, "hyperplanes")?
        .iter()
        .map(|h| {
            let id = field(h, "id")?.as_str().ok_or_else(|| bad("hyperplane `id` must be a string"))?;
            let normal = vector_from_json(field(h, "normal")?, "normal")?;
            let offset = match h.get("offset") {
                Some(o) => rational_from_json(o)?,
                None => Rational::from_integer(0.into()),
            };
            Hyperplane::new(id, normal, offset)
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(dim, hyperplanes)
}

pub fn arrangement_to_json(a: &Arrangement) -> Value {
    let hs: Vec<Value> = a
        .hyperplanes()
        .iter()
        .map(|h| {
            json!({
                "id": h.id(),
                "normal": vector_to_json(h.normal()),
                "offset": rational_to_json(h.offset()),
                "equation": h.equation(),
            })
        })
        .collect();
    json!({ "dim": a.dim(), "hyperplanes": hs })
}

pub fn line_from_json(v: &Value) -> Result<Line> {
    Line::new(vector_from_json(field(v, "direction")?, "direction")?)
}

/// Parses `"a,b,..."` into a line direction.
pub fn line_from_text(text: &str) -> Result<Line> {
    Line::new(text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?)
}

pub fn line_to_json(y: &Line) -> Value {
    json!({ "direction": vector_to_json(y.direction()) })
}

pub fn system_from_json(v: &Value) -> Result<PfaffianSystem> {
    let arrangement = arrangement_from_json(field(v, "arrangement")?)?;
    let residues = field(v, "residues")?
        .as_object()
        .ok_or_else(|| bad("`residues` must be an object keyed by hyperplane id"))?
        .iter()
        .map(|(id, m)| Ok((id.clone(), matrix_from_json(m)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let rank = match v.get("rank") {
        Some(_) => usize_field(v, "rank")?,
        None => residues.values().next().map_or(0, ExactMatrix::rows),
    };
    PfaffianSystem::new(arrangement, rank, residues)
}

fn residues_to_json(s: &PfaffianSystem) -> Value {
    Value::Object(s.residues().iter().map(|(id, m)| (id.clone(), matrix_to_json(m))).collect())
}

pub fn system_to_json(s: &PfaffianSystem) -> Value {
    json!({
        "arrangement": arrangement_to_json(s.arrangement()),
        "rank": s.rank(),
        "residues": residues_to_json(s),
    })
}

/// A matrix tuple: `{"matrices": [...]}`, or a system (residues in
/// arrangement order).
pub fn tuple_from_json(v: &Value) -> Result<Vec<ExactMatrix>> {
    if v.get("residues").is_some() {
        let s = system_from_json(v)?;
        return Ok(s.ordered_residues().into_iter().cloned().collect());
    }
    array(field(v, "matrices")?, "matrices")?.iter().map(matrix_from_json).collect()
}

pub fn tuple_to_json(a: &[ExactMatrix]) -> Value {
    json!({ "matrices": a.iter().map(matrix_to_json).collect::<Vec<_>>() })
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let relations: Vec<Value> = p
        .relations()
        .into_iter()
        .map(|(member, family)| json!({ "member": member, "family": family }))
        .collect();
    json!({
        "generators": p.generators,
        "relation_families": p.relation_families,
        "relations": relations,
    })
}

pub fn integrability_to_json(r: &IntegrabilityReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "family": v.family,
                "member": v.family[v.member],
                "commutator": matrix_to_json(&v.commutator),
            })
        })
        .collect();
    json!({ "integrable": r.is_ok(), "violations": violations })
}

pub fn convolved_to_json(c: &ConvolvedSystem) -> Value {
    json!({
        "closure": arrangement_to_json(c.closure()),
        "lambda": rational_to_json(&c.lambda),
        "dim": c.system.rank(),
        "matrices": residues_to_json(&c.system),
        "block_order": c.order,
    })
}

pub fn middle_to_json(m: &MiddleConvolvedSystem) -> Value {
    json!({
        "closure": arrangement_to_json(m.system.arrangement()),
        "lambda": rational_to_json(&m.conv.lambda),
        "dim": m.dim(),
        "k_dim": m.quotient.k_space.dim(),
        "l_dim": m.quotient.l_space.dim(),
        "direct_sum": m.quotient.direct_sum,
        "matrices": residues_to_json(&m.system),
        "block_order": m.conv.order,
    })
}

fn witness_to_json(w: &Option<StarWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "generator": w.generator,
            "c": rational_to_json(&w.c),
            "vector": vector_to_json(&w.vector),
        }),
    }
}

pub fn star_report_to_json(r: &StarReport) -> Value {
    let defects: Vec<Value> = r
        .defects
        .iter()
        .map(|g| json!({ "generator": g.generator, "star": g.star.to_string(), "dstar": g.dstar.to_string() }))
        .collect();
    json!({
        "holds_star": r.holds_star,
        "holds_dstar": r.holds_dstar,
        "defects": defects,
        "star_witness": witness_to_json(&r.star_witness),
        "dstar_witness": witness_to_json(&r.dstar_witness),
    })
}

pub fn iso_to_json(r: &IsoResult) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "intertwiner": r.intertwiner.as_ref().map(matrix_to_json),
    })
}

pub fn rh_to_json(r: &RhReport) -> Value {
    let offenders: Vec<Value> = r
        .offenders
        .iter()
        .map(|o| json!({ "source": o.source, "eigenvalue": o.eigenvalue.to_string() }))
        .collect();
    json!({ "pass": r.pass, "offenders": offenders })
}

pub fn composition_to_json(r: &CompositionReport) -> Value {
    let mut out = Map::new();
    out.insert("conditions".into(), star_report_to_json(&r.star));
    match &r.result {
        None => {
            out.insert("applicable".into(), Value::Bool(false));
        }
        Some(res) => {
            out.insert("applicable".into(), Value::Bool(true));
            out.insert("dims".into(), json!(res.dims));
            out.insert("isomorphic".into(), Value::Bool(res.isomorphic));
            out.insert("intertwiner".into(), matrix_to_json(&res.intertwiner));
            if let Some((w, ok)) = &res.identity_witness {
                out.insert(
                    "identity".into(),
                    json!({ "map": matrix_to_json(w), "isomorphic": ok }),
                );
            }
        }
    }
    Value::Object(out)
}

pub fn lie_element_to_json(e: &LieElement) -> Value {
    let terms: Map<String, Value> =
        e.terms().iter().map(|(w, c)| (word_to_string(w), rational_to_json(c))).collect();
    json!({ "n": e.n_generators(), "terms": terms })
}

pub fn lie_element_from_json(v: &Value) -> Result<LieElement> {
    let n = usize_field(v, "n")?;
    let terms = field(v, "terms")?
        .as_object()
        .ok_or_else(|| bad("`terms` must be an object keyed by Lyndon word"))?
        .iter()
        .map(|(w, c)| Ok((word_from_str(w, n)?, rational_from_json(c)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    LieElement::from_terms(n, terms)
}

pub fn braid_check_to_json(c: &BraidCheck) -> Value {
    let violation = c.violation.as_ref().map(|v| {
        json!({
            "relation": v.relation,
            "element": word_to_string(&v.element),
            "value": lie_element_to_json(&v.value),
        })
    });
    json!({ "ok": c.is_ok(), "evaluations": c.evaluations, "violation": violation })
}
