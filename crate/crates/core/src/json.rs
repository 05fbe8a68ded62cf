//! The `cpt/1` JSON formats.
//!
//! Integers that can grow (coefficients, matrix entries, determinants) are
//! written as decimal strings so that no consumer truncates them to a
//! double. Small structural counts (fiber dimensions, exponents, ranks,
//! bounds) stay plain numbers. Every top-level document carries
//! `"schema": "cpt/1"`; on input the field may be omitted but any other
//! value is rejected.

use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{FamilyId, Fixture, Pi6Verdict, Report, ReportRow};
use crate::chern::BundleDescriptor;
use crate::error::{FormatError, PolyError};
use crate::iso::{IsoCertificate, NoneReason, SearchVerdict};
use crate::matrix::IntMatrix;
use crate::poly::{Monomial, Poly};
use crate::tower::{RingPresentation, Stage, TowerSpec};

pub const SCHEMA: &str = "cpt/1";

/// One polynomial term.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageDoc {
    fiber_dim: u32,
    #[serde(default)]
    chern: Vec<Vec<Term>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    stages: Vec<StageDoc>,
}

fn check_schema(schema: Option<&str>) -> Result<(), FormatError> {
    match schema {
        None | Some(SCHEMA) => Ok(()),
        Some(other) => Err(FormatError::Schema(other.to_string())),
    }
}

fn big(text: &str) -> Result<BigInt, FormatError> {
    BigInt::from_str(text.trim()).map_err(|_| FormatError::Integer(text.to_string()))
}

/// Terms in ascending canonical monomial order.
pub fn poly_to_terms(p: &Poly) -> Vec<Term> {
    p.terms().map(|(m, c)| Term { coeff: c.to_string(), exps: m.exps().to_vec() }).collect()
}

/// Strict: zero coefficients, repeated monomials and exponent vectors of
/// the wrong length are errors.
pub fn poly_from_terms(terms: &[Term], ngens: usize) -> Result<Poly, FormatError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != ngens {
            return Err(PolyError::ExponentLength { expected: ngens, found: t.exps.len() }.into());
        }
        parsed.push((Monomial::new(t.exps.clone()), big(&t.coeff)?));
    }
    Ok(Poly::from_terms(ngens, parsed)?)
}

fn poly_value(p: &Poly) -> Value {
    serde_json::to_value(poly_to_terms(p)).expect("terms serialize")
}

pub fn tower_to_json(spec: &TowerSpec) -> Value {
    let doc = TowerDoc {
        schema: Some(SCHEMA.to_string()),
        stages: spec
            .stages
            .iter()
            .map(|s| StageDoc { fiber_dim: s.fiber_dim, chern: s.chern.iter().map(poly_to_terms).collect() })
            .collect(),
    };
    serde_json::to_value(doc).expect("tower serializes")
}

/// Parses a tower spec. A Chern class's generator count is read off its
/// exponent vectors; an empty (zero) class lives over the base.
/// The result is not validated; [`TowerSpec::validate`] does that.
pub fn tower_from_str(text: &str) -> Result<TowerSpec, FormatError> {
    let doc: TowerDoc = serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    check_schema(doc.schema.as_deref())?;
    let mut stages = Vec::with_capacity(doc.stages.len());
    for (k, st) in doc.stages.iter().enumerate() {
        let mut chern = Vec::with_capacity(st.chern.len());
        for terms in &st.chern {
            let ngens = terms.first().map_or(k, |t| t.exps.len());
            chern.push(poly_from_terms(terms, ngens)?);
        }
        stages.push(Stage::new(st.fiber_dim, chern));
    }
    Ok(TowerSpec::new(stages))
}

/// Presentation dump, optionally with the Poincaré vector and the
/// monomial basis of one degree.
pub fn presentation_to_json(pres: &RingPresentation, poincare: bool, basis_degree: Option<u32>) -> Value {
    let mut doc = json!({
        "schema": SCHEMA,
        "caps": pres.caps(),
        "relations": pres.relations().iter().map(poly_value).collect::<Vec<_>>(),
    });
    if poincare {
        doc["poincare"] = json!(pres.poincare().betti);
    }
    if let Some(d) = basis_degree {
        let monos: Vec<Vec<u32>> = pres.graded_basis(d).iter().map(|m| m.exps().to_vec()).collect();
        doc["basis"] = json!({ "degree": d, "monomials": monos });
    }
    doc
}

pub fn bundle_to_json(b: &BundleDescriptor) -> Value {
    json!({
        "schema": SCHEMA,
        "rank": b.rank,
        "chern": b.chern.iter().map(poly_value).collect::<Vec<_>>(),
        "alpha": b.alpha,
    })
}

fn matrix_value(m: &IntMatrix) -> Value {
    json!(m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn certificate_body(c: &IsoCertificate) -> Value {
    json!({ "matrix": matrix_value(c.matrix()), "det": c.det().to_string() })
}

/// Verdict body without the schema field (used inside reports).
pub fn verdict_body(v: &SearchVerdict) -> Value {
    match v {
        SearchVerdict::Found(c) => {
            let mut body = certificate_body(c);
            body["result"] = json!("found");
            body
        }
        SearchVerdict::NoneWithinBound { bound, reason } => {
            json!({ "result": "none_within_bound", "bound": bound, "reason": reason.as_str() })
        }
    }
}

pub fn verdict_to_json(v: &SearchVerdict) -> Value {
    let mut doc = verdict_body(v);
    doc["schema"] = json!(SCHEMA);
    doc
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, FormatError> {
    v.get(key).ok_or_else(|| FormatError::Shape(format!("missing field `{key}`")))
}

fn matrix_from_value(v: &Value) -> Result<IntMatrix, FormatError> {
    let rows = v.as_array().ok_or_else(|| FormatError::Shape("matrix must be a list of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or_else(|| FormatError::Shape("matrix row must be a list".into()))?;
        let mut r = Vec::with_capacity(cells.len());
        for cell in cells {
            let text = cell.as_str().ok_or_else(|| FormatError::Shape("matrix entries are decimal strings".into()))?;
            r.push(big(text)?);
        }
        if r.len() != rows.len() {
            return Err(FormatError::Shape("certificate matrix must be square".into()));
        }
        out.push(r);
    }
    Ok(IntMatrix::from_rows(out))
}

pub fn verdict_from_json(v: &Value) -> Result<SearchVerdict, FormatError> {
    check_schema(v.get("schema").and_then(Value::as_str))?;
    match field(v, "result")?.as_str() {
        Some("found") => Ok(SearchVerdict::Found(IsoCertificate::new(matrix_from_value(field(v, "matrix")?)?))),
        Some("none_within_bound") => {
            let bound = field(v, "bound")?
                .as_u64()
                .and_then(|b| u32::try_from(b).ok())
                .ok_or_else(|| FormatError::Shape("bound must be a small non-negative integer".into()))?;
            let reason = match field(v, "reason")?.as_str() {
                Some("exhausted") => NoneReason::Exhausted,
                Some("betti_mismatch") => NoneReason::BettiMismatch,
                other => return Err(FormatError::Shape(format!("unknown reason {other:?}"))),
            };
            Ok(SearchVerdict::NoneWithinBound { bound, reason })
        }
        other => Err(FormatError::Shape(format!("unknown result {other:?}"))),
    }
}

/// All certificates within a bound, as printed by `iso --all`.
pub fn certificates_to_json(certs: &[IsoCertificate], bound: u32) -> Value {
    json!({
        "schema": SCHEMA,
        "result": "all",
        "bound": bound,
        "count": certs.len(),
        "certificates": certs.iter().map(certificate_body).collect::<Vec<_>>(),
    })
}

fn pi6_value(p: &Pi6Verdict) -> Value {
    match p {
        Pi6Verdict::Distinct(a, b) => json!({ "verdict": "distinct", "a": a.to_string(), "b": b.to_string() }),
        Pi6Verdict::SameRing => json!({ "verdict": "same_ring" }),
        Pi6Verdict::Unknown => json!({ "verdict": "unknown" }),
    }
}

fn row_value(r: &ReportRow) -> Value {
    let mut row = json!({
        "a": r.a.to_string(),
        "b": r.b.to_string(),
        "expected": r.expected.as_str(),
        "verdict": verdict_body(&r.verdict),
        "pass": r.pass,
    });
    if let Some(p) = &r.pi6 {
        row["pi6"] = pi6_value(p);
    }
    row
}

fn discrepancy_value(fx: &Fixture, verdict: &SearchVerdict) -> Value {
    json!({
        "a": fx.a.to_string(),
        "b": fx.b.to_string(),
        "note": fx.note,
        "verdict": verdict_body(verdict),
    })
}

/// Sweep report. Only the `timing` block depends on the run; everything
/// else is a function of the theorem, range and bound.
pub fn report_to_json(report: &Report, version: &str, timing: Option<Duration>) -> Value {
    let searched = report
        .rows
        .iter()
        .filter(|r| !matches!(r.verdict, SearchVerdict::NoneWithinBound { reason: NoneReason::BettiMismatch, .. }))
        .count();
    let found = report.rows.iter().filter(|r| r.verdict.is_found()).count();
    let failures: Vec<Value> =
        report.failures().map(|r| json!({ "a": r.a.to_string(), "b": r.b.to_string() })).collect();
    let mut doc = json!({
        "schema": SCHEMA,
        "tool": { "name": "cpt", "version": version },
        "flags": { "theorem": report.theorem.as_str(), "range": report.range, "bound": report.bound },
        "rows": report.rows.iter().map(row_value).collect::<Vec<_>>(),
        "discrepancies": report.discrepancies.iter().map(|(f, v)| discrepancy_value(f, v)).collect::<Vec<_>>(),
        "summary": {
            "pairs": report.rows.len(),
            "searched": searched,
            "found": found,
            "failures": failures.len(),
            "failed_pairs": failures,
            "passed": report.passed(),
            "note": "none_within_bound is bounded non-existence: no certificate with entries in [-bound, bound]",
        },
    });
    if let Some(t) = timing {
        doc["timing"] = json!({ "wall_clock_ms": t.as_millis() as u64 });
    }
    doc
}

/// Catalog listing.
pub fn families_to_json(families: &[FamilyId]) -> Value {
    json!({
        "schema": SCHEMA,
        "families": families.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_roundtrip_and_strictness() {
        let p = Poly::parse("3*x^2 - 12345678901234567890123*x*y + y^2", 2).unwrap();
        let terms = poly_to_terms(&p);
        assert_eq!(poly_from_terms(&terms, 2).unwrap(), p);
        assert_eq!(terms[0].exps, vec![2, 0]);
        let zero = vec![Term { coeff: "0".into(), exps: vec![1, 0] }];
        assert!(matches!(poly_from_terms(&zero, 2), Err(FormatError::Poly(PolyError::ZeroCoefficient))));
        let short = vec![Term { coeff: "1".into(), exps: vec![1] }];
        assert!(matches!(poly_from_terms(&short, 2), Err(FormatError::Poly(PolyError::ExponentLength { .. }))));
        let bad = vec![Term { coeff: "1.5".into(), exps: vec![1, 0] }];
        assert!(matches!(poly_from_terms(&bad, 2), Err(FormatError::Integer(_))));
    }

    #[test]
    fn tower_roundtrip() {
        let text = r#"{"stages":[{"fiber_dim":2},{"fiber_dim":1,"chern":[[{"coeff":"-1","exps":[1]}],[{"coeff":"3","exps":[2]}]]}]}"#;
        let spec = tower_from_str(text).unwrap();
        let rels: Vec<String> = spec.presentation().unwrap().relations().iter().map(ToString::to_string).collect();
        assert_eq!(rels, ["x1^3", "x2^2 + x1*x2 + 3*x1^2"]);
        let back = tower_from_str(&tower_to_json(&spec).to_string()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn schema_and_syntax_errors() {
        assert!(matches!(tower_from_str(r#"{"schema":"cpt/2","stages":[]}"#), Err(FormatError::Schema(_))));
        let err = tower_from_str("{\n  \"stages\": [,]\n}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(matches!(tower_from_str(r#"{"stages":[{"fiber_dim":1,"extra":1}]}"#), Err(FormatError::Syntax(_))));
    }

    #[test]
    fn verdict_roundtrip() {
        let found = SearchVerdict::Found(IsoCertificate::from_images(&[vec![1, 0], vec![1, 1]]));
        let doc = verdict_to_json(&found);
        assert_eq!(doc["result"], "found");
        assert_eq!(doc["det"], "1");
        assert_eq!(doc["matrix"], json!([["1", "1"], ["0", "1"]]));
        assert_eq!(verdict_from_json(&doc).unwrap(), found);
        let none = SearchVerdict::NoneWithinBound { bound: 3, reason: NoneReason::BettiMismatch };
        let doc = verdict_to_json(&none);
        assert_eq!(
            doc,
            json!({"schema": "cpt/1", "result": "none_within_bound", "bound": 3, "reason": "betti_mismatch"})
        );
        assert_eq!(verdict_from_json(&doc).unwrap(), none);
    }
}
