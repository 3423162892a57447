//! `build`, `decompose` and `recover`.

use qpair_core::decompose::{
    canonical_normal_form, canonical_symplectic_decomposition, orthogonal_normal_form,
    orthogonalize_decomposition, pfister_from_split, qp_normal_form, PfisterReport,
    TotalDecomposition,
};
use qpair_core::forms::witt_decompose;
use qpair_core::involution::{Involution, InvolutionType, QuatVariant};
use qpair_core::qpair::{recover_quadratic_form, QuadPair};
use qpair_core::Field;
use serde_json::{json, Value};

use crate::campaigns::Checked;
use crate::codec::{
    bilinear_to_json, field_to_json, matrix_to_json, quadratic_to_json, vector_to_json, InputError,
    PResult,
};
use crate::input::{parse_input, quat_inv_doc, quat_qp_doc, Input, Object};
use crate::report::Verdict;

/// A command result: the document to print and the exit status.
pub struct Output {
    pub doc: Value,
    pub code: i32,
}

fn kind_name(k: InvolutionType) -> &'static str {
    match k {
        InvolutionType::Orthogonal => "orthogonal",
        InvolutionType::Symplectic => "symplectic",
    }
}

fn involution_json(f: &Field, s: &Involution) -> Value {
    json!({
        "dim": s.algebra().dim(),
        "type": kind_name(s.kind()),
        "map": matrix_to_json(f, s.map()),
        "sym": s.sym().iter().map(|v| vector_to_json(f, v)).collect::<Vec<_>>(),
    })
}

fn pair_json(f: &Field, p: &QuadPair) -> Value {
    let mut v = involution_json(f, p.involution());
    v["ell"] = vector_to_json(f, p.ell());
    v["values"] = vector_to_json(f, &p.value_table());
    v
}

/// Validates a structure document and prints its canonical data.
pub fn build(doc: &Value, default: Option<&Field>) -> PResult<Output> {
    let Input { field: f, object, key } = parse_input(doc, default)?;
    let body = match &object {
        Object::Form(rho) => {
            let mut v = quadratic_to_json(&rho.clone());
            v["nonsingular"] = json!(rho.is_nonsingular());
            if let Ok(w) = witt_decompose(rho, 2) {
                v["witt_index"] = json!(w.witt_index);
                v["certified"] = json!(format!("{:?}", w.certified));
            }
            v
        }
        Object::Bilinear(b) => bilinear_to_json(b),
        Object::Algebra(a) => json!({"dim": a.dim(), "labels": a.labels()}),
        Object::Involution(s) => involution_json(&f, s),
        Object::Pair(p) => pair_json(&f, p),
        Object::Decomposition { factors, pair } => {
            let td = TotalDecomposition::identity(factors.clone(), pair.clone())
                .map_err(|e| InputError::new("decomposition", e.to_string()))?;
            json!({"slots": td.slot_dims(), "types": factors.iter().map(|s| kind_name(s.kind())).collect::<Vec<_>>()})
        }
    };
    Ok(Output {
        doc: json!({"field": field_to_json(&f), "kind": object.kind(), "constructor": key, "data": body}),
        code: 0,
    })
}

/// Normal-form presentation of each slot.
fn presentation(f: &Field, td: &TotalDecomposition) -> qpair_core::Result<Value> {
    let mut factors = Vec::new();
    for s in &td.factors {
        let doc = match s.kind() {
            InvolutionType::Orthogonal => {
                let n = orthogonal_normal_form(s)?;
                quat_inv_doc(f, &n.a, &n.b, QuatVariant::Tau)
            }
            InvolutionType::Symplectic => {
                let n = canonical_normal_form(s)?;
                quat_inv_doc(f, &n.a, &n.b, QuatVariant::Canonical)
            }
        };
        factors.push(doc);
    }
    let pair = match &td.pair {
        Some(p) => {
            let n = qp_normal_form(p)?;
            quat_qp_doc(f, &n.a, &n.b)
        }
        None => Value::Null,
    };
    Ok(json!({"factors": factors, "pair": pair}))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeMode {
    Identity,
    Orthogonalize,
    Canonical,
}

pub fn decompose(doc: &Value, default: Option<&Field>, mode: DecomposeMode) -> PResult<Output> {
    let Input { field: f, object, .. } = parse_input(doc, default)?;
    let Object::Decomposition { factors, pair } = object else {
        return Err(InputError::new("", format!("expected a decomposition, found {}", object.kind())));
    };
    let run = || -> qpair_core::Result<Value> {
        let td = match mode {
            DecomposeMode::Identity => TotalDecomposition::identity(factors.clone(), pair.clone())?,
            DecomposeMode::Orthogonalize => orthogonalize_decomposition(&factors, pair.as_ref())?,
            DecomposeMode::Canonical => {
                let o = orthogonalize_decomposition(&factors, pair.as_ref())?;
                canonical_symplectic_decomposition(&o)?
            }
        };
        let verified = td.map.rows() <= 64;
        if verified {
            td.verify()?;
        }
        Ok(json!({
            "field": field_to_json(&f),
            "factors": td.factors.iter().map(|s| kind_name(s.kind())).collect::<Vec<_>>(),
            "presentation": presentation(&f, &td)?,
            "certificate": {"map": matrix_to_json(&f, &td.map), "checked": verified},
        }))
    };
    Ok(match run() {
        Ok(doc) => Output { doc, code: 0 },
        Err(e) => Output {
            doc: json!({"error": e.to_string()}),
            code: 1,
        },
    })
}

/// `Ad(ρ)` data over a splitting field.
pub fn recover(doc: &Value, default: Option<&Field>, k: &Field, bound: usize) -> PResult<Output> {
    let Input { field: f, object, .. } = parse_input(doc, default)?;
    if !f.is_subfield_of(k) {
        return Err(InputError::new("splitting", format!("{k} does not contain {f}")));
    }
    match object {
        Object::Decomposition { factors, pair } => {
            if pair.is_none() {
                return Err(InputError::new("decomposition.pair", "a pair factor is required"));
            }
            let td = match orthogonalize_decomposition(&factors, pair.as_ref()) {
                Ok(td) => td,
                Err(e) => return Ok(error_output(e)),
            };
            let r = match pfister_from_split(&td, k, bound) {
                Ok(r) => r,
                Err(e) => return Ok(error_output(e)),
            };
            let code = match r {
                PfisterReport::Inconclusive(_) => 2,
                _ => 0,
            };
            let Checked { verdict, evidence, .. } = pipeline_evidence(k, &r);
            let code = if matches!(verdict, Verdict::Fail { .. }) { 1 } else { code };
            Ok(Output {
                doc: json!({"splitting": field_to_json(k), "verdict": verdict.to_json(), "result": evidence}),
                code,
            })
        }
        Object::Pair(p) => {
            let run = || -> qpair_core::Result<Value> {
                let pk = p.extend(k)?;
                let (g, rho) = recover_quadratic_form(&pk)?;
                Ok(json!({"splitting": field_to_json(k), "gram": matrix_to_json(k, &g), "rho": quadratic_to_json(&rho)}))
            };
            Ok(match run() {
                Ok(doc) => Output { doc, code: 0 },
                Err(e) => error_output(e),
            })
        }
        o => Err(InputError::new("", format!("expected a pair or decomposition, found {}", o.kind()))),
    }
}

fn error_output(e: qpair_core::Error) -> Output {
    Output {
        doc: json!({"error": e.to_string()}),
        code: 1,
    }
}

fn pipeline_evidence(k: &Field, r: &PfisterReport) -> Checked {
    crate::campaigns::recheck_report(k, r)
}
