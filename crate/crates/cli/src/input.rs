//! Structure documents: a tower plus one constructor record.
//!
//! ```json
//! {"field": {"kind": "galois", "p": 2, "k": 1},
//!  "tensor_qp": {"factors": [{"quat_inv": {"a": 1, "b": 1, "variant": "tau"}}],
//!                "pair": {"quat_qp": {"c": 0, "d": 1}}}}
//! ```

use qpair_core::algebra::{matrix_algebra, quaternion_make, tensor_algebra, AlgebraRef};
use qpair_core::forms::{BilinearForm, QuadraticForm};
use qpair_core::involution::{
    adjoint_involution, involution_check, quaternion_involution, tensor_all, Involution,
    QuatVariant,
};
use qpair_core::qpair::{adjoint_qp, boxtimes, qp_tensor, quaternion_qp, semitrace_repr, QuadPair};
use qpair_core::{Elem, Field};
use serde_json::{json, Value};

use crate::codec::{
    as_array, as_str, as_u64, core_err, elem_to_json, get, index, join, parse_bilinear,
    parse_elem, parse_field, parse_matrix, parse_quadratic, parse_vector, InputError, PResult,
};

#[derive(Clone, Debug)]
pub enum Object {
    Form(QuadraticForm),
    Bilinear(BilinearForm),
    Algebra(AlgebraRef),
    Involution(Involution),
    Pair(QuadPair),
    Decomposition {
        factors: Vec<Involution>,
        pair: Option<QuadPair>,
    },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Form(_) => "quadratic form",
            Object::Bilinear(_) => "bilinear form",
            Object::Algebra(_) => "algebra",
            Object::Involution(_) => "algebra with involution",
            Object::Pair(_) => "algebra with quadratic pair",
            Object::Decomposition { .. } => "decomposition",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Input {
    pub field: Field,
    pub object: Object,
    /// The constructor key that produced `object`.
    pub key: String,
}

pub const OBJECT_KEYS: &[&str] = &[
    "form",
    "bilinear",
    "quat",
    "mat",
    "tensor",
    "quat_inv",
    "adjoint",
    "tensor_inv",
    "custom_inv",
    "quat_qp",
    "adjoint_qp",
    "tensor_qp",
    "boxtimes",
    "semitrace",
    "decomposition",
];

/// Reads a document; the tower comes from its `field` entry, else from
/// `default`, else `GF(2)`.
pub fn parse_input(doc: &Value, default: Option<&Field>) -> PResult<Input> {
    let obj = doc
        .as_object()
        .ok_or_else(|| InputError::new("", "expected a JSON object"))?;
    let field = match obj.get("field") {
        Some(v) => parse_field(v, "field")?,
        None => match default {
            Some(f) => f.clone(),
            None => Field::gf(2).map_err(core_err("field"))?,
        },
    };
    let keys: Vec<&String> = obj.keys().filter(|k| OBJECT_KEYS.contains(&k.as_str())).collect();
    match keys.as_slice() {
        [k] => {
            let object = parse_object(&field, doc, "")?;
            Ok(Input {
                field,
                object,
                key: (*k).clone(),
            })
        }
        [] => Err(InputError::new(
            "",
            format!("no structure given; expected one of {}", OBJECT_KEYS.join(", ")),
        )),
        _ => Err(InputError::new("", "more than one structure given")),
    }
}

fn single_key<'a>(v: &'a Value, path: &str) -> PResult<(&'a str, &'a Value)> {
    let obj = v
        .as_object()
        .ok_or_else(|| InputError::new(path, "expected a constructor record"))?;
    let mut it = obj.iter().filter(|(k, _)| OBJECT_KEYS.contains(&k.as_str()));
    match (it.next(), it.next()) {
        (Some((k, x)), None) => Ok((k.as_str(), x)),
        (None, _) => Err(InputError::new(
            path,
            format!("expected one of {}", OBJECT_KEYS.join(", ")),
        )),
        _ => Err(InputError::new(path, "more than one constructor")),
    }
}

/// Parses the constructor record found in `v`.
pub fn parse_object(f: &Field, v: &Value, path: &str) -> PResult<Object> {
    let (key, body) = single_key(v, path)?;
    let p = join(path, key);
    let p = p.as_str();
    Ok(match key {
        "form" => Object::Form(parse_quadratic(f, body, p)?),
        "bilinear" => Object::Bilinear(parse_bilinear(f, body, p)?),
        "quat" => {
            let (a, b) = two(f, body, p, "a", "b")?;
            Object::Algebra(quaternion_make(f, &a, &b).map_err(core_err(p))?)
        }
        "mat" => {
            let n = as_u64(get(body, p, "n")?, &join(p, "n"))? as usize;
            Object::Algebra(matrix_algebra(f, n).map_err(core_err(p))?)
        }
        "tensor" => {
            let arr = as_array(body, p)?;
            let mut algs = Vec::new();
            for (i, x) in arr.iter().enumerate() {
                algs.push(expect_algebra(f, x, &index(p, i))?);
            }
            let mut it = algs.into_iter();
            let first = it
                .next()
                .ok_or_else(|| InputError::new(p, "empty tensor product"))?;
            Object::Algebra(it.try_fold(first, |acc, b| tensor_algebra(&acc, &b)).map_err(core_err(p))?)
        }
        "quat_inv" => {
            let (a, b) = two(f, body, p, "a", "b")?;
            let variant = parse_variant(body, p)?;
            let q = quaternion_make(f, &a, &b).map_err(core_err(p))?;
            Object::Involution(quaternion_involution(&q, variant).map_err(core_err(p))?)
        }
        "adjoint" => {
            let b = parse_bilinear(f, body, p)?;
            Object::Involution(adjoint_involution(&b).map_err(core_err(p))?)
        }
        "tensor_inv" => Object::Involution(tensor_all(&involution_list(f, body, p)?).map_err(core_err(p))?),
        "custom_inv" => {
            let alg = expect_algebra(f, get(body, p, "algebra")?, &join(p, "algebra"))?;
            let mp = join(p, "map");
            let m = parse_matrix(f, get(body, p, "map")?, &mp)?;
            Object::Involution(involution_check(&alg, m).map_err(core_err(&mp))?)
        }
        "quat_qp" => {
            let (c, d) = two(f, body, p, "c", "d")?;
            Object::Pair(quaternion_qp(f, &c, &d).map_err(core_err(p))?)
        }
        "adjoint_qp" => {
            let rho = parse_quadratic(f, body, p)?;
            Object::Pair(adjoint_qp(&rho).map_err(core_err(p))?)
        }
        "tensor_qp" => {
            let factors = involution_list(f, get(body, p, "factors")?, &join(p, "factors"))?;
            let pp = join(p, "pair");
            let pair = expect_pair(f, get(body, p, "pair")?, &pp)?;
            if factors.is_empty() {
                Object::Pair(pair)
            } else {
                let tau = tensor_all(&factors).map_err(core_err(p))?;
                Object::Pair(qp_tensor(&tau, &pair).map_err(core_err(p))?)
            }
        }
        "boxtimes" => {
            let list = involution_list(f, body, p)?;
            if list.len() != 2 {
                return Err(InputError::new(p, "expected exactly two involutions"));
            }
            Object::Pair(boxtimes(&list[0], &list[1]).map_err(core_err(p))?)
        }
        "semitrace" => {
            let ip = join(p, "involution");
            let inv = expect_involution(f, get(body, p, "involution")?, &ip)?;
            let lp = join(p, "ell");
            let ell = parse_vector(f, get(body, p, "ell")?, &lp)?;
            Object::Pair(semitrace_repr(&inv, &ell).map_err(core_err(&lp))?)
        }
        "decomposition" => {
            let factors = match body.get("factors") {
                Some(x) => involution_list(f, x, &join(p, "factors"))?,
                None => Vec::new(),
            };
            let pair = match body.get("pair") {
                None | Some(Value::Null) => None,
                Some(x) => Some(expect_pair(f, x, &join(p, "pair"))?),
            };
            if factors.is_empty() && pair.is_none() {
                return Err(InputError::new(p, "empty decomposition"));
            }
            for (i, s) in factors.iter().enumerate() {
                if s.algebra().dim() != 4 {
                    return Err(InputError::new(
                        &index(&join(p, "factors"), i),
                        "factors must be quaternion algebras",
                    ));
                }
            }
            Object::Decomposition { factors, pair }
        }
        _ => unreachable!(),
    })
}

fn two(f: &Field, body: &Value, p: &str, x: &str, y: &str) -> PResult<(Elem, Elem)> {
    let a = parse_elem(f, get(body, p, x)?, &join(p, x))?;
    let b = parse_elem(f, get(body, p, y)?, &join(p, y))?;
    Ok((a, b))
}

fn parse_variant(body: &Value, p: &str) -> PResult<QuatVariant> {
    let vp = join(p, "variant");
    match body.get("variant") {
        None => Ok(QuatVariant::Canonical),
        Some(v) => match as_str(v, &vp)? {
            "canonical" => Ok(QuatVariant::Canonical),
            "sigma" => Ok(QuatVariant::Sigma),
            "tau" => Ok(QuatVariant::Tau),
            other => Err(InputError::new(
                &vp,
                format!("unknown variant `{other}` (canonical, sigma or tau)"),
            )),
        },
    }
}

pub fn variant_name(v: QuatVariant) -> &'static str {
    match v {
        QuatVariant::Canonical => "canonical",
        QuatVariant::Sigma => "sigma",
        QuatVariant::Tau => "tau",
    }
}

fn involution_list(f: &Field, v: &Value, p: &str) -> PResult<Vec<Involution>> {
    as_array(v, p)?
        .iter()
        .enumerate()
        .map(|(i, x)| expect_involution(f, x, &index(p, i)))
        .collect()
}

pub fn expect_algebra(f: &Field, v: &Value, p: &str) -> PResult<AlgebraRef> {
    match parse_object(f, v, p)? {
        Object::Algebra(a) => Ok(a),
        o => Err(InputError::new(p, format!("expected an algebra, found {}", o.kind()))),
    }
}

pub fn expect_involution(f: &Field, v: &Value, p: &str) -> PResult<Involution> {
    match parse_object(f, v, p)? {
        Object::Involution(s) => Ok(s),
        o => Err(InputError::new(
            p,
            format!("expected an algebra with involution, found {}", o.kind()),
        )),
    }
}

pub fn expect_pair(f: &Field, v: &Value, p: &str) -> PResult<QuadPair> {
    match parse_object(f, v, p)? {
        Object::Pair(q) => Ok(q),
        o => Err(InputError::new(
            p,
            format!("expected an algebra with quadratic pair, found {}", o.kind()),
        )),
    }
}

/// `{"quat_inv": …}` record.
pub fn quat_inv_doc(f: &Field, a: &Elem, b: &Elem, v: QuatVariant) -> Value {
    json!({"quat_inv": {"a": elem_to_json(f, a), "b": elem_to_json(f, b), "variant": variant_name(v)}})
}

/// `{"quat_qp": …}` record.
pub fn quat_qp_doc(f: &Field, c: &Elem, d: &Elem) -> Value {
    json!({"quat_qp": {"c": elem_to_json(f, c), "d": elem_to_json(f, d)}})
}
