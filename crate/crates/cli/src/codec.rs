//! JSON encoding of field towers, elements, matrices and forms.
//!
//! Towers are nested records (`galois`, `ratfun`, `quotient`). Elements are
//! recursive coefficient arrays; rational functions are `{"num":…,"den":…}`.
//! Integers are accepted at every level as images of the prime field, and a
//! string naming a tower variable stands for that generator.

use std::fmt;

use qpair_core::field::Frac;
use qpair_core::forms::{BilinearForm, QuadraticForm};
use qpair_core::linalg::Matrix;
use qpair_core::{Elem, Field};
use serde_json::{json, Value};

/// A schema or invariant violation, with the JSON path where it occurred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: &str, message: impl Into<String>) -> Self {
        InputError {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "at `{}`: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for InputError {}

pub type PResult<T> = Result<T, InputError>;

pub fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

pub fn core_err(path: &str) -> impl Fn(qpair_core::Error) -> InputError + '_ {
    move |e| InputError::new(path, e.to_string())
}

pub fn get<'a>(v: &'a Value, path: &str, key: &str) -> PResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| InputError::new(path, format!("missing field `{key}`")))
}

pub fn as_u64(v: &Value, path: &str) -> PResult<u64> {
    v.as_u64()
        .ok_or_else(|| InputError::new(path, "expected a non-negative integer"))
}

pub fn as_array<'a>(v: &'a Value, path: &str) -> PResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| InputError::new(path, "expected an array"))
}

pub fn as_str<'a>(v: &'a Value, path: &str) -> PResult<&'a str> {
    v.as_str()
        .ok_or_else(|| InputError::new(path, "expected a string"))
}

/// Parses a tower record.
pub fn parse_field(v: &Value, path: &str) -> PResult<Field> {
    let kind = as_str(get(v, path, "kind")?, &join(path, "kind"))?;
    match kind {
        "galois" => {
            let p = as_u64(get(v, path, "p")?, &join(path, "p"))?;
            let k = match v.get("k") {
                Some(k) => as_u64(k, &join(path, "k"))? as u32,
                None => 1,
            };
            let modulus = match v.get("modulus") {
                None | Some(Value::Null) => None,
                Some(m) => {
                    let mp = join(path, "modulus");
                    let arr = as_array(m, &mp)?;
                    Some(
                        arr.iter()
                            .enumerate()
                            .map(|(i, c)| as_u64(c, &index(&mp, i)))
                            .collect::<PResult<Vec<u64>>>()?,
                    )
                }
            };
            let mpath = join(path, if modulus.is_some() { "modulus" } else { "p" });
            Field::galois(p, k, modulus).map_err(core_err(&mpath))
        }
        "ratfun" => {
            let base = parse_field(get(v, path, "base")?, &join(path, "base"))?;
            let var = match v.get("var") {
                Some(x) => as_str(x, &join(path, "var"))?.to_string(),
                None => "t".to_string(),
            };
            base.rational_function(&var).map_err(core_err(&join(path, "var")))
        }
        "quotient" => {
            let base = parse_field(get(v, path, "base")?, &join(path, "base"))?;
            let mp = join(path, "modulus");
            let arr = as_array(get(v, path, "modulus")?, &mp)?;
            let coeffs = arr
                .iter()
                .enumerate()
                .map(|(i, c)| parse_elem(&base, c, &index(&mp, i)))
                .collect::<PResult<Vec<Elem>>>()?;
            let var = match v.get("var") {
                Some(x) => as_str(x, &join(path, "var"))?.to_string(),
                None => "x".to_string(),
            };
            base.quotient(coeffs, &var).map_err(core_err(&mp))
        }
        other => Err(InputError::new(
            &join(path, "kind"),
            format!("unknown tower kind `{other}` (expected galois, ratfun or quotient)"),
        )),
    }
}

/// `GF(q)` optionally followed by `(t)` groups, e.g. `GF(4)`, `F2(t)`,
/// `GF(3)(t)(s)`; anything starting with `{` is read as a tower record.
pub fn parse_field_arg(s: &str) -> PResult<Field> {
    let s = s.trim();
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| InputError::new("field", e.to_string()))?;
        return parse_field(&v, "field");
    }
    let (q, rest) = if let Some(r) = s.strip_prefix("GF(") {
        let close = r
            .find(')')
            .ok_or_else(|| InputError::new("field", "unbalanced parenthesis"))?;
        (&r[..close], &r[close + 1..])
    } else if let Some(r) = s.strip_prefix('F') {
        let end = r.find('(').unwrap_or(r.len());
        (&r[..end], &r[end..])
    } else {
        return Err(InputError::new("field", format!("cannot read field `{s}`")));
    };
    let q: u64 = q
        .parse()
        .map_err(|_| InputError::new("field", format!("bad field size `{q}`")))?;
    let (p, k) = prime_power(q).ok_or_else(|| InputError::new("field", format!("{q} is not a prime power")))?;
    let mut f = Field::galois(p, k, None).map_err(core_err("field"))?;
    let mut rest = rest;
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')').map(|i| (&r[..i], &r[i + 1..])))
            .ok_or_else(|| InputError::new("field", format!("cannot read `{rest}`")))?;
        f = f.rational_function(inner.0).map_err(core_err("field"))?;
        rest = inner.1;
    }
    Ok(f)
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub fn field_to_json(f: &Field) -> Value {
    if let Some(g) = f.galois_level() {
        let mut v = json!({"kind": "galois", "p": g.p(), "k": g.k()});
        if g.k() > 1 {
            v["modulus"] = json!(g.modulus());
        }
        return v;
    }
    let base = f.base().expect("non-galois level has a base");
    let var = f.variable().unwrap_or_default();
    if f.is_rational_function() {
        json!({"kind": "ratfun", "base": field_to_json(base), "var": var})
    } else {
        let m: Vec<Value> = f
            .quotient_modulus()
            .unwrap()
            .iter()
            .map(|c| elem_to_json(base, c))
            .collect();
        json!({"kind": "quotient", "base": field_to_json(base), "modulus": m, "var": var})
    }
}

pub fn parse_elem(f: &Field, v: &Value, path: &str) -> PResult<Elem> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| InputError::new(path, "expected an integer"))?;
            Ok(f.from_int(i))
        }
        Value::String(s) => parse_named(f, s, path),
        Value::Array(arr) => {
            if let Some(g) = f.galois_level() {
                if arr.len() > g.k() as usize {
                    return Err(InputError::new(path, format!("at most {} digits", g.k())));
                }
                let digits = arr
                    .iter()
                    .enumerate()
                    .map(|(i, c)| as_u64(c, &index(path, i)).map(|d| d as u32))
                    .collect::<PResult<Vec<u32>>>()?;
                if digits.iter().any(|&d| d >= g.p()) {
                    return Err(InputError::new(path, "digit not reduced mod p"));
                }
                return Ok(Elem::Gf(g.from_digits(&digits)));
            }
            let base = f.base().unwrap();
            let coeffs = arr
                .iter()
                .enumerate()
                .map(|(i, c)| parse_elem(base, c, &index(path, i)))
                .collect::<PResult<Vec<Elem>>>()?;
            if f.is_rational_function() {
                f.fraction(coeffs, vec![base.one()]).map_err(core_err(path))
            } else {
                f.residue(coeffs).map_err(core_err(path))
            }
        }
        Value::Object(_) => {
            if !f.is_rational_function() {
                return Err(InputError::new(path, "fractions only exist at rational function levels"));
            }
            let base = f.base().unwrap();
            let poly = |key: &str| -> PResult<Vec<Elem>> {
                let p = join(path, key);
                as_array(get(v, path, key)?, &p)?
                    .iter()
                    .enumerate()
                    .map(|(i, c)| parse_elem(base, c, &index(&p, i)))
                    .collect()
            };
            let num = poly("num")?;
            let den = match v.get("den") {
                Some(_) => poly("den")?,
                None => vec![base.one()],
            };
            f.fraction(num, den).map_err(core_err(&join(path, "den")))
        }
        _ => Err(InputError::new(path, "expected an element")),
    }
}

fn parse_named(f: &Field, s: &str, path: &str) -> PResult<Elem> {
    let mut cur = f.clone();
    loop {
        if cur.variable() == Some(s) {
            let g = cur.generator().unwrap();
            return f.embed(&cur, &g).map_err(core_err(path));
        }
        match cur.base() {
            Some(b) => cur = b.clone(),
            None => return Err(InputError::new(path, format!("unknown variable `{s}`"))),
        }
    }
}

/// Canonical encoding: prime field elements as integers, `GF(p^k)` as digit
/// arrays, fractions always with both parts, residues as coefficient arrays.
pub fn elem_to_json(f: &Field, x: &Elem) -> Value {
    match x {
        Elem::Gf(v) => {
            let g = f.galois_level().expect("galois element at a galois level");
            if g.k() == 1 {
                json!(v)
            } else {
                let mut d = g.digits(*v);
                while d.last() == Some(&0) {
                    d.pop();
                }
                json!(d)
            }
        }
        Elem::Frac(fr) => {
            let base = f.base().unwrap();
            let Frac { num, den } = &**fr;
            json!({
                "num": num.iter().map(|c| elem_to_json(base, c)).collect::<Vec<_>>(),
                "den": den.iter().map(|c| elem_to_json(base, c)).collect::<Vec<_>>(),
            })
        }
        Elem::Res(r) => {
            let base = f.base().unwrap();
            json!(r.iter().map(|c| elem_to_json(base, c)).collect::<Vec<_>>())
        }
    }
}

pub fn parse_vector(f: &Field, v: &Value, path: &str) -> PResult<Vec<Elem>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_elem(f, x, &index(path, i)))
        .collect()
}

pub fn parse_matrix(f: &Field, v: &Value, path: &str) -> PResult<Matrix> {
    let rows = as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(f, r, &index(path, i)))
        .collect::<PResult<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(InputError::new(path, "empty matrix"));
    }
    Matrix::from_rows(rows).map_err(core_err(path))
}

pub fn vector_to_json(f: &Field, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|x| elem_to_json(f, x)).collect())
}

pub fn matrix_to_json(f: &Field, m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_to_json(f, r)).collect())
}

/// `{"upper": …}` (quadratic) or `{"gram": …}` (bilinear) as a quadratic form.
pub fn parse_quadratic(f: &Field, v: &Value, path: &str) -> PResult<QuadraticForm> {
    if let Some(u) = v.get("upper") {
        let p = join(path, "upper");
        let m = parse_matrix(f, u, &p)?;
        return QuadraticForm::new(f, m).map_err(core_err(&p));
    }
    if let Some(d) = v.get("diag") {
        let p = join(path, "diag");
        return Ok(QuadraticForm::diagonal(f, &parse_vector(f, d, &p)?));
    }
    Err(InputError::new(path, "expected `upper` or `diag`"))
}

pub fn parse_bilinear(f: &Field, v: &Value, path: &str) -> PResult<BilinearForm> {
    if let Some(g) = v.get("gram") {
        let p = join(path, "gram");
        let m = parse_matrix(f, g, &p)?;
        return BilinearForm::new(f, m).map_err(core_err(&p));
    }
    if let Some(d) = v.get("diag") {
        let p = join(path, "diag");
        return qpair_core::forms::diag_bilinear(f, &parse_vector(f, d, &p)?).map_err(core_err(&p));
    }
    if let Some(d) = v.get("pfister") {
        let p = join(path, "pfister");
        return qpair_core::forms::bilinear_pfister(f, &parse_vector(f, d, &p)?).map_err(core_err(&p));
    }
    Err(InputError::new(path, "expected `gram`, `diag` or `pfister`"))
}

pub fn quadratic_to_json(rho: &QuadraticForm) -> Value {
    json!({"upper": matrix_to_json(rho.field(), rho.upper())})
}

pub fn bilinear_to_json(b: &BilinearForm) -> Value {
    json!({"gram": matrix_to_json(b.field(), b.gram())})
}
