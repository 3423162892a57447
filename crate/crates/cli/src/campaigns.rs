//! Verification campaigns: instance generation, per-instance checkers and
//! the worker pool.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use qpair_core::algebra::{quaternion_make, AlgebraRef};
use qpair_core::decompose::{
    canonical_symplectic_decomposition, orthogonalize_decomposition, pfister_decomposition,
    pfister_from_split, symplectize, Certificate, PfisterReport, Structure, TotalDecomposition,
};
use qpair_core::forms::{
    bilinear_pfister, is_metabolic_bilinear, tensor_bq, verify_isometry, witt_decompose,
    Certification, Metabolic, QuadraticForm,
};
use qpair_core::involution::{
    canonical_involution, invol_isotropy_status, pfister_invariant, quaternion_involution,
    tensor_all, tensor_involutions, verify_isotropic, verify_metabolic, InvolIsotropy, Involution,
    InvolutionType, QuatVariant,
};
use qpair_core::linalg::{rank_of, vkron, Matrix, Vector};
use qpair_core::qpair::{
    adjoint_qp, boxtimes, check_semitrace_identity, find_semitrace, qp_isotropy_exhaustive,
    qp_isotropy_status, qp_tensor, quaternion_qp, semitrace_repr, verify_hyperbolic,
    verify_qp_isotropic, QpIsotropy, QuadPair,
};
use qpair_core::{Elem, Field};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::codec::{
    as_array, elem_to_json, field_to_json, get, index, join, matrix_to_json, parse_elem,
    parse_field, parse_quadratic, quadratic_to_json, vector_to_json, InputError, PResult,
};
use crate::input::{expect_involution, expect_pair, quat_inv_doc, quat_qp_doc};
use crate::report::{InstanceResult, Verdict, VerificationReport};

/// Largest exhaustive campaign accepted.
const MAX_INSTANCES: u128 = 5_000_000;
/// Exhaustive pair-isotropy search budget (vectors over `Sym`).
const PAIR_SEARCH_LIMIT: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Pfisterinvar,
    Hypiffquad,
    Explict,
    Choicef,
    DecompAssoc,
    Symplectize,
    Totdecompqp,
    Char2extra,
    Main,
    Pfisterfactquad,
}

impl Tag {
    pub const ALL: [Tag; 10] = [
        Tag::Pfisterinvar,
        Tag::Hypiffquad,
        Tag::Explict,
        Tag::Choicef,
        Tag::DecompAssoc,
        Tag::Symplectize,
        Tag::Totdecompqp,
        Tag::Char2extra,
        Tag::Main,
        Tag::Pfisterfactquad,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Pfisterinvar => "pfisterinvar",
            Tag::Hypiffquad => "hypiffquad",
            Tag::Explict => "explict",
            Tag::Choicef => "choicef",
            Tag::DecompAssoc => "decomp-assoc",
            Tag::Symplectize => "symplectize",
            Tag::Totdecompqp => "totdecompqp",
            Tag::Char2extra => "char2extra",
            Tag::Main => "main",
            Tag::Pfisterfactquad => "pfisterfactquad",
        }
    }

    pub fn parse(s: &str) -> Option<Tag> {
        Tag::ALL.into_iter().find(|t| t.name() == s)
    }

    fn needs_char2(self) -> bool {
        matches!(self, Tag::Char2extra | Tag::Main | Tag::Pfisterfactquad | Tag::Pfisterinvar)
    }
}

#[derive(Clone, Debug)]
pub enum Mode {
    /// Parameter ranges, `key=v1,v2;key2=v3`.
    Exhaustive(String),
    Random { seed: u64, count: usize },
    Instances(Vec<Value>),
}

impl Mode {
    fn to_json(&self) -> Value {
        match self {
            Mode::Exhaustive(r) => json!({"kind": "exhaustive", "ranges": r}),
            Mode::Random { seed, count } => json!({"kind": "random", "seed": seed, "count": count}),
            Mode::Instances(v) => json!({"kind": "instances", "count": v.len()}),
        }
    }

    fn label(&self) -> String {
        match self {
            Mode::Exhaustive(r) if r.is_empty() => "exhaustive".into(),
            Mode::Exhaustive(r) => format!("exhaustive[{r}]"),
            Mode::Random { seed, count } => format!("random[{seed},{count}]"),
            Mode::Instances(v) => format!("instances[{}]", v.len()),
        }
    }
}

/// Outcome of checking one instance.
#[derive(Clone, Debug)]
pub struct Checked {
    pub description: String,
    pub verdict: Verdict,
    pub evidence: Value,
}

impl Checked {
    fn pass(description: String, evidence: Value) -> Self {
        Checked {
            description,
            verdict: Verdict::Pass,
            evidence,
        }
    }
}

type Ranges = BTreeMap<String, Vec<String>>;

pub fn parse_ranges(s: &str) -> PResult<Ranges> {
    let mut out = Ranges::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| InputError::new("ranges", format!("`{part}` is not key=values")))?;
        let vals: Vec<String> = v
            .split(',')
            .map(|x| x.trim().to_string())
            .filter(|x| !x.is_empty())
            .collect();
        out.insert(k.trim().to_string(), vals);
    }
    Ok(out)
}

fn range_usizes(r: &Ranges, key: &str, default: &[usize]) -> PResult<Vec<usize>> {
    match r.get(key) {
        None => Ok(default.to_vec()),
        Some(v) => v
            .iter()
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| InputError::new(&join("ranges", key), format!("`{x}` is not a number")))
            })
            .collect(),
    }
}

fn default_variants(f: &Field) -> Vec<QuatVariant> {
    if f.characteristic() == 2 {
        vec![QuatVariant::Tau, QuatVariant::Canonical]
    } else {
        vec![QuatVariant::Tau, QuatVariant::Sigma]
    }
}

fn orthogonal_variants(f: &Field) -> Vec<QuatVariant> {
    if f.characteristic() == 2 {
        vec![QuatVariant::Tau]
    } else {
        vec![QuatVariant::Tau, QuatVariant::Sigma]
    }
}

fn range_variants(r: &Ranges, default: Vec<QuatVariant>) -> PResult<Vec<QuatVariant>> {
    match r.get("variants") {
        None => Ok(default),
        Some(v) => v
            .iter()
            .map(|x| match x.as_str() {
                "tau" => Ok(QuatVariant::Tau),
                "sigma" => Ok(QuatVariant::Sigma),
                "canonical" => Ok(QuatVariant::Canonical),
                _ => Err(InputError::new("ranges.variants", format!("unknown variant `{x}`"))),
            })
            .collect(),
    }
}

/// `[a,b)` is a quaternion algebra: `b ≠ 0` and `1 + 4a ≠ 0`.
pub fn quaternion_admissible(f: &Field, a: &Elem, b: &Elem) -> bool {
    !f.is_zero(b) && !f.is_zero(&f.add(&f.one(), &f.mul(&f.from_int(4), a)))
}

fn admissible_pairs(f: &Field, el: &[Elem]) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for a in el {
        for b in el {
            if quaternion_admissible(f, a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn product_len(lens: &[usize]) -> u128 {
    lens.iter().map(|&n| n as u128).product()
}

fn too_many(n: u128) -> PResult<()> {
    if n > MAX_INSTANCES {
        Err(InputError::new(
            "ranges",
            format!("{n} instances exceed the campaign limit of {MAX_INSTANCES}"),
        ))
    } else {
        Ok(())
    }
}

/// Cartesian power of `items`, first coordinate slowest.
fn tuples<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * items.len());
        for t in &out {
            for x in items {
                let mut t2 = t.clone();
                t2.push(x.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Instance documents for every parameter tuple drawn from `el`.
///
/// `el` is all of a finite field for exhaustive campaigns, or the elements of
/// bounded height for grid campaigns over function fields.
pub fn grid_docs(tag: Tag, f: &Field, ranges: &str, el: &[Elem]) -> PResult<Vec<Value>> {
    let r = parse_ranges(ranges)?;
    let j = |x: &Elem| elem_to_json(f, x);
    let pairs = admissible_pairs(f, el);
    let inv_choices = |variants: &[QuatVariant]| -> Vec<Value> {
        let mut out = Vec::new();
        for v in variants {
            for (a, b) in &pairs {
                out.push(quat_inv_doc(f, a, b, *v));
            }
        }
        out
    };
    let qp_choices: Vec<Value> = pairs.iter().map(|(c, d)| quat_qp_doc(f, c, d)).collect();
    let mut docs = Vec::new();
    match tag {
        Tag::Symplectize => {
            too_many(product_len(&[pairs.len(), pairs.len()]))?;
            for (a, b) in &pairs {
                for (c, d) in &pairs {
                    docs.push(json!({"symplectize": {"a": j(a), "b": j(b), "c": j(c), "d": j(d)}}));
                }
            }
        }
        Tag::Hypiffquad => {
            for n in range_usizes(&r, "dim", &[2, 4])? {
                let cells = n * (n + 1) / 2;
                too_many((el.len() as u128).saturating_pow(cells as u32))?;
                for t in tuples(el, cells) {
                    let rho = upper_form(f, n, &t);
                    if rho.is_nonsingular() {
                        docs.push(json!({"form": quadratic_to_json(&rho)}));
                    }
                }
            }
        }
        Tag::Explict => {
            let invs = inv_choices(&range_variants(&r, orthogonal_or_any(f))?);
            too_many(product_len(&[invs.len(), qp_choices.len()]))?;
            for s in &invs {
                for p in &qp_choices {
                    docs.push(json!({"tensor_qp": {"factors": [s], "pair": p}}));
                }
            }
        }
        Tag::Choicef => {
            let invs = inv_choices(&[QuatVariant::Canonical]);
            too_many(product_len(&[invs.len(), invs.len()]))?;
            for s in &invs {
                for t in &invs {
                    docs.push(json!({"boxtimes": [s, t]}));
                }
            }
        }
        Tag::DecompAssoc => {
            let invs = inv_choices(&range_variants(&r, orthogonal_or_any(f))?);
            too_many(product_len(&[invs.len(), invs.len(), qp_choices.len()]))?;
            for b in &invs {
                for c in &invs {
                    for a in &qp_choices {
                        docs.push(json!({"assoc": {"b": b, "c": c, "a": a}}));
                    }
                }
            }
        }
        Tag::Totdecompqp | Tag::Char2extra | Tag::Main | Tag::Pfisterfactquad => {
            let forward = match r.get("direction").map(|v| v.as_slice()) {
                None => false,
                Some([d]) if d == "reverse" => false,
                Some([d]) if d == "forward" && tag == Tag::Pfisterfactquad => true,
                Some(_) => {
                    return Err(InputError::new("ranges.direction", "expected reverse or forward"))
                }
            };
            if forward {
                let nonzero: Vec<&Elem> = el.iter().filter(|x| !f.is_zero(x)).collect();
                for m in range_usizes(&r, "fold", &[1])? {
                    too_many(product_len(&[nonzero.len(); 2]) * (nonzero.len() as u128).pow(m as u32))?;
                    let slots = tuples(&nonzero, m);
                    for s in &slots {
                        for c in el {
                            for l in &nonzero {
                                let sj: Vec<Value> = s.iter().map(|x| j(x)).collect();
                                docs.push(json!({"pfister": {"slots": sj, "c": j(c), "scale": j(l)}}));
                            }
                        }
                    }
                }
            } else {
                let invs = inv_choices(&range_variants(&r, default_variants(f))?);
                for deg in range_usizes(&r, "degree", &[4])? {
                    let m = degree_factors(deg)?;
                    too_many((invs.len() as u128).saturating_pow(m as u32) * qp_choices.len() as u128)?;
                    for fs in tuples(&invs, m - 1) {
                        for p in &qp_choices {
                            docs.push(json!({"decomposition": {"factors": fs, "pair": p}}));
                        }
                    }
                }
            }
        }
        Tag::Pfisterinvar => {
            let invs = inv_choices(&range_variants(&r, orthogonal_variants(f))?);
            for deg in range_usizes(&r, "degree", &[4])? {
                let m = degree_factors(deg)?;
                too_many((invs.len() as u128).saturating_pow(m as u32))?;
                for fs in tuples(&invs, m) {
                    docs.push(json!({"decomposition": {"factors": fs}}));
                }
            }
        }
    }
    Ok(docs)
}

fn orthogonal_or_any(f: &Field) -> Vec<QuatVariant> {
    if f.characteristic() == 2 {
        default_variants(f)
    } else {
        orthogonal_variants(f)
    }
}

/// Number of quaternion slots in a degree `2^m` algebra.
fn degree_factors(deg: usize) -> PResult<usize> {
    if deg < 2 || !deg.is_power_of_two() {
        return Err(InputError::new("ranges.degree", format!("degree {deg} is not a power of two ≥ 2")));
    }
    Ok(deg.trailing_zeros() as usize)
}

fn upper_form(f: &Field, n: usize, coeffs: &[Elem]) -> QuadraticForm {
    let mut m = Matrix::zeros(f, n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            m.set(i, j, coeffs[k].clone());
            k += 1;
        }
    }
    QuadraticForm::new(f, m).expect("square matrix")
}

/// Deterministic random instance documents.
pub fn random_docs(tag: Tag, f: &Field, seed: u64, count: usize, bound: usize) -> Vec<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = move || rng.next_u64();
    let bound = bound.max(1);
    let j = |x: &Elem| elem_to_json(f, x);
    let elem = |next: &mut dyn FnMut() -> u64| f.random_element(next, bound);
    let mut docs = Vec::with_capacity(count);
    let pick_pair = |next: &mut dyn FnMut() -> u64| loop {
        let a = f.random_element(next, bound);
        let b = f.random_nonzero(next, bound);
        if quaternion_admissible(f, &a, &b) {
            return (a, b);
        }
    };
    let pick_inv = |next: &mut dyn FnMut() -> u64, variants: &[QuatVariant]| {
        let v = variants[(next() % variants.len() as u64) as usize];
        let (a, b) = pick_pair(next);
        quat_inv_doc(f, &a, &b, v)
    };
    let pick_qp = |next: &mut dyn FnMut() -> u64| {
        let (c, d) = pick_pair(next);
        quat_qp_doc(f, &c, &d)
    };
    let any = orthogonal_or_any(f);
    for _ in 0..count {
        let doc = match tag {
            Tag::Symplectize => {
                let (a, b) = pick_pair(&mut next);
                let (c, d) = pick_pair(&mut next);
                json!({"symplectize": {"a": j(&a), "b": j(&b), "c": j(&c), "d": j(&d)}})
            }
            Tag::Hypiffquad => loop {
                let n = if next() % 2 == 0 { 2 } else { 4 };
                let coeffs: Vec<Elem> = (0..n * (n + 1) / 2).map(|_| elem(&mut next)).collect();
                let rho = upper_form(f, n, &coeffs);
                if rho.is_nonsingular() {
                    break json!({"form": quadratic_to_json(&rho)});
                }
            },
            Tag::Explict => {
                json!({"tensor_qp": {"factors": [pick_inv(&mut next, &any)], "pair": pick_qp(&mut next)}})
            }
            Tag::Choicef => {
                let c = [QuatVariant::Canonical];
                json!({"boxtimes": [pick_inv(&mut next, &c), pick_inv(&mut next, &c)]})
            }
            Tag::DecompAssoc => json!({"assoc": {
                "b": pick_inv(&mut next, &any),
                "c": pick_inv(&mut next, &any),
                "a": pick_qp(&mut next),
            }}),
            Tag::Totdecompqp | Tag::Char2extra | Tag::Main | Tag::Pfisterfactquad => {
                let m = 1 + (next() % 2) as usize;
                let vs = default_variants(f);
                let fs: Vec<Value> = (0..m).map(|_| pick_inv(&mut next, &vs)).collect();
                json!({"decomposition": {"factors": fs, "pair": pick_qp(&mut next)}})
            }
            Tag::Pfisterinvar => {
                let vs = orthogonal_variants(f);
                let fs: Vec<Value> = (0..2).map(|_| pick_inv(&mut next, &vs)).collect();
                json!({"decomposition": {"factors": fs}})
            }
        };
        docs.push(doc);
    }
    docs
}

fn workers() -> usize {
    std::env::var("QP_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Maps `work` over `items` on up to `QP_WORKERS` threads; results keep the
/// input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], work: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let n = workers().min(items.len()).max(1);
    if n == 1 {
        return items.iter().map(work).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..n {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = work(&items[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

pub fn run_verify(tag: Tag, f: &Field, mode: &Mode, bound: usize) -> PResult<VerificationReport> {
    let start = Instant::now();
    if tag.needs_char2() && f.characteristic() != 2 {
        return Err(InputError::new(
            "field",
            format!("{} needs characteristic 2", tag.name()),
        ));
    }
    let docs = match mode {
        Mode::Exhaustive(r) => {
            if f.size().is_none() {
                return Err(InputError::new(
                    "field",
                    format!("exhaustive campaigns need a finite field, not {f}"),
                ));
            }
            grid_docs(tag, f, r, &f.elements(0))?
        }
        Mode::Random { seed, count } => random_docs(tag, f, *seed, *count, bound),
        Mode::Instances(v) => v.clone(),
    };
    let results = par_map(&docs, |doc| {
        let t = Instant::now();
        let r = check_instance(tag, f, doc, bound);
        (r, t.elapsed())
    });
    let mut instances = Vec::with_capacity(docs.len());
    for (i, ((r, elapsed), doc)) in results.into_iter().zip(&docs).enumerate() {
        let c = r.map_err(|e| InputError::new(&index("instances", i), e.to_string()))?;
        instances.push(InstanceResult {
            index: i,
            description: c.description,
            instance: strip_field(doc),
            verdict: c.verdict,
            evidence: c.evidence,
            elapsed,
        });
    }
    Ok(VerificationReport {
        campaign: format!("{}@{}:{}", tag.name(), f, mode.label()),
        tag: tag.name().into(),
        field: f.to_string(),
        tower: field_to_json(f),
        mode: mode.to_json(),
        bound,
        instances,
        elapsed: start.elapsed(),
    })
}

fn strip_field(doc: &Value) -> Value {
    let mut d = doc.clone();
    if let Some(o) = d.as_object_mut() {
        o.remove("field");
    }
    d
}

/// The instance document together with its tower; enough to re-run the check.
pub fn with_field(f: &Field, doc: &Value) -> Value {
    let mut d = strip_field(doc);
    if let Some(o) = d.as_object_mut() {
        o.insert("field".into(), field_to_json(f));
    }
    d
}

/// Checks one instance document. Input errors (schema violations, failed
/// preconditions) are reported as `Err`; mathematical disagreements become
/// `Fail` verdicts that embed the document.
pub fn check_instance(tag: Tag, f: &Field, doc: &Value, bound: usize) -> PResult<Checked> {
    let f = match doc.get("field") {
        Some(v) => {
            let g = parse_field(v, "field")?;
            if &g != f {
                return Err(InputError::new("field", format!("instance is over {g}, campaign over {f}")));
            }
            g
        }
        None => f.clone(),
    };
    let f = &f;
    let fail = |reason: String| Verdict::Fail {
        counterexample: with_field(f, doc),
        reason,
    };
    let mut c = match tag {
        Tag::Symplectize => check_symplectize(f, doc)?,
        Tag::Hypiffquad => check_hypiffquad(f, doc, bound)?,
        Tag::Explict => check_explict(f, doc)?,
        Tag::Choicef => check_choicef(f, doc)?,
        Tag::DecompAssoc => check_assoc(f, doc)?,
        Tag::Totdecompqp => check_totdecomp(f, doc)?,
        Tag::Pfisterfactquad if doc.get("pfister").is_some() => check_forward(f, doc, bound)?,
        Tag::Char2extra | Tag::Main | Tag::Pfisterfactquad => check_pipeline(f, doc, bound)?,
        Tag::Pfisterinvar => check_pfisterinvar(f, doc, bound)?,
    };
    // internal: checkers put the failure reason in a Fail with a null witness
    if let Verdict::Fail { reason, .. } = &c.verdict {
        c.verdict = fail(reason.clone());
    }
    Ok(c)
}

fn failed(description: String, reason: impl Into<String>, evidence: Value) -> Checked {
    Checked {
        description,
        verdict: Verdict::Fail {
            counterexample: Value::Null,
            reason: reason.into(),
        },
        evidence,
    }
}

fn inconclusive(description: String, bound: usize, reason: impl Into<String>, evidence: Value) -> Checked {
    Checked {
        description,
        verdict: Verdict::Inconclusive {
            bound,
            reason: reason.into(),
        },
        evidence,
    }
}

fn body<'a>(doc: &'a Value, key: &str) -> PResult<&'a Value> {
    get(doc, "", key)
}

fn elem_at(f: &Field, v: &Value, path: &str, key: &str) -> PResult<Elem> {
    parse_elem(f, get(v, path, key)?, &join(path, key))
}

fn canonical_quaternion(f: &Field, a: &Elem, b: &Elem) -> qpair_core::Result<Involution> {
    canonical_involution(&quaternion_make(f, a, b)?)
}

fn check_symplectize(f: &Field, doc: &Value) -> PResult<Checked> {
    let b0 = body(doc, "symplectize")?;
    let [a, b, c, d] = ["a", "b", "c", "d"].map(|k| elem_at(f, b0, "symplectize", k));
    let (a, b, c, d) = (a?, b?, c?, d?);
    if !quaternion_admissible(f, &a, &b) || !quaternion_admissible(f, &c, &d) {
        return Err(InputError::new("symplectize", "parameters do not define quaternion algebras"));
    }
    let desc = format!(
        "[{}·|·{}) ⊠ [{}·|·{})",
        f.format(&a),
        f.format(&b),
        f.format(&c),
        f.format(&d)
    );
    let sy = match symplectize(f, &a, &b, &c, &d) {
        Ok(s) => s,
        Err(e) => return Ok(failed(desc, e.to_string(), Value::Null)),
    };
    let four = f.from_int(4);
    let want_a = f.add(&f.add(&a, &c), &f.mul(&four, &f.mul(&a, &c)));
    let want_d = f.mul(&b, &d);
    let evidence = json!({
        "target": {"a": elem_to_json(f, &sy.a), "b": elem_to_json(f, &sy.b),
                   "c": elem_to_json(f, &sy.c), "d": elem_to_json(f, &sy.d)},
        "map": matrix_to_json(f, sy.cert.map()),
    });
    if sy.a != want_a || sy.b != b || sy.c != c || sy.d != want_d {
        return Ok(failed(desc, "target parameters differ from (a+c+4ac, b, c, bd)", evidence));
    }
    // rebuild both sides independently of the construction
    let built = (|| -> qpair_core::Result<(QuadPair, QuadPair)> {
        let src = boxtimes(&canonical_quaternion(f, &a, &b)?, &canonical_quaternion(f, &c, &d)?)?;
        let tau = quaternion_involution(&quaternion_make(f, &want_a, &b)?, QuatVariant::Tau)?;
        let tgt = qp_tensor(&tau, &quaternion_qp(f, &c, &want_d)?)?;
        Ok((src, tgt))
    })();
    let (src, tgt) = match built {
        Ok(x) => x,
        Err(e) => return Ok(failed(desc, e.to_string(), evidence)),
    };
    let cert = Certificate::new(Structure::Pair(src), Structure::Pair(tgt), sy.cert.map().clone());
    Ok(match cert.check_exhaustive() {
        Ok(()) => Checked::pass(desc, evidence),
        Err(e) => failed(desc, e.to_string(), evidence),
    })
}

fn pair_status(p: &QuadPair, bound: usize) -> qpair_core::Result<(QpIsotropy, bool)> {
    let f = p.field();
    let sym = p.involution().sym();
    let exhaustive = f
        .size()
        .and_then(|q| q.checked_pow(sym.len() as u32))
        .is_some_and(|n| n <= PAIR_SEARCH_LIMIT);
    if exhaustive {
        Ok((qp_isotropy_exhaustive(p, &sym), true))
    } else {
        Ok((qp_isotropy_status(p, bound)?, false))
    }
}

fn check_hypiffquad(f: &Field, doc: &Value, bound: usize) -> PResult<Checked> {
    let rho = parse_quadratic(f, body(doc, "form")?, "form")?;
    if !rho.is_nonsingular() {
        return Err(InputError::new("form", "form is singular"));
    }
    let desc = rho.format();
    let run = || -> qpair_core::Result<Checked> {
        let w = witt_decompose(&rho, bound)?;
        let proven = !matches!(w.certified, Certification::SearchBound(_));
        let form_iso = if w.witt_index > 0 || proven { Some(w.witt_index > 0) } else { None };
        let form_hyp = if w.is_hyperbolic() || proven { Some(w.is_hyperbolic()) } else { None };
        let p = adjoint_qp(&rho)?;
        let (status, exhaustive) = pair_status(&p, bound)?;
        let (kind, witness, valid) = match &status {
            QpIsotropy::Hyperbolic(e) => ("hyperbolic", vector_to_json(f, e), verify_hyperbolic(&p, e)),
            QpIsotropy::Isotropic(s) => ("isotropic", vector_to_json(f, s), verify_qp_isotropic(&p, s)),
            QpIsotropy::AnisotropicProven(m) => ("anisotropic", json!(m), true),
            QpIsotropy::NoWitnessUpToBound(_) => ("no witness", Value::Null, true),
        };
        let evidence = json!({
            "form": {"witt_index": w.witt_index, "hyperbolic": w.is_hyperbolic(),
                     "certified": format!("{:?}", w.certified)},
            "pair": {"status": kind, "witness": witness,
                     "method": if exhaustive { "exhaustive" } else { "search" }},
        });
        if !valid {
            return Ok(failed(desc.clone(), "pair witness does not verify", evidence));
        }
        let pair_iso = status.is_isotropic();
        let pair_hyp = match status {
            QpIsotropy::Hyperbolic(_) => Some(true),
            _ if exhaustive => Some(false),
            QpIsotropy::AnisotropicProven(_) => Some(false),
            _ => None,
        };
        for (what, a, b) in [("isotropy", form_iso, pair_iso), ("hyperbolicity", form_hyp, pair_hyp)] {
            if let (Some(x), Some(y)) = (a, b) {
                if x != y {
                    return Ok(failed(
                        desc.clone(),
                        format!("{what}: form says {x}, adjoint pair says {y}"),
                        evidence,
                    ));
                }
            }
        }
        if [form_iso, pair_iso, form_hyp, pair_hyp].iter().any(Option::is_none) {
            return Ok(inconclusive(desc.clone(), bound, "a verdict is open at this bound", evidence));
        }
        Ok(Checked::pass(desc.clone(), evidence))
    };
    Ok(run().unwrap_or_else(|e| failed(desc.clone(), e.to_string(), Value::Null)))
}

fn involution_list(f: &Field, v: &Value, path: &str) -> PResult<Vec<Involution>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| expect_involution(f, x, &index(path, i)))
        .collect()
}

fn algebra_summary(a: &AlgebraRef) -> String {
    format!("dim {}", a.dim())
}

fn check_explict(f: &Field, doc: &Value) -> PResult<Checked> {
    let b = body(doc, "tensor_qp")?;
    let factors = involution_list(f, get(b, "tensor_qp", "factors")?, "tensor_qp.factors")?;
    let p = expect_pair(f, get(b, "tensor_qp", "pair")?, "tensor_qp.pair")?;
    if factors.is_empty() {
        return Err(InputError::new("tensor_qp.factors", "need at least one factor"));
    }
    let tau = tensor_all(&factors).map_err(|e| InputError::new("tensor_qp.factors", e.to_string()))?;
    if f.characteristic() != 2 && tau.kind() != InvolutionType::Orthogonal {
        return Err(InputError::new("tensor_qp.factors", "τ must be orthogonal outside characteristic 2"));
    }
    let desc = format!("(B,τ) ⊗ (A,σ,f), B of {}", algebra_summary(tau.algebra()));
    let run = || -> qpair_core::Result<Option<String>> {
        let g = qp_tensor(&tau, &p)?;
        if g.involution().map() != &tau.map().kron(f, p.involution().map()) {
            return Ok(Some("involution is not τ ⊗ σ".into()));
        }
        check_semitrace_identity(&g)?;
        let bt = tau.algebra();
        for s1 in tau.sym() {
            let t1 = bt.reduced_trace(&s1)?;
            for s2 in p.involution().sym() {
                if g.eval(&vkron(f, &s1, &s2)) != f.mul(&t1, &p.eval(&s2)) {
                    return Ok(Some("g(s₁⊗s₂) ≠ Trd(s₁)f(s₂)".into()));
                }
            }
        }
        Ok(None)
    };
    Ok(match run() {
        Ok(None) => Checked::pass(desc, json!({"checked": "g(s₁⊗s₂) = Trd(s₁)f(s₂) on Sym bases"})),
        Ok(Some(r)) => failed(desc, r, Value::Null),
        Err(e) => failed(desc, e.to_string(), Value::Null),
    })
}

fn check_choicef(f: &Field, doc: &Value) -> PResult<Checked> {
    let list = involution_list(f, body(doc, "boxtimes")?, "boxtimes")?;
    let [tau, sigma] = list.as_slice() else {
        return Err(InputError::new("boxtimes", "expected exactly two involutions"));
    };
    if tau.kind() != InvolutionType::Symplectic || sigma.kind() != InvolutionType::Symplectic {
        return Err(InputError::new("boxtimes", "both involutions must be symplectic"));
    }
    let desc = "(B,τ) ⊠ (C,σ)".to_string();
    let run = || -> qpair_core::Result<Option<String>> {
        let h = boxtimes(tau, sigma)?;
        check_semitrace_identity(&h)?;
        if f.characteristic() != 2 {
            let half = f.inv(&f.from_int(2))?;
            for s in h.involution().sym() {
                if h.eval(&s) != f.mul(&half, &h.algebra().reduced_trace(&s)?) {
                    return Ok(Some("h ≠ ½Trd".into()));
                }
            }
            return Ok(None);
        }
        for s1 in tau.sym() {
            for s2 in sigma.sym() {
                if !f.is_zero(&h.eval(&vkron(f, &s1, &s2))) {
                    return Ok(Some("h(s₁⊗s₂) ≠ 0".into()));
                }
            }
        }
        // every semi-trace of σ, shifted by each symmetric basis element
        let ell = find_semitrace(sigma)?;
        let c = sigma.algebra();
        let mut choices = vec![ell.clone()];
        for s in sigma.sym() {
            choices.push(c.add(&ell, &s));
        }
        for l in choices {
            let g = qp_tensor(tau, &semitrace_repr(sigma, &l)?)?;
            if !g.same_semitrace(&h) {
                return Ok(Some("τ ⊗ (σ, f) depends on the semi-trace f".into()));
            }
        }
        Ok(None)
    };
    Ok(match run() {
        Ok(None) => Checked::pass(desc, json!({"checked": "h(s₁⊗s₂) = 0 and choice independence"})),
        Ok(Some(r)) => failed(desc, r, Value::Null),
        Err(e) => failed(desc, e.to_string(), Value::Null),
    })
}

fn check_assoc(f: &Field, doc: &Value) -> PResult<Checked> {
    let b0 = body(doc, "assoc")?;
    let b = expect_involution(f, get(b0, "assoc", "b")?, "assoc.b")?;
    let c = expect_involution(f, get(b0, "assoc", "c")?, "assoc.c")?;
    let a = expect_pair(f, get(b0, "assoc", "a")?, "assoc.a")?;
    if f.characteristic() != 2 {
        for (k, s) in [("b", &b), ("c", &c)] {
            if s.kind() != InvolutionType::Orthogonal {
                return Err(InputError::new(&join("assoc", k), "must be orthogonal outside characteristic 2"));
            }
        }
    }
    let desc = "((B⊗C) ⊗ A) vs (B ⊗ (C⊗A))".to_string();
    let run = || -> qpair_core::Result<()> {
        let left = qp_tensor(&tensor_involutions(&b, &c)?, &a)?;
        let right = qp_tensor(&b, &qp_tensor(&c, &a)?)?;
        let n = left.algebra().dim();
        Certificate::new(Structure::Pair(left), Structure::Pair(right), Matrix::identity(f, n)).check()
    };
    Ok(match run() {
        Ok(()) => Checked::pass(desc, json!({"map": "identity"})),
        Err(e) => failed(desc, e.to_string(), Value::Null),
    })
}

fn parse_decomposition(f: &Field, doc: &Value) -> PResult<(Vec<Involution>, Option<QuadPair>)> {
    let b = body(doc, "decomposition")?;
    let factors = match b.get("factors") {
        Some(x) => involution_list(f, x, "decomposition.factors")?,
        None => Vec::new(),
    };
    for (i, s) in factors.iter().enumerate() {
        if s.algebra().dim() != 4 {
            return Err(InputError::new(
                &index("decomposition.factors", i),
                "factors must be quaternion algebras",
            ));
        }
    }
    let pair = match b.get("pair") {
        None | Some(Value::Null) => None,
        Some(x) => Some(expect_pair(f, x, "decomposition.pair")?),
    };
    Ok((factors, pair))
}

fn describe_decomposition(factors: &[Involution], pair: Option<&QuadPair>) -> String {
    let mut parts: Vec<String> = factors
        .iter()
        .map(|s| match s.kind() {
            InvolutionType::Orthogonal => "orth".to_string(),
            InvolutionType::Symplectic => "symp".to_string(),
        })
        .collect();
    if pair.is_some() {
        parts.push("pair".into());
    }
    parts.join(" ⊗ ")
}

/// Checks a decomposition's certificate up to dimension 64; beyond that only
/// the product side is assembled.
fn verify_decomposition(td: &TotalDecomposition) -> qpair_core::Result<()> {
    if td.map.rows() <= 64 {
        td.verify()
    } else {
        td.product().map(|_| ())
    }
}

fn check_totdecomp(f: &Field, doc: &Value) -> PResult<Checked> {
    let (factors, pair) = parse_decomposition(f, doc)?;
    if pair.is_none() {
        return Err(InputError::new("decomposition.pair", "a pair factor is required"));
    }
    let desc = describe_decomposition(&factors, pair.as_ref());
    let run = || -> qpair_core::Result<Option<String>> {
        let td = orthogonalize_decomposition(&factors, pair.as_ref())?;
        if td.factors.iter().any(|s| !s.is_orthogonal()) {
            return Ok(Some("a factor is still symplectic".into()));
        }
        verify_decomposition(&td)?;
        if f.characteristic() == 2 && !td.factors.is_empty() {
            let back = canonical_symplectic_decomposition(&td)?;
            verify_decomposition(&back)?;
        }
        Ok(None)
    };
    Ok(match run() {
        Ok(None) => Checked::pass(desc, json!({"orthogonalized": true})),
        Ok(Some(r)) => failed(desc, r, Value::Null),
        Err(e) => failed(desc, e.to_string(), Value::Null),
    })
}

fn check_pipeline(f: &Field, doc: &Value, bound: usize) -> PResult<Checked> {
    let (factors, pair) = parse_decomposition(f, doc)?;
    if pair.is_none() {
        return Err(InputError::new("decomposition.pair", "a pair factor is required"));
    }
    let k = match doc.get("splitting") {
        None | Some(Value::Null) => f.clone(),
        Some(v) => {
            let k = parse_field(v, "splitting")?;
            if !f.is_subfield_of(&k) {
                return Err(InputError::new("splitting", format!("{k} does not contain {f}")));
            }
            k
        }
    };
    let desc = format!("{} over {}", describe_decomposition(&factors, pair.as_ref()), k);
    let td = match orthogonalize_decomposition(&factors, pair.as_ref()) {
        Ok(td) => td,
        Err(e) => return Ok(failed(desc, e.to_string(), Value::Null)),
    };
    Ok(match pfister_from_split(&td, &k, bound) {
        Err(e) => failed(desc, e.to_string(), Value::Null),
        Ok(PfisterReport::Inconclusive(m)) => inconclusive(desc, bound, m, Value::Null),
        Ok(r) => recheck_pfister(&k, desc, &r),
    })
}

/// Re-checks a pipeline result on its own evidence.
pub fn recheck_report(k: &Field, r: &PfisterReport) -> Checked {
    recheck_pfister(k, String::new(), r)
}

fn recheck_pfister(k: &Field, desc: String, r: &PfisterReport) -> Checked {
    match r {
        PfisterReport::Confirmed {
            rho,
            phi,
            lambda,
            pi,
            witness,
        } => {
            let evidence = json!({
                "result": "confirmed",
                "rho": quadratic_to_json(rho),
                "phi": crate::codec::bilinear_to_json(phi),
                "lambda": elem_to_json(k, lambda),
                "pi": quadratic_to_json(pi),
                "witness": matrix_to_json(k, witness),
            });
            let standard = tensor_bq(phi, pi).map(|s| s.scale(lambda));
            let ok = standard.is_ok_and(|s| verify_isometry(&s, rho, witness));
            let pfister_pi = pi.dim() == 2 && pi.upper().get(0, 0) == &k.one() && pi.upper().get(0, 1) == &k.one();
            if ok && pfister_pi {
                Checked::pass(desc, evidence)
            } else {
                failed(desc, "ρ ≄ λ(φ ⊗ π) under the reported witness", evidence)
            }
        }
        PfisterReport::ConfirmedHyperbolic {
            rho,
            phi,
            lagrangian,
        } => {
            let lag: Vec<Value> = lagrangian.iter().map(|v| vector_to_json(k, v)).collect();
            let evidence = json!({
                "result": "hyperbolic",
                "rho": quadratic_to_json(rho),
                "phi": crate::codec::bilinear_to_json(phi),
                "lagrangian": lag,
            });
            if is_lagrangian(rho, lagrangian) {
                Checked::pass(desc, evidence)
            } else {
                failed(desc, "reported Lagrangian is not totally singular of half dimension", evidence)
            }
        }
        PfisterReport::Inconclusive(m) => inconclusive(desc, 0, m.clone(), Value::Null),
    }
}

fn is_lagrangian(rho: &QuadraticForm, l: &[Vector]) -> bool {
    let k = rho.field();
    l.len() * 2 == rho.dim()
        && rank_of(k, rho.dim(), l) == l.len()
        && l.iter().all(|x| k.is_zero(&rho.eval(x)))
        && l.iter()
            .enumerate()
            .all(|(i, x)| l[i + 1..].iter().all(|y| k.is_zero(&rho.polar_eval(x, y))))
}

fn check_forward(f: &Field, doc: &Value, bound: usize) -> PResult<Checked> {
    let b = body(doc, "pfister")?;
    let slots: Vec<Elem> = as_array(get(b, "pfister", "slots")?, "pfister.slots")?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_elem(f, x, &index("pfister.slots", i)))
        .collect::<PResult<_>>()?;
    let c = elem_at(f, b, "pfister", "c")?;
    let lambda = match b.get("scale") {
        Some(x) => parse_elem(f, x, "pfister.scale")?,
        None => f.one(),
    };
    if slots.iter().any(|s| f.is_zero(s)) || f.is_zero(&lambda) {
        return Err(InputError::new("pfister", "slots and scale must be nonzero"));
    }
    let desc = format!(
        "{}·(⟨⟨{}⟩⟩ ⊗ [1,{}])",
        f.format(&lambda),
        slots.iter().map(|s| f.format(s)).collect::<Vec<_>>().join(","),
        f.format(&c)
    );
    let run = || -> qpair_core::Result<Option<String>> {
        let pi = QuadraticForm::binary(f, f.one(), c.clone()).scale(&lambda);
        let rho = tensor_bq(&bilinear_pfister(f, &slots)?, &pi)?;
        let td = pfister_decomposition(&rho, &slots, &pi, bound)?;
        if td.factors.iter().any(|s| !s.is_orthogonal()) {
            return Ok(Some("a factor is not orthogonal".into()));
        }
        td.verify()?;
        Ok(None)
    };
    Ok(match run() {
        Ok(None) => Checked::pass(desc, json!({"decomposition": "Ad(⟨1,bᵢ⟩) ⊗ Ad(λ[1,c])"})),
        Ok(Some(r)) => failed(desc, r, Value::Null),
        Err(e) => failed(desc, e.to_string(), Value::Null),
    })
}

fn check_pfisterinvar(f: &Field, doc: &Value, bound: usize) -> PResult<Checked> {
    let (factors, pair) = parse_decomposition(f, doc)?;
    if pair.is_some() || factors.is_empty() {
        return Err(InputError::new("decomposition", "expected involution factors only"));
    }
    if let Some(i) = factors.iter().position(|s| !s.is_orthogonal()) {
        return Err(InputError::new(&index("decomposition.factors", i), "factor is not orthogonal"));
    }
    let desc = describe_decomposition(&factors, None);
    let run = || -> qpair_core::Result<Checked> {
        let phi = pfister_invariant(&factors, bound)?;
        let slots: Vec<Value> = phi
            .pfister_slots()
            .unwrap_or(&[])
            .iter()
            .map(|x| elem_to_json(f, x))
            .collect();
        let (phi_iso, phi_metabolic) = match is_metabolic_bilinear(&phi, bound)? {
            Metabolic::Yes(_) => (Some(true), true),
            Metabolic::No(_) => (Some(false), false),
            Metabolic::Unknown(_) => (None, false),
        };
        let s = tensor_all(&factors)?;
        let status = invol_isotropy_status(&s, bound)?;
        let (kind, witness, valid) = match &status {
            InvolIsotropy::Metabolic(e) => ("metabolic", vector_to_json(f, e), verify_metabolic(&s, e)),
            InvolIsotropy::Isotropic(a) => ("isotropic", vector_to_json(f, a), verify_isotropic(&s, a)),
            InvolIsotropy::AnisotropicProven(m) => ("anisotropic", json!(m), true),
            InvolIsotropy::NoWitnessUpToBound(_) => ("no witness", Value::Null, true),
        };
        let evidence = json!({
            "phi": {"slots": slots, "metabolic": phi_metabolic, "isotropic": phi_iso},
            "involution": {"status": kind, "witness": witness},
        });
        if !valid {
            return Ok(failed(desc.clone(), "involution witness does not verify", evidence));
        }
        Ok(match (phi_iso, status.is_isotropic()) {
            (Some(x), Some(y)) if x != y => failed(
                desc.clone(),
                format!("Pfister invariant isotropic: {x}, involution isotropic: {y}"),
                evidence,
            ),
            (Some(_), Some(_)) => Checked::pass(desc.clone(), evidence),
            _ => inconclusive(desc.clone(), bound, "isotropy is open at this bound", evidence),
        })
    };
    Ok(run().unwrap_or_else(|e| failed(desc.clone(), e.to_string(), Value::Null)))
}
