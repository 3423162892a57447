//! Isomorphism certificates, normal forms of quaternion factors, and the
//! constructive decompositions built from them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    find_zero_divisor, matrix_algebra, quaternion_make, split_quaternion_iso, AlgebraRef,
    Provenance, Splitting,
};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{
    bilinear_pfister, is_metabolic_bilinear, tensor_bq, verify_isometry, BilinearForm, Metabolic,
    QuadraticForm,
};
use crate::involution::{
    adjoint_involution, apply_map, canonical_involution, pfister_invariant, quaternion_involution,
    tensor_all, Involution, InvolutionType, Origin, QuatVariant,
};
use crate::linalg::{dot, vkron, Matrix, Vector};
use crate::qpair::{
    adjoint_qp, boxtimes, form_from_gram, qp_tensor, quaternion_qp, recover_gram, semitrace_repr,
    QuadPair,
};
use crate::search::{combine, find_vector, ScalarSet, SearchOutcome};

/// One side of an isomorphism claim.
#[derive(Clone, Debug)]
pub enum Structure {
    Algebra(AlgebraRef),
    Involution(Involution),
    Pair(QuadPair),
}

impl Structure {
    pub fn algebra(&self) -> &AlgebraRef {
        match self {
            Structure::Algebra(a) => a,
            Structure::Involution(s) => s.algebra(),
            Structure::Pair(p) => p.algebra(),
        }
    }

    pub fn involution(&self) -> Option<&Involution> {
        match self {
            Structure::Algebra(_) => None,
            Structure::Involution(s) => Some(s),
            Structure::Pair(p) => Some(p.involution()),
        }
    }

    pub fn pair(&self) -> Option<&QuadPair> {
        match self {
            Structure::Pair(p) => Some(p),
            _ => None,
        }
    }

    fn level(&self) -> CertKind {
        match self {
            Structure::Algebra(_) => CertKind::AlgebraIso,
            Structure::Involution(_) => CertKind::InvolutionIso,
            Structure::Pair(_) => CertKind::QuadraticPairIso,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    AlgebraIso,
    InvolutionIso,
    QuadraticPairIso,
}

/// A claimed isomorphism `Φ: source → target`, given by its matrix on the
/// coordinates of the underlying algebras.
#[derive(Clone, Debug)]
pub struct Certificate {
    source: Structure,
    target: Structure,
    map: Matrix,
}

impl Certificate {
    pub fn new(source: Structure, target: Structure, map: Matrix) -> Certificate {
        Certificate {
            source,
            target,
            map,
        }
    }

    pub fn source(&self) -> &Structure {
        &self.source
    }

    pub fn target(&self) -> &Structure {
        &self.target
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn kind(&self) -> CertKind {
        self.source.level()
    }

    pub fn apply(&self, x: &[Elem]) -> Vector {
        apply_map(self.source.algebra().field(), &self.map, x)
    }

    /// The independent checker.
    ///
    /// Multiplicativity is tested on (generator, basis) pairs after the
    /// source's basis words are confirmed to be products of its generators;
    /// the involution condition on generators; the semi-trace condition on a
    /// basis of `Sym`.
    pub fn check(&self) -> Result<()> {
        let src = self.source.algebra();
        let tgt = self.target.algebra();
        let f = src.field();
        if f != tgt.field() {
            return Err(Error::FieldMismatch);
        }
        if self.source.level() != self.target.level() {
            return Err(Error::axiom("certificate", "source and target carry different structure"));
        }
        let n = src.dim();
        if tgt.dim() != n || self.map.rows() != n || self.map.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: tgt.dim(),
            });
        }
        if self.apply(&src.one()) != tgt.one() {
            return Err(Error::axiom("Φ(1) = 1", "identity not preserved"));
        }
        let gens = src.generators();
        for (k, w) in src.basis_words().iter().enumerate() {
            let mut x = src.one();
            for g in w {
                x = src.mul(&x, &gens[*g]);
            }
            if x != src.basis(k) {
                return Err(Error::axiom("basis words", format!("word for {}", src.labels()[k])));
            }
        }
        let images: Vec<Vector> = (0..n).map(|j| self.map.col(j)).collect();
        for (gi, g) in gens.iter().enumerate() {
            let pg = self.apply(g);
            for (j, pj) in images.iter().enumerate() {
                if self.apply(&src.mul(g, &src.basis(j))) != tgt.mul(&pg, pj) {
                    return Err(Error::axiom(
                        "Φ(xy) = Φ(x)Φ(y)",
                        format!("generator {gi}, basis element {}", src.labels()[j]),
                    ));
                }
            }
        }
        if self.map.rank(f) != n {
            return Err(Error::axiom("Φ bijective", "map is singular"));
        }
        if let (Some(s), Some(t)) = (self.source.involution(), self.target.involution()) {
            for (gi, g) in gens.iter().enumerate() {
                if self.apply(&s.apply(g)) != t.apply(&self.apply(g)) {
                    return Err(Error::axiom("Φ∘σ = τ∘Φ", format!("generator {gi}")));
                }
            }
        }
        if let (Some(p), Some(q)) = (self.source.pair(), self.target.pair()) {
            for s in p.involution().sym() {
                if p.eval(&s) != q.eval(&self.apply(&s)) {
                    return Err(Error::axiom(
                        "f = g∘Φ",
                        format!("at {}", src.format_elem(&s)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Like [`Certificate::check`], but multiplicativity and the involution
    /// condition are tested on every basis element (all `n²` products).
    pub fn check_exhaustive(&self) -> Result<()> {
        self.check()?;
        let src = self.source.algebra();
        let tgt = self.target.algebra();
        let n = src.dim();
        let images: Vec<Vector> = (0..n).map(|j| self.map.col(j)).collect();
        for i in 0..n {
            let bi = src.basis(i);
            for (j, pj) in images.iter().enumerate() {
                if self.apply(&src.mul(&bi, &src.basis(j))) != tgt.mul(&images[i], pj) {
                    return Err(Error::axiom(
                        "Φ(xy) = Φ(x)Φ(y)",
                        format!("{} · {}", src.labels()[i], src.labels()[j]),
                    ));
                }
            }
        }
        if let (Some(s), Some(t)) = (self.source.involution(), self.target.involution()) {
            for (i, pi) in images.iter().enumerate() {
                if self.apply(&s.apply(&src.basis(i))) != t.apply(pi) {
                    return Err(Error::axiom("Φ∘σ = τ∘Φ", format!("at {}", src.labels()[i])));
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<Certificate> {
        let f = self.source.algebra().field();
        let inv = self
            .map
            .inverse(f)
            .ok_or_else(|| Error::axiom("Φ bijective", "map is singular"))?;
        Ok(Certificate::new(self.target.clone(), self.source.clone(), inv))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Certificate) -> Result<Certificate> {
        let f = self.source.algebra().field();
        if self.map.rows() != next.map.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.map.rows(),
                found: next.map.cols(),
            });
        }
        Ok(Certificate::new(
            self.source.clone(),
            next.target.clone(),
            next.map.mul(f, &self.map),
        ))
    }
}

/// `x ↦ Trd(x)·1 − x`.
pub fn canonical_map(alg: &AlgebraRef) -> Result<Matrix> {
    let f = alg.field();
    let t = alg.trd().ok_or_else(|| Error::pre("canonical_map", "no reduced trace"))?;
    let n = alg.dim();
    let one = alg.one();
    Ok(Matrix::from_fn(n, n, |i, j| {
        let v = f.mul(&t[j], &one[i]);
        if i == j {
            f.sub(&v, &f.one())
        } else {
            v
        }
    }))
}

/// An invertible element of `span(space)`: basis vectors first, then a
/// bounded lexicographic search.
pub fn find_invertible(alg: &AlgebraRef, space: &[Vector], bound: usize) -> Option<Vector> {
    if let Some(v) = space.iter().find(|v| alg.is_invertible(v)) {
        return Some(v.clone());
    }
    let f = alg.field();
    let scalars = ScalarSet::new(f, bound.max(1));
    match find_vector(f, space.len(), &scalars, true, 200_000, |c| {
        let v = combine(f, c, space);
        alg.is_invertible(&v).then_some(v)
    }) {
        SearchOutcome::Found(v) => Some(v),
        _ => None,
    }
}

fn stack_nullspace(f: &Field, n: usize, blocks: &[Matrix]) -> Vec<Vector> {
    let mut rows = Vec::new();
    for b in blocks {
        rows.extend(b.to_rows());
    }
    if rows.is_empty() {
        return (0..n).map(|i| crate::linalg::unit_vector(f, n, i)).collect();
    }
    Matrix::from_rows(rows).unwrap().nullspace(f)
}

/// Given `v ∉ F` with `v² ∈ F^×`, finds `u` with `uv = v(1−u)` and
/// `u² − u = a ∈ F`; returns `(u, a, b = v²)`.
pub fn complete_quaternion_basis(alg: &AlgebraRef, v: &[Elem]) -> Result<(Vector, Elem, Elem)> {
    let f = alg.field();
    if alg.dim() != 4 {
        return Err(Error::pre("complete_quaternion_basis", "not a quaternion algebra"));
    }
    if alg.as_scalar(v).is_some() {
        return Err(Error::pre("complete_quaternion_basis", "v is a scalar"));
    }
    let b = alg
        .as_scalar(&alg.mul(v, v))
        .ok_or_else(|| Error::pre("complete_quaternion_basis", "v² is not a scalar"))?;
    if f.is_zero(&b) {
        return Err(Error::pre("complete_quaternion_basis", "v² = 0"));
    }
    let sum = alg.left_mult(v).add(f, &alg.right_mult(v));
    let u = if f.characteristic() != 2 {
        // x anticommuting with v, then u = x + 1/2
        let ns = sum.nullspace(f);
        let x = find_invertible(alg, &ns, 1)
            .ok_or_else(|| Error::Inconsistent("no invertible element anticommutes with v".into()))?;
        alg.add(&x, &alg.scalar(&f.inv(&f.from_int(2))?))
    } else {
        // uv + vu = v
        sum.solve(f, v)
            .ok_or_else(|| Error::Inconsistent("uv + vu = v has no solution".into()))?
    };
    let a = alg
        .as_scalar(&alg.sub(&alg.mul(&u, &u), &u))
        .ok_or_else(|| Error::Inconsistent("u² − u is not a scalar".into()))?;
    if f.is_one(&f.mul(&f.from_int(-4), &a)) {
        return Err(Error::Inconsistent("−4a = 1".into()));
    }
    if alg.mul(&u, v) != alg.mul(v, &alg.sub(&alg.one(), &u)) {
        return Err(Error::Inconsistent("uv ≠ v(1 − u)".into()));
    }
    Ok((u, a, b))
}

/// `Φ: [a,b) → alg` with `1, u, v, w ↦ 1, u, v, uv`.
fn presentation_map(alg: &AlgebraRef, u: &[Elem], v: &[Elem]) -> Matrix {
    let f = alg.field();
    let cols = vec![alg.one(), u.to_vec(), v.to_vec(), alg.mul(u, v)];
    Matrix::from_cols(f, 4, &cols)
}

/// Normal form data: the presentation parameters and a checked certificate
/// from the input to the normal form.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub a: Elem,
    pub b: Elem,
    pub cert: Certificate,
}

fn finish(source: Structure, normal: Structure, phi: Matrix, a: Elem, b: Elem) -> Result<NormalForm> {
    // phi maps the normal form into the input
    let c = Certificate::new(normal, source, phi);
    c.check()?;
    Ok(NormalForm {
        a,
        b,
        cert: c.inverse()?,
    })
}

/// `(Q,σ)` orthogonal `≅ [a|·b)`: `σ = Int(v)∘γ` with `v` solved linearly.
pub fn orthogonal_normal_form(s: &Involution) -> Result<NormalForm> {
    let alg = s.algebra();
    let f = alg.field();
    if alg.dim() != 4 || s.kind() != InvolutionType::Orthogonal {
        return Err(Error::pre("orthogonal_normal_form", "needs an orthogonal quaternion involution"));
    }
    let (u, v) = if let (Origin::Quaternion(QuatVariant::Tau), Provenance::Quaternion { .. }) =
        (s.origin(), alg.provenance())
    {
        (alg.basis(1), alg.basis(2))
    } else {
        let gamma = canonical_map(alg)?;
        // σ(x)v − vγ(x) = 0 for every basis x
        let blocks: Vec<Matrix> = (0..4)
            .map(|i| {
                let x = alg.basis(i);
                alg.left_mult(&s.apply(&x))
                    .sub(f, &alg.right_mult(&apply_map(f, &gamma, &x)))
            })
            .collect();
        let ns = stack_nullspace(f, 4, &blocks);
        let v = find_invertible(alg, &ns, 1)
            .ok_or_else(|| Error::Inconsistent("no invertible v with σ = Int(v)∘γ".into()))?;
        let (u, _, _) = complete_quaternion_basis(alg, &v)?;
        (u, v)
    };
    let a = alg
        .as_scalar(&alg.sub(&alg.mul(&u, &u), &u))
        .ok_or_else(|| Error::Inconsistent("u² − u is not a scalar".into()))?;
    let b = alg
        .as_scalar(&alg.mul(&v, &v))
        .ok_or_else(|| Error::Inconsistent("v² is not a scalar".into()))?;
    let normal = quaternion_involution(&quaternion_make(f, &a, &b)?, QuatVariant::Tau)?;
    finish(
        Structure::Involution(s.clone()),
        Structure::Involution(normal),
        presentation_map(alg, &u, &v),
        a,
        b,
    )
}

/// `(Q,γ)` symplectic `≅ [a·|·b)`.
pub fn canonical_normal_form(s: &Involution) -> Result<NormalForm> {
    let alg = s.algebra();
    let f = alg.field();
    if alg.dim() != 4 || s.kind() != InvolutionType::Symplectic {
        return Err(Error::pre("canonical_normal_form", "needs a symplectic quaternion involution"));
    }
    let (u, v) = if matches!(alg.provenance(), Provenance::Quaternion { .. }) {
        (alg.basis(1), alg.basis(2))
    } else {
        // a trace-zero non-scalar unit v, then complete
        let t = alg.trd().ok_or_else(|| Error::pre("canonical_normal_form", "no reduced trace"))?;
        let tz = Matrix::from_rows(vec![t.to_vec()])?.nullspace(f);
        let scalars = ScalarSet::new(f, 1);
        let found = find_vector(f, tz.len(), &scalars, true, 200_000, |c| {
            let v = combine(f, c, &tz);
            (alg.as_scalar(&v).is_none() && alg.is_invertible(&v)).then_some(v)
        });
        let SearchOutcome::Found(v) = found else {
            return Err(Error::Inconsistent("no pure invertible quaternion found".into()));
        };
        let (u, _, _) = complete_quaternion_basis(alg, &v)?;
        (u, v)
    };
    let a = alg
        .as_scalar(&alg.sub(&alg.mul(&u, &u), &u))
        .ok_or_else(|| Error::Inconsistent("u² − u is not a scalar".into()))?;
    let b = alg
        .as_scalar(&alg.mul(&v, &v))
        .ok_or_else(|| Error::Inconsistent("v² is not a scalar".into()))?;
    let normal = canonical_involution(&quaternion_make(f, &a, &b)?)?;
    finish(
        Structure::Involution(s.clone()),
        Structure::Involution(normal),
        presentation_map(alg, &u, &v),
        a,
        b,
    )
}

/// `(Q,σ,f) ≅ [c‖·d)`; `a`, `b` of the result hold `c`, `d`.
pub fn qp_normal_form(p: &QuadPair) -> Result<NormalForm> {
    let alg = p.algebra();
    let f = alg.field();
    if alg.dim() != 4 {
        return Err(Error::pre("qp_normal_form", "not a quaternion algebra"));
    }
    let u = if f.characteristic() == 2 {
        let ell = p.ell().to_vec();
        if !f.is_one(&alg.reduced_trace(&ell)?) {
            return Err(Error::Inconsistent("Trd(ℓ) ≠ 1".into()));
        }
        ell
    } else {
        let skew = p
            .involution()
            .map()
            .add(f, &Matrix::identity(f, 4))
            .nullspace(f);
        let x = skew
            .first()
            .ok_or_else(|| Error::Inconsistent("orthogonal involution without skew elements".into()))?;
        alg.scale(&f.inv(&f.from_int(2))?, &alg.add(&alg.one(), x))
    };
    let c = alg
        .as_scalar(&alg.sub(&alg.mul(&u, &u), &u))
        .ok_or_else(|| Error::Inconsistent("u² − u is not a scalar".into()))?;
    // v with uv = v(1 − u) and σ(v) = v
    let one_minus = alg.sub(&alg.one(), &u);
    let mut blocks = vec![alg.left_mult(&u).sub(f, &alg.right_mult(&one_minus))];
    blocks.push(p.involution().map().sub(f, &Matrix::identity(f, 4)));
    let ns = stack_nullspace(f, 4, &blocks);
    let v = find_invertible(alg, &ns, 1)
        .ok_or_else(|| Error::Inconsistent("no invertible v with uv = v(1 − u)".into()))?;
    let d = alg
        .as_scalar(&alg.mul(&v, &v))
        .ok_or_else(|| Error::Inconsistent("v² is not a scalar".into()))?;
    let normal = quaternion_qp(f, &c, &d)?;
    finish(
        Structure::Pair(p.clone()),
        Structure::Pair(normal),
        presentation_map(alg, &u, &v),
        c,
        d,
    )
}

/// Result of rewriting `[a·|·b) ⊠ [c·|·d)`.
#[derive(Clone, Debug)]
pub struct Symplectized {
    /// `a + c + 4ac`
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    /// `bd`
    pub d: Elem,
    /// From the `⊠` pair to `[a+c+4ac|·b) ⊗ [c‖·bd)`.
    pub cert: Certificate,
}

/// `[a·|·b) ⊠ [c·|·d) ≅ [a+c+4ac|·b) ⊗ [c‖·bd)` through
/// `i' = i⊗1 + (1−2i)⊗u`, `j' = j⊗1`, `u' = 1⊗u`, `v' = j⊗v`.
pub fn symplectize(f: &Field, a: &Elem, b: &Elem, c: &Elem, d: &Elem) -> Result<Symplectized> {
    let q1 = quaternion_make(f, a, b)?;
    let q2 = quaternion_make(f, c, d)?;
    let a2 = f.add(&f.add(a, c), &f.mul(&f.from_int(4), &f.mul(a, c)));
    if f.is_one(&f.mul(&f.from_int(-4), &a2)) {
        return Err(Error::pre("symplectize", "−4(a + c + 4ac) = 1"));
    }
    let bd = f.mul(b, d);
    let src = boxtimes(&canonical_involution(&q1)?, &canonical_involution(&q2)?)?;
    let t1 = quaternion_involution(&quaternion_make(f, &a2, b)?, QuatVariant::Tau)?;
    let tgt = qp_tensor(&t1, &quaternion_qp(f, c, &bd)?)?;
    let big = src.algebra();
    let one1 = q1.one();
    let one2 = q2.one();
    let i = vkron(f, &q1.basis(1), &one2);
    let j = vkron(f, &q1.basis(2), &one2);
    let u = vkron(f, &one1, &q2.basis(1));
    let one_minus_2i = q1.sub(&one1, &q1.scale(&f.from_int(2), &q1.basis(1)));
    let i2 = big.add(&i, &vkron(f, &one_minus_2i, &q2.basis(1)));
    let v2 = vkron(f, &q1.basis(2), &q2.basis(2));
    let first = [big.one(), i2.clone(), j.clone(), big.mul(&i2, &j)];
    let second = [big.one(), u.clone(), v2.clone(), big.mul(&u, &v2)];
    let mut cols = Vec::with_capacity(16);
    for x in &first {
        for y in &second {
            cols.push(big.mul(x, y));
        }
    }
    let phi = Certificate::new(Structure::Pair(tgt), Structure::Pair(src), Matrix::from_cols(f, 16, &cols));
    phi.check()?;
    Ok(Symplectized {
        a: a2,
        b: b.clone(),
        c: c.clone(),
        d: bd,
        cert: phi.inverse()?,
    })
}

/// Mixed-radix helper: the matrix acting as `block` on slots `i < j` and as
/// the identity elsewhere.
pub fn lift_block(f: &Field, dims: &[usize], i: usize, j: usize, block: &Matrix) -> Matrix {
    assert!(i < j && j < dims.len());
    let total: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len() - 1).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let mut out = Matrix::zeros(f, total, total);
    for col in 0..total {
        let ki = (col / strides[i]) % dims[i];
        let kj = (col / strides[j]) % dims[j];
        let base = col - ki * strides[i] - kj * strides[j];
        let bc = ki * dims[j] + kj;
        for r in 0..dims[i] * dims[j] {
            let c = block.get(r, bc);
            if f.is_zero(c) {
                continue;
            }
            let (ri, rj) = (r / dims[j], r % dims[j]);
            out.set(base + ri * strides[i] + rj * strides[j], col, c.clone());
        }
    }
    out
}

/// Index map from `M_{n₁} ⊗ … ⊗ M_{n_k}` (tensor basis) to `M_N` with the
/// Kronecker identification.
pub fn kron_flatten(ns: &[usize]) -> Vec<usize> {
    let big: usize = ns.iter().product();
    let dim = big * big;
    let mut out = vec![0usize; dim];
    for (t, slot) in out.iter_mut().enumerate() {
        let mut rest = t;
        let (mut p, mut q) = (0usize, 0usize);
        let mut digits = Vec::with_capacity(ns.len());
        for &n in ns.iter().rev() {
            digits.push(rest % (n * n));
            rest /= n * n;
        }
        for (&n, &d) in ns.iter().zip(digits.iter().rev()) {
            p = p * n + d / n;
            q = q * n + d % n;
        }
        *slot = p * big + q;
    }
    out
}

fn permutation_matrix(f: &Field, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(f, n, n);
    for (src, &dst) in perm.iter().enumerate() {
        m.set(dst, src, f.one());
    }
    m
}

/// Kronecker product of several square matrices.
pub fn kron_all(f: &Field, ms: &[Matrix]) -> Matrix {
    ms.iter()
        .fold(Matrix::identity(f, 1), |acc, m| acc.kron(f, m))
}

/// A list of quaternion factors with involution, optionally followed by a
/// quaternion factor with quadratic pair, and the map from the ambient
/// structure to their tensor product.
#[derive(Clone, Debug)]
pub struct TotalDecomposition {
    pub ambient_factors: Vec<Involution>,
    pub ambient_pair: Option<QuadPair>,
    pub factors: Vec<Involution>,
    pub pair: Option<QuadPair>,
    /// Ambient coordinates to product coordinates.
    pub map: Matrix,
}

/// `(⊗ factors) ⊗ pair`.
pub fn assemble(factors: &[Involution], pair: Option<&QuadPair>) -> Result<Structure> {
    Ok(match (factors.is_empty(), pair) {
        (true, Some(p)) => Structure::Pair(p.clone()),
        (false, Some(p)) => Structure::Pair(qp_tensor(&tensor_all(factors)?, p)?),
        (false, None) => Structure::Involution(tensor_all(factors)?),
        (true, None) => return Err(Error::pre("assemble", "no factors")),
    })
}

impl TotalDecomposition {
    pub fn identity(factors: Vec<Involution>, pair: Option<QuadPair>) -> Result<Self> {
        let f = factors
            .first()
            .map(|s| s.field().clone())
            .or_else(|| pair.as_ref().map(|p| p.field().clone()))
            .ok_or_else(|| Error::pre("TotalDecomposition", "no factors"))?;
        let dim: usize = factors.iter().map(|s| s.algebra().dim()).product::<usize>()
            * pair.as_ref().map_or(1, |p| p.algebra().dim());
        Ok(TotalDecomposition {
            ambient_factors: factors.clone(),
            ambient_pair: pair.clone(),
            factors,
            pair,
            map: Matrix::identity(&f, dim),
        })
    }

    pub fn field(&self) -> &Field {
        self.factors
            .first()
            .map(|s| s.field())
            .unwrap_or_else(|| self.pair.as_ref().unwrap().field())
    }

    pub fn slot_dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(|s| s.algebra().dim()).collect();
        if let Some(p) = &self.pair {
            d.push(p.algebra().dim());
        }
        d
    }

    pub fn ambient(&self) -> Result<Structure> {
        assemble(&self.ambient_factors, self.ambient_pair.as_ref())
    }

    pub fn product(&self) -> Result<Structure> {
        assemble(&self.factors, self.pair.as_ref())
    }

    pub fn certificate(&self) -> Result<Certificate> {
        Ok(Certificate::new(self.ambient()?, self.product()?, self.map.clone()))
    }

    /// Runs the checker on the full certificate.
    pub fn verify(&self) -> Result<()> {
        self.certificate()?.check()
    }

    fn apply_block(&mut self, i: usize, j: usize, block: &Matrix) {
        let f = self.field().clone();
        let lifted = lift_block(&f, &self.slot_dims(), i, j, block);
        self.map = lifted.mul(&f, &self.map);
    }
}

/// Makes every involution factor orthogonal.
///
/// In characteristic 2 each symplectic factor is merged with the pair factor:
/// `(Qᵢ,γᵢ) ⊗ (Qₙ,γₙ,h) ≅ [a·|·b) ⊠ [c·|·d) ≅ [a+c+4ac|·b) ⊗ [c‖·bd)`.
/// Otherwise symplectic factors are rewritten two at a time at the level of
/// involutions, the semi-trace being unique.
pub fn orthogonalize_decomposition(
    factors: &[Involution],
    pair: Option<&QuadPair>,
) -> Result<TotalDecomposition> {
    let mut td = TotalDecomposition::identity(factors.to_vec(), pair.cloned())?;
    let f = td.field().clone();
    for s in factors {
        if s.algebra().dim() != 4 {
            return Err(Error::pre("orthogonalize_decomposition", "factor is not a quaternion algebra"));
        }
    }
    let m = factors.len();
    if f.characteristic() == 2 {
        for i in 0..m {
            if td.factors[i].kind() != InvolutionType::Symplectic {
                continue;
            }
            let p = td
                .pair
                .clone()
                .ok_or_else(|| Error::pre("orthogonalize_decomposition", "a pair factor is required"))?;
            let n1 = canonical_normal_form(&td.factors[i])?;
            let n2 = qp_normal_form(&p)?;
            let sy = symplectize(&f, &n1.a, &n1.b, &n2.a, &n2.b)?;
            let block = sy.cert.map().mul(&f, &n1.cert.map().kron(&f, n2.cert.map()));
            td.apply_block(i, m, &block);
            td.factors[i] = quaternion_involution(&quaternion_make(&f, &sy.a, &sy.b)?, QuatVariant::Tau)?;
            td.pair = Some(quaternion_qp(&f, &sy.c, &sy.d)?);
        }
    } else {
        let symp: Vec<usize> = (0..m)
            .filter(|&i| td.factors[i].kind() == InvolutionType::Symplectic)
            .collect();
        if symp.len() % 2 == 1 {
            return Err(Error::pre(
                "orthogonalize_decomposition",
                "odd number of symplectic factors outside characteristic 2",
            ));
        }
        for w in symp.chunks(2) {
            let (i, j) = (w[0], w[1]);
            let n1 = canonical_normal_form(&td.factors[i])?;
            let n2 = canonical_normal_form(&td.factors[j])?;
            let sy = symplectize(&f, &n1.a, &n1.b, &n2.a, &n2.b)?;
            let block = sy.cert.map().mul(&f, &n1.cert.map().kron(&f, n2.cert.map()));
            td.apply_block(i, j, &block);
            td.factors[i] = quaternion_involution(&quaternion_make(&f, &sy.a, &sy.b)?, QuatVariant::Tau)?;
            td.factors[j] =
                quaternion_involution(&quaternion_make(&f, &sy.c, &sy.d)?, QuatVariant::Sigma)?;
        }
    }
    Ok(td)
}

/// Rewrites an orthogonalized decomposition so every factor carries its
/// canonical involution: `[a'|·b) ⊗ [c‖·d') ≅ [a'+c·|·b) ⊠ [c·|·d'/b)`,
/// applied from the last factor to the first.
pub fn canonical_symplectic_decomposition(td: &TotalDecomposition) -> Result<TotalDecomposition> {
    let f = td.field().clone();
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            found: f.characteristic(),
        });
    }
    if td.pair.is_none() || td.factors.is_empty() {
        return Err(Error::pre(
            "canonical_symplectic_decomposition",
            "needs at least one involution factor and a pair factor",
        ));
    }
    let mut td = if td.factors.iter().any(|s| s.kind() == InvolutionType::Symplectic) {
        let o = orthogonalize_decomposition(&td.factors, td.pair.as_ref())?;
        TotalDecomposition {
            ambient_factors: td.ambient_factors.clone(),
            ambient_pair: td.ambient_pair.clone(),
            map: o.map.mul(&f, &td.map),
            factors: o.factors,
            pair: o.pair,
        }
    } else {
        td.clone()
    };
    let m = td.factors.len();
    for k in (0..m).rev() {
        let n1 = orthogonal_normal_form(&td.factors[k])?;
        let n2 = qp_normal_form(td.pair.as_ref().unwrap())?;
        let (a2, b, c, d2) = (n1.a, n1.b, n2.a, n2.b);
        let big_a = f.sub(&a2, &c);
        let big_d = f.div(&d2, &b)?;
        let sy = symplectize(&f, &big_a, &b, &c, &big_d)?;
        if sy.a != a2 || sy.d != d2 {
            return Err(Error::Inconsistent("reverse parameters do not match".into()));
        }
        let back = sy.cert.inverse()?;
        let block = back.map().mul(&f, &n1.cert.map().kron(&f, n2.cert.map()));
        td.apply_block(k, m, &block);
        td.factors[k] = canonical_involution(&quaternion_make(&f, &big_a, &b)?)?;
        td.pair = Some(quaternion_qp(&f, &c, &big_d)?);
    }
    Ok(td)
}

/// A split involution: certificate to `(M_N, ad_G)` and the Gram matrix `G`.
#[derive(Clone, Debug)]
pub struct SplitInvolution {
    pub cert: Certificate,
    pub gram: Matrix,
}

/// Per-leaf splitting data: `Φ: leaf algebra → M_n` (matrix) and `G`.
struct LeafSplit {
    phi: Matrix,
    gram: Matrix,
    n: usize,
}

fn split_leaf_algebra(alg: &AlgebraRef, bound: usize) -> Result<Option<(Matrix, usize)>> {
    let f = alg.field();
    match alg.provenance() {
        Provenance::Matrix(n) => Ok(Some((Matrix::identity(f, alg.dim()), *n))),
        Provenance::Quaternion { .. } => match find_zero_divisor(alg, bound)? {
            Splitting::Split(x) => Ok(Some((split_quaternion_iso(alg, &x)?.map().clone(), 2))),
            _ => Ok(None),
        },
        _ => Ok(None),
    }
}

fn transported(f: &Field, phi: &Matrix, m: &Matrix) -> Result<Matrix> {
    let pi = phi.inverse(f).ok_or(Error::Inconsistent("splitting map is singular".into()))?;
    Ok(phi.mul(f, m).mul(f, &pi))
}

fn split_leaf(s: &Involution, bound: usize) -> Result<Option<LeafSplit>> {
    let f = s.field();
    let Some((phi, n)) = split_leaf_algebra(s.algebra(), bound)? else {
        return Ok(None);
    };
    let m2 = matrix_algebra(f, n)?;
    let inv = Involution::assemble(m2, transported(f, &phi, s.map())?, Origin::Custom)?;
    let gram = recover_gram(&inv)?;
    Ok(Some(LeafSplit { phi, gram, n }))
}

/// Splits every leaf of `s` (matrix leaves as they are, quaternion leaves
/// through a zero divisor) and flattens with the Kronecker identification.
/// The full certificate is checked up to dimension 16; beyond that the
/// per-leaf certificates carry the proof.
pub fn split_involution(s: &Involution, bound: usize) -> Result<Option<SplitInvolution>> {
    let f = s.field();
    let mut leaves = Vec::new();
    for l in s.leaves() {
        match split_leaf(l, bound)? {
            Some(x) => leaves.push(x),
            None => return Ok(None),
        }
    }
    let ns: Vec<usize> = leaves.iter().map(|l| l.n).collect();
    let phis: Vec<Matrix> = leaves.iter().map(|l| l.phi.clone()).collect();
    let grams: Vec<Matrix> = leaves.iter().map(|l| l.gram.clone()).collect();
    let perm = permutation_matrix(f, &kron_flatten(&ns));
    let map = perm.mul(f, &kron_all(f, &phis));
    let gram = kron_all(f, &grams);
    let target = adjoint_involution(&BilinearForm::new(f, gram.clone())?)?;
    let cert = Certificate::new(Structure::Involution(s.clone()), Structure::Involution(target), map);
    if s.algebra().dim() <= 16 {
        cert.check()?;
    }
    Ok(Some(SplitInvolution { cert, gram }))
}

/// `Ad(ρ)` for `ρ = ⟨⟨b₁,…,bₘ⟩⟩ ⊗ π` decomposed as
/// `Ad(⟨1,b₁⟩) ⊗ … ⊗ Ad(⟨1,bₘ⟩) ⊗ Ad(π)`.
///
/// `rho` must be isometric to the standard form; the isometry found by
/// `is_isometric` is folded into the certificate.
pub fn pfister_decomposition(
    rho: &QuadraticForm,
    slots: &[Elem],
    pi: &QuadraticForm,
    bound: usize,
) -> Result<TotalDecomposition> {
    let f = rho.field();
    let standard = tensor_bq(&bilinear_pfister(f, slots)?, pi)?;
    let t = match crate::forms::is_isometric(&standard, rho, bound)? {
        _ if standard.upper() == rho.upper() => Matrix::identity(f, rho.dim()),
        crate::forms::Isometry::Yes(t) => t,
        _ => {
            return Err(Error::pre(
                "pfister_decomposition",
                "no isometry to the given Pfister presentation",
            ))
        }
    };
    // rho(Tx) = standard(x): X ↦ T⁻¹XT takes Ad(rho) to Ad(standard)
    let n = rho.dim();
    let ti = t.inverse(f).ok_or(Error::DivisionByZero)?;
    let mut conj = Matrix::zeros(f, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            // T⁻¹ E_ij T = (T⁻¹ e_i)(e_jᵀ T)
            for k in 0..n {
                let a = ti.get(k, i);
                if f.is_zero(a) {
                    continue;
                }
                for l in 0..n {
                    let b = t.get(j, l);
                    if !f.is_zero(b) {
                        conj.set(k * n + l, i * n + j, f.mul(a, b));
                    }
                }
            }
        }
    }
    let mut factors = Vec::new();
    for b in slots {
        factors.push(adjoint_involution(&crate::forms::diag_bilinear(f, &[f.one(), b.clone()])?)?);
    }
    let pair = adjoint_qp(pi)?;
    let mut ns = vec![2usize; slots.len()];
    ns.push(pi.dim());
    let unflatten = permutation_matrix(f, &kron_flatten(&ns))
        .inverse(f)
        .expect("permutation");
    let map = unflatten.mul(f, &conj);
    Ok(TotalDecomposition {
        ambient_factors: Vec::new(),
        ambient_pair: Some(adjoint_qp(rho)?),
        factors,
        pair: Some(pair),
        map,
    })
}

/// Outcome of the split-case pipeline.
#[derive(Clone, Debug)]
pub enum PfisterReport {
    /// `ρ(Wx) = λ(φ_K ⊗ π)(x)`.
    Confirmed {
        rho: QuadraticForm,
        phi: BilinearForm,
        lambda: Elem,
        pi: QuadraticForm,
        witness: Matrix,
    },
    /// `φ_K` is metabolic and `ρ` has a verified Lagrangian.
    ConfirmedHyperbolic {
        rho: QuadraticForm,
        phi: BilinearForm,
        lagrangian: Vec<Vector>,
    },
    Inconclusive(String),
}

impl PfisterReport {
    pub fn rho(&self) -> Option<&QuadraticForm> {
        match self {
            PfisterReport::Confirmed { rho, .. } | PfisterReport::ConfirmedHyperbolic { rho, .. } => {
                Some(rho)
            }
            PfisterReport::Inconclusive(_) => None,
        }
    }
}

/// `(A,σ,f)_K ≅ Ad(ρ)` with `ρ ≃ λ(𝔓f(B,τ)_K ⊗ π)`, witnessed explicitly.
///
/// Each factor is split over `K` separately; `ρ` is the Kronecker product of
/// the recovered factor forms, which is what the flattened pair recovers to.
/// The isometry is then built by diagonalising each factor Gram matrix as
/// `αₖ⟨1,dₖ⟩` and normalising the pair factor as `r[1,c]`.
pub fn pfister_from_split(td: &TotalDecomposition, k: &Field, bound: usize) -> Result<PfisterReport> {
    let f = td.field().clone();
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            found: f.characteristic(),
        });
    }
    let pair = td
        .pair
        .as_ref()
        .ok_or_else(|| Error::pre("pfister_from_split", "no pair factor"))?;
    if td.factors.iter().any(|s| !s.is_orthogonal()) {
        return Err(Error::pre("pfister_from_split", "decomposition is not orthogonalized"));
    }
    if !f.is_subfield_of(k) {
        return Err(Error::NotAnExtension);
    }
    // Pfister invariant over F, then over K
    let phi_f = pfister_invariant(&td.factors, bound)?;
    let ds: Vec<Elem> = phi_f.pfister_slots().unwrap().to_vec();
    let ds_k: Vec<Elem> = ds.iter().map(|d| k.embed(&f, d)).collect::<Result<_>>()?;
    let phi = bilinear_pfister(k, &ds_k)?;

    let mut grams = Vec::new();
    for s in &td.factors {
        let sk = s.extend(k)?;
        let Some(ls) = split_leaf(&sk, bound)? else {
            return Err(Error::pre(
                "pfister_from_split",
                "a factor has no split certificate over K",
            ));
        };
        let inv = Involution::assemble(matrix_algebra(k, ls.n)?, transported(k, &ls.phi, sk.map())?, Origin::Custom)?;
        Certificate::new(Structure::Involution(sk.clone()), Structure::Involution(inv), ls.phi).check()?;
        grams.push(ls.gram);
    }
    let pk = pair.extend(k)?;
    let Some((phi_n, n)) = split_leaf_algebra(pk.algebra(), bound)? else {
        return Err(Error::pre("pfister_from_split", "the pair factor has no split certificate over K"));
    };
    let m2 = matrix_algebra(k, n)?;
    let inv_n = Involution::assemble(m2, transported(k, &phi_n, pk.involution().map())?, Origin::Custom)?;
    let ell_n = apply_map(k, &phi_n, pk.ell());
    let split_pair = semitrace_repr(&inv_n, &ell_n)?;
    Certificate::new(Structure::Pair(pk.clone()), Structure::Pair(split_pair), phi_n).check()?;
    let g_n = recover_gram(&inv_n)?;
    let pi0 = form_from_gram(k, &g_n, &Matrix::from_entries(n, n, ell_n.clone())?)?;

    // ρ from the flattened pair: G = ⊗Gₖ ⊗ Gₙ, ℓ = 1 ⊗ … ⊗ ℓₙ
    let mut all = grams.clone();
    all.push(g_n.clone());
    let g = kron_all(k, &all);
    let big = g.rows();
    let ell = Matrix::identity(k, big / n).kron(k, &Matrix::from_entries(n, n, ell_n)?);
    let rho = form_from_gram(k, &g, &ell)?;
    let psi = BilinearForm::new(k, kron_all(k, &grams))?;
    if tensor_bq(&psi, &pi0)?.upper() != rho.upper() {
        return Err(Error::Inconsistent("flattened form differs from ⊗ψₖ ⊗ π₀".into()));
    }

    // diagonalise each ψₖ as αₖ⟨1,dₖ⟩
    let mut ts = Vec::new();
    let mut lambda = k.one();
    for (gk, d) in grams.iter().zip(&ds_k) {
        match diagonalize_binary(k, gk, d)? {
            Some((t, alpha)) => {
                ts.push(t);
                lambda = k.mul(&lambda, &alpha);
            }
            None => {
                return Ok(PfisterReport::Inconclusive(format!(
                    "square class of {} undecided",
                    k.format(d)
                )))
            }
        }
    }
    let (s, r, c) = normalize_binary(k, &pi0)?;
    lambda = k.mul(&lambda, &r);
    ts.push(s);
    let w = kron_all(k, &ts);
    let pi = QuadraticForm::binary(k, k.one(), c);
    let standard = tensor_bq(&phi, &pi)?.scale(&lambda);
    if !verify_isometry(&standard, &rho, &w) {
        return Err(Error::Inconsistent("isometry witness fails verification".into()));
    }
    if let Metabolic::Yes(l) = is_metabolic_bilinear(&phi, bound)? {
        // W(L ⊗ K²) is totally singular of half dimension
        let mut lag = Vec::new();
        for x in &l {
            for e in 0..2 {
                let y = crate::linalg::unit_vector(k, 2, e);
                lag.push(w.mul_vec(k, &vkron(k, x, &y)));
            }
        }
        let ok = lag.len() * 2 == rho.dim()
            && crate::linalg::rank_of(k, rho.dim(), &lag) == lag.len()
            && lag.iter().all(|x| k.is_zero(&rho.eval(x)))
            && lag
                .iter()
                .all(|x| lag.iter().all(|y| k.is_zero(&rho.polar_eval(x, y))));
        if !ok {
            return Err(Error::Inconsistent("Lagrangian fails verification".into()));
        }
        return Ok(PfisterReport::ConfirmedHyperbolic {
            rho,
            phi,
            lagrangian: lag,
        });
    }
    Ok(PfisterReport::Confirmed {
        rho,
        phi,
        lambda,
        pi,
        witness: w,
    })
}

/// `T` and `α` with `Tᵀ G T = α⟨1,d⟩`, or `None` if the square class test is
/// undecided.
fn diagonalize_binary(f: &Field, g: &Matrix, d: &Elem) -> Result<Option<(Matrix, Elem)>> {
    let b = |x: &[Elem], y: &[Elem]| dot(f, x, &g.mul_vec(f, y));
    let e1 = crate::linalg::unit_vector(f, 2, 0);
    let e2 = crate::linalg::unit_vector(f, 2, 1);
    let x1 = [e1.clone(), e2.clone(), crate::linalg::vadd(f, &e1, &e2)]
        .into_iter()
        .find(|x| !f.is_zero(&b(x, x)))
        .ok_or_else(|| Error::Inconsistent("factor Gram matrix is alternating".into()))?;
    let alpha = b(&x1, &x1);
    let y = vec![f.neg(&b(&x1, &e2)), b(&x1, &e1)];
    let e = f.div(&b(&y, &y), &alpha)?;
    let ratio = f.div(&e, d)?;
    let s = match f.is_square(&ratio)? {
        crate::field::SquareDecision::Square(s) => s,
        crate::field::SquareDecision::NonSquare(_) => {
            return Err(Error::Inconsistent(format!(
                "determinant {} and Gram class {} differ",
                f.format(d),
                f.format(&e)
            )))
        }
        crate::field::SquareDecision::Unknown(_) => return Ok(None),
    };
    let x2 = crate::linalg::vscale(f, &f.inv(&s)?, &y);
    let t = Matrix::from_cols(f, 2, &[x1, x2]);
    Ok(Some((t, alpha)))
}

/// `S`, `r`, `c` with `π(S x) = r(x₁² + x₁x₂ + c x₂²)`.
fn normalize_binary(f: &Field, pi: &QuadraticForm) -> Result<(Matrix, Elem, Elem)> {
    let e1 = crate::linalg::unit_vector(f, 2, 0);
    let e2 = crate::linalg::unit_vector(f, 2, 1);
    let y1 = [e1.clone(), e2.clone(), crate::linalg::vadd(f, &e1, &e2)]
        .into_iter()
        .find(|x| !f.is_zero(&pi.eval(x)))
        .ok_or_else(|| Error::Inconsistent("binary form vanishes".into()))?;
    let r = pi.eval(&y1);
    let z = [e1, e2]
        .into_iter()
        .find(|z| !f.is_zero(&pi.polar_eval(&y1, z)))
        .ok_or_else(|| Error::Inconsistent("binary form is singular".into()))?;
    let y2 = crate::linalg::vscale(f, &f.div(&r, &pi.polar_eval(&y1, &z))?, &z);
    let c = f.div(&pi.eval(&y2), &r)?;
    Ok((Matrix::from_cols(f, 2, &[y1, y2]), r, c))
}
