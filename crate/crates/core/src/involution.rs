//! Involutions of the first kind on structured algebras.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{
    matrix_algebra, reduced_norm, tensor_algebra, AlgebraRef, Provenance,
};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, SquareClass};
use crate::forms::{
    bilinear_pfister, is_metabolic_bilinear, BilinearForm, Isotropy, Metabolic, SEARCH_BUDGET,
};
use crate::linalg::{EchelonBasis, Matrix, Vector};
use crate::search::{find_vector, ScalarSet, SearchOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
}

/// The three standard involutions of a quaternion presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuatVariant {
    /// γ: u ↦ 1 − u, v ↦ −v
    Canonical,
    /// σ: u ↦ 1 − u, v ↦ v
    Sigma,
    /// τ: u ↦ u, v ↦ −v
    Tau,
}

#[derive(Clone, Debug)]
pub enum Origin {
    Quaternion(QuatVariant),
    Adjoint(BilinearForm),
    Tensor(Box<Involution>, Box<Involution>),
    Custom,
}

#[derive(Clone, Debug)]
pub struct Involution {
    algebra: AlgebraRef,
    /// Column `j` holds the coordinates of `σ(e_j)`.
    map: Matrix,
    kind: InvolutionType,
    origin: Origin,
}

impl PartialEq for Involution {
    fn eq(&self, o: &Involution) -> bool {
        self.algebra.dim() == o.algebra.dim() && self.map == o.map
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceKind {
    Sym,
    Skew,
    Alt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub kind: SubspaceKind,
    pub basis: Vec<Vector>,
}

impl Involution {
    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn kind(&self) -> InvolutionType {
        self.kind
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn is_orthogonal(&self) -> bool {
        self.kind == InvolutionType::Orthogonal
    }

    pub fn apply(&self, x: &[Elem]) -> Vector {
        apply_map(self.field(), &self.map, x)
    }

    /// Leaves of the tensor tree, left to right.
    pub fn leaves(&self) -> Vec<&Involution> {
        match &self.origin {
            Origin::Tensor(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
            _ => alloc::vec![self],
        }
    }

    pub fn subspace(&self, kind: SubspaceKind) -> SubspaceBasis {
        let f = self.field();
        let n = self.algebra.dim();
        let id = Matrix::identity(f, n);
        let basis = match kind {
            SubspaceKind::Sym => self.map.sub(f, &id).nullspace(f),
            SubspaceKind::Skew => self.map.add(f, &id).nullspace(f),
            SubspaceKind::Alt => {
                let m = id.sub(f, &self.map);
                let cols: Vec<Vector> = (0..n).map(|j| m.col(j)).collect();
                independent_subset(f, n, &cols)
            }
        };
        SubspaceBasis { kind, basis }
    }

    pub fn sym(&self) -> Vec<Vector> {
        self.subspace(SubspaceKind::Sym).basis
    }

    pub fn alt(&self) -> Vec<Vector> {
        self.subspace(SubspaceKind::Alt).basis
    }

    pub fn extend(&self, to: &Field) -> Result<Involution> {
        let from = self.field();
        Ok(match &self.origin {
            Origin::Tensor(a, b) => tensor_involutions(&a.extend(to)?, &b.extend(to)?)?,
            Origin::Adjoint(phi) => adjoint_involution(&phi.extend(to)?)?,
            o => Involution {
                algebra: self.algebra.extend(to)?,
                map: self.map.extend(from, to)?,
                kind: self.kind,
                origin: o.clone(),
            },
        })
    }

    /// An involution assembled from trusted parts; only the type is computed.
    pub(crate) fn assemble(algebra: AlgebraRef, map: Matrix, origin: Origin) -> Result<Involution> {
        let kind = detect_type(&algebra, &map)?;
        Ok(Involution {
            algebra,
            map,
            kind,
            origin,
        })
    }
}

pub(crate) fn apply_map(f: &Field, m: &Matrix, x: &[Elem]) -> Vector {
    let n = m.rows();
    let mut out = alloc::vec![f.zero(); n];
    for (j, xj) in x.iter().enumerate() {
        if f.is_zero(xj) {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            let c = m.get(i, j);
            if !f.is_zero(c) {
                *o = f.add(o, &f.mul(c, xj));
            }
        }
    }
    out
}

pub(crate) fn independent_subset(f: &Field, n: usize, vs: &[Vector]) -> Vec<Vector> {
    let mut eb = EchelonBasis::new(f, n, &[]);
    let mut out = Vec::new();
    for v in vs {
        if !eb.contains(f, v) {
            out.push(v.clone());
            eb = EchelonBasis::new(f, n, &out);
        }
    }
    out
}

fn detect_type(alg: &AlgebraRef, map: &Matrix) -> Result<InvolutionType> {
    let f = alg.field();
    let n = alg.dim();
    let deg = alg
        .degree()
        .ok_or_else(|| Error::pre("involution_check", "algebra dimension is not a square"))?;
    let sym = map.sub(f, &Matrix::identity(f, n)).nullspace(f);
    if f.characteristic() != 2 {
        if sym.len() == deg * (deg + 1) / 2 {
            Ok(InvolutionType::Orthogonal)
        } else if sym.len() == deg * (deg - 1) / 2 {
            Ok(InvolutionType::Symplectic)
        } else {
            Err(Error::axiom(
                "dim Sym ∈ {n(n±1)/2}",
                format!("dim Sym = {} for degree {deg}", sym.len()),
            ))
        }
    } else {
        let trd = alg
            .trd()
            .ok_or_else(|| Error::pre("involution_check", "no reduced trace available"))?;
        if sym.iter().all(|s| f.is_zero(&crate::linalg::dot(f, s, trd))) {
            Ok(InvolutionType::Symplectic)
        } else {
            Ok(InvolutionType::Orthogonal)
        }
    }
}

/// Validates `map` as an involution of the first kind and determines its type.
///
/// Anti-multiplicativity is checked on all basis pairs up to dimension 16 and
/// on (generator, basis) pairs beyond, which suffices because the algebra's
/// basis words are products of its generators.
pub fn involution_check(alg: &AlgebraRef, map: Matrix) -> Result<Involution> {
    let f = alg.field();
    let n = alg.dim();
    if map.rows() != n || map.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: map.rows(),
        });
    }
    let ap = |x: &[Elem]| apply_map(f, &map, x);
    if ap(&alg.one()) != alg.one() {
        return Err(Error::axiom("σ(1) = 1", "σ(1) differs from 1"));
    }
    for j in 0..n {
        let e = alg.basis(j);
        if ap(&ap(&e)) != e {
            return Err(Error::axiom("σ² = id", format!("at {}", alg.labels()[j])));
        }
    }
    let lefts: Vec<(String, Vector)> = if n <= 16 {
        (0..n).map(|i| (alg.labels()[i].clone(), alg.basis(i))).collect()
    } else {
        alg.generators()
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("generator {i}"), g.clone()))
            .collect()
    };
    for (name, x) in &lefts {
        let sx = ap(x);
        for j in 0..n {
            let y = alg.basis(j);
            if ap(&alg.mul(x, &y)) != alg.mul(&ap(&y), &sx) {
                return Err(Error::axiom(
                    "σ(xy) = σ(y)σ(x)",
                    format!("x = {name}, y = {}", alg.labels()[j]),
                ));
            }
        }
    }
    Involution::assemble(alg.clone(), map, Origin::Custom)
}

pub fn quaternion_involution(q: &AlgebraRef, variant: QuatVariant) -> Result<Involution> {
    if !matches!(q.provenance(), Provenance::Quaternion { .. }) {
        return Err(Error::pre("quaternion_involution", "not a quaternion presentation"));
    }
    let f = q.field();
    let (o, z, m) = (f.one(), f.zero(), f.neg(&f.one()));
    // images of 1, u, v, w as columns
    let cols: [[&Elem; 4]; 4] = match variant {
        QuatVariant::Canonical => [[&o, &z, &z, &z], [&o, &m, &z, &z], [&z, &z, &m, &z], [&z, &z, &z, &m]],
        QuatVariant::Sigma => [[&o, &z, &z, &z], [&o, &m, &z, &z], [&z, &z, &o, &z], [&z, &z, &z, &o]],
        QuatVariant::Tau => [[&o, &z, &z, &z], [&z, &o, &z, &z], [&z, &z, &m, &z], [&z, &z, &m, &o]],
    };
    let cols: Vec<Vector> = cols.iter().map(|c| c.iter().map(|x| (*x).clone()).collect()).collect();
    let inv = involution_check(q, Matrix::from_cols(f, 4, &cols))?;
    Ok(Involution {
        origin: Origin::Quaternion(variant),
        ..inv
    })
}

pub fn canonical_involution(q: &AlgebraRef) -> Result<Involution> {
    quaternion_involution(q, QuatVariant::Canonical)
}

/// `ad_φ` on `M_n(F)`: `σ(X) = G⁻¹XᵀG`.
pub fn adjoint_involution(phi: &BilinearForm) -> Result<Involution> {
    let f = phi.field();
    if !phi.is_nondegenerate() {
        return Err(Error::pre("adjoint_involution", "form is degenerate"));
    }
    let alternating = phi.is_alternating();
    let skew = phi.gram().transpose() == phi.gram().scale(f, &f.neg(&f.one()));
    if !phi.is_symmetric() && !skew {
        return Err(Error::pre("adjoint_involution", "form is neither symmetric nor alternating"));
    }
    let g = phi.gram();
    let n = phi.dim();
    let gi = g.inverse(f).ok_or(Error::DivisionByZero)?;
    let alg = matrix_algebra(f, n)?;
    let dim = n * n;
    let mut map = Matrix::zeros(f, dim, dim);
    // σ(E_ij) = (G⁻¹ e_j)(e_iᵀ G)
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            for k in 0..n {
                let a = gi.get(k, j);
                if f.is_zero(a) {
                    continue;
                }
                for l in 0..n {
                    let b = g.get(i, l);
                    if !f.is_zero(b) {
                        map.set(k * n + l, col, f.mul(a, b));
                    }
                }
            }
        }
    }
    let kind = if alternating || (skew && f.characteristic() != 2) {
        InvolutionType::Symplectic
    } else {
        InvolutionType::Orthogonal
    };
    Ok(Involution {
        algebra: alg,
        map,
        kind,
        origin: Origin::Adjoint(phi.clone()),
    })
}

/// `σ ⊗ τ` on `A ⊗ B`.
pub fn tensor_involutions(s: &Involution, t: &Involution) -> Result<Involution> {
    let f = s.field();
    if f != t.field() {
        return Err(Error::FieldMismatch);
    }
    let alg = tensor_algebra(&s.algebra, &t.algebra)?;
    let map = s.map.kron(f, &t.map);
    use InvolutionType::*;
    let kind = match (s.kind, t.kind, f.characteristic() == 2) {
        (Orthogonal, Orthogonal, _) => Orthogonal,
        (Symplectic, Symplectic, false) => Orthogonal,
        _ => Symplectic,
    };
    Ok(Involution {
        algebra: alg,
        map,
        kind,
        origin: Origin::Tensor(Box::new(s.clone()), Box::new(t.clone())),
    })
}

/// Tensor product of a nonempty list of involutions, left-nested.
pub fn tensor_all(list: &[Involution]) -> Result<Involution> {
    let (first, rest) = list
        .split_first()
        .ok_or_else(|| Error::pre("tensor_all", "empty factor list"))?;
    rest.iter().try_fold(first.clone(), |acc, x| tensor_involutions(&acc, x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Determinant {
    Class(SquareClass),
    Inconclusive(String),
}

/// Square class of `Nrd(a)` for an invertible alternating element `a`.
pub fn determinant_involution(s: &Involution, bound: usize) -> Result<Determinant> {
    let f = s.field();
    let alg = &s.algebra;
    if !s.is_orthogonal() {
        return Err(Error::pre("determinant_involution", "involution is not orthogonal"));
    }
    if !matches!(alg.provenance(), Provenance::Quaternion { .. } | Provenance::Matrix(_)) {
        return Err(Error::pre(
            "determinant_involution",
            "reduced norm needs quaternion or matrix provenance",
        ));
    }
    if alg.degree().is_none_or(|d| d % 2 == 1) {
        return Err(Error::pre("determinant_involution", "odd degree"));
    }
    let alt = s.alt();
    let scalars = ScalarSet::new(f, bound);
    let mut units: Vec<Elem> = Vec::new();
    let out = find_vector(f, alt.len(), &scalars, false, SEARCH_BUDGET as u64, |c| {
        let a = crate::search::combine(f, c, &alt);
        let n = reduced_norm(alg, &a).ok()?;
        if !f.is_zero(&n) {
            units.push(n);
        }
        (units.len() == 2).then_some(())
    });
    let Some(first) = units.first() else {
        return Ok(Determinant::Inconclusive(format!(
            "no invertible alternating element up to height {bound}"
        )));
    };
    let class = SquareClass::new(f, first.clone())?;
    if let (SearchOutcome::Found(()), Some(second)) = (&out, units.get(1)) {
        let other = SquareClass::new(f, second.clone())?;
        if class.same_as(f, &other)? == Some(false) {
            return Err(Error::Inconsistent(format!(
                "alternating units with norms {} and {} lie in different square classes",
                f.format(first),
                f.format(second)
            )));
        }
    }
    Ok(Determinant::Class(class))
}

/// `⟨⟨d₁,…,dₙ⟩⟩` from orthogonal quaternion factors in characteristic 2.
pub fn pfister_invariant(factors: &[Involution], bound: usize) -> Result<BilinearForm> {
    let f = factors
        .first()
        .ok_or_else(|| Error::pre("pfister_invariant", "no factors"))?
        .field()
        .clone();
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            found: f.characteristic(),
        });
    }
    let mut ds = Vec::with_capacity(factors.len());
    for s in factors {
        if !s.is_orthogonal() {
            return Err(Error::pre("pfister_invariant", "symplectic factor"));
        }
        if s.algebra.dim() != 4 {
            return Err(Error::pre("pfister_invariant", "factor is not a quaternion algebra"));
        }
        match determinant_involution(s, bound)? {
            Determinant::Class(c) => ds.push(c.rep),
            Determinant::Inconclusive(m) => return Err(Error::pre("pfister_invariant", m)),
        }
    }
    bilinear_pfister(&f, &ds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolIsotropy {
    /// `a ≠ 0` with `σ(a)a = 0`.
    Isotropic(Vector),
    /// `e² = e`, `σ(e)e = 0`, `dim eA = dim A / 2`.
    Metabolic(Vector),
    AnisotropicProven(String),
    NoWitnessUpToBound(usize),
}

impl InvolIsotropy {
    pub fn is_isotropic(&self) -> Option<bool> {
        match self {
            InvolIsotropy::Isotropic(_) | InvolIsotropy::Metabolic(_) => Some(true),
            InvolIsotropy::AnisotropicProven(_) => Some(false),
            InvolIsotropy::NoWitnessUpToBound(_) => None,
        }
    }
}

pub fn verify_isotropic(s: &Involution, a: &[Elem]) -> bool {
    let alg = &s.algebra;
    !alg.is_zero(a) && alg.is_zero(&alg.mul(&s.apply(a), a))
}

pub fn verify_metabolic(s: &Involution, e: &[Elem]) -> bool {
    let alg = &s.algebra;
    alg.mul(e, e) == e
        && alg.is_zero(&alg.mul(&s.apply(e), e))
        && 2 * alg.right_ideal_dim(e) == alg.dim()
}

/// Looks for isotropy and metabolic witnesses.
///
/// Split involutions are handled through their Gram matrix; in characteristic
/// 2 the span of products of alternating elements of orthogonal quaternion
/// factors is tried next; finally a bounded search over the algebra runs.
pub fn invol_isotropy_status(s: &Involution, bound: usize) -> Result<InvolIsotropy> {
    let f = s.field();
    let alg = &s.algebra;
    if let Some(split) = crate::decompose::split_involution(s, bound)? {
        let phi = BilinearForm::new(f, split.gram.clone())?;
        let n = phi.dim();
        let inv = split.cert.map().inverse(f).ok_or(Error::Inconsistent(
            "splitting map is singular".into(),
        ))?;
        if let Metabolic::Yes(w) = is_metabolic_bilinear(&phi, bound)? {
            let e = projection_onto(f, n, &w);
            let e = apply_map(f, &inv, e.entries());
            if !verify_metabolic(s, &e) {
                return Err(Error::Inconsistent("metabolic idempotent fails verification".into()));
            }
            return Ok(InvolIsotropy::Metabolic(e));
        }
        return Ok(match phi.isotropy(bound) {
            Isotropy::Isotropic(c) => {
                // a = c·e₁ᵀ has σ(a)a = φ(c,c)·G⁻¹e₁e₁ᵀ
                let mut a = Matrix::zeros(f, n, n);
                for (i, ci) in c.iter().enumerate() {
                    a.set(i, 0, ci.clone());
                }
                let a = apply_map(f, &inv, a.entries());
                if !verify_isotropic(s, &a) {
                    return Err(Error::Inconsistent("isotropy witness fails verification".into()));
                }
                InvolIsotropy::Isotropic(a)
            }
            Isotropy::AnisotropicProven(m) => {
                InvolIsotropy::AnisotropicProven(format!("Gram form anisotropic ({m:?})"))
            }
            Isotropy::NoWitnessUpToBound(b) => InvolIsotropy::NoWitnessUpToBound(b),
        });
    }
    if f.characteristic() == 2 && s.is_orthogonal() {
        if let Some(a) = alternating_monomial_witness(s, bound)? {
            return Ok(InvolIsotropy::Isotropic(a));
        }
    }
    let scalars = ScalarSet::new(f, bound);
    let basis: Vec<Vector> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
    let out = find_vector(f, alg.dim(), &scalars, true, SEARCH_BUDGET as u64, |c| {
        let a = crate::search::combine(f, c, &basis);
        verify_isotropic(s, &a).then_some(a)
    });
    Ok(match out {
        SearchOutcome::Found(a) => InvolIsotropy::Isotropic(a),
        SearchOutcome::Exhausted if scalars.complete => {
            InvolIsotropy::AnisotropicProven("exhaustive search over the algebra".into())
        }
        _ => InvolIsotropy::NoWitnessUpToBound(bound),
    })
}

/// Projection matrix onto `span(w)` along a complement, as `n²` coordinates.
pub(crate) fn projection_onto(f: &Field, n: usize, w: &[Vector]) -> Matrix {
    let full = crate::forms::complete_basis(f, n, w);
    let p = Matrix::from_cols(f, n, &full);
    let pi = p.inverse(f).expect("completed basis is invertible");
    let mut d = Matrix::zeros(f, n, n);
    for i in 0..w.len() {
        d.set(i, i, f.one());
    }
    p.mul(f, &d).mul(f, &pi)
}

/// In characteristic 2, for orthogonal quaternion leaves with `Alt = F·vₖ`,
/// the products `v_S` are symmetric and commute, so
/// `σ(x)x = x² = Σ x_S² ∏_{k∈S} vₖ²` for `x = Σ x_S v_S`.
fn alternating_monomial_witness(s: &Involution, bound: usize) -> Result<Option<Vector>> {
    let f = s.field();
    let leaves = s.leaves();
    if leaves.iter().any(|l| l.algebra.dim() != 4 || !l.is_orthogonal()) {
        return Ok(None);
    }
    let mut vs = Vec::new();
    let mut bs = Vec::new();
    for l in &leaves {
        let alt = l.alt();
        if alt.len() != 1 {
            return Ok(None);
        }
        let v = alt[0].clone();
        let Some(b) = l.algebra.as_scalar(&l.algebra.mul(&v, &v)) else {
            return Ok(None);
        };
        vs.push(v);
        bs.push(b);
    }
    let k = leaves.len();
    let mut monomials: Vec<Vector> = Vec::with_capacity(1 << k);
    let mut diag: Vec<Elem> = Vec::with_capacity(1 << k);
    for mask in 0..(1usize << k) {
        let mut m: Vector = alloc::vec![f.one()];
        let mut b = f.one();
        for (i, l) in leaves.iter().enumerate() {
            let factor = if mask >> (k - 1 - i) & 1 == 1 {
                b = f.mul(&b, &bs[i]);
                vs[i].clone()
            } else {
                l.algebra.one()
            };
            m = crate::linalg::vkron(f, &m, &factor);
        }
        monomials.push(m);
        diag.push(b);
    }
    let q = crate::forms::QuadraticForm::diagonal(f, &diag);
    let Isotropy::Isotropic(x) = q.isotropy(bound) else {
        return Ok(None);
    };
    let a = crate::search::combine(f, &x, &monomials);
    if !verify_isotropic(s, &a) {
        return Err(Error::Inconsistent("monomial witness fails verification".into()));
    }
    Ok(Some(a))
}
