//! Semi-traces and quadratic pairs.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{quaternion_make, AlgebraRef, Provenance};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{witt_decompose, BilinearForm, Certification, QuadraticForm, SEARCH_BUDGET};
use crate::involution::{
    adjoint_involution, independent_subset, quaternion_involution, tensor_involutions,
    Involution, InvolutionType, QuatVariant,
};
use crate::linalg::{vkron, EchelonBasis, Matrix, Vector};
use crate::search::{combine, find_vector, ScalarSet, SearchOutcome};

#[derive(Clone, Debug)]
pub enum PairOrigin {
    /// `[c‖·d)`
    Quaternion { c: Elem, d: Elem },
    Adjoint(QuadraticForm),
    /// `(B,τ) ⊗ (A,σ,f)`
    Tensor(Box<Involution>, Box<QuadPair>),
    Custom,
}

/// `(A, σ, f)` with `f(x) = Trd(ℓx)` on `Sym(A,σ)`.
///
/// `ℓ` is stored reduced modulo a fixed echelon basis of `Alt(A,σ)`, so two
/// pairs on the same `(A,σ)` have equal semi-traces iff their `ℓ` agree.
#[derive(Clone, Debug)]
pub struct QuadPair {
    inv: Involution,
    ell: Vector,
    origin: PairOrigin,
}

impl QuadPair {
    pub fn involution(&self) -> &Involution {
        &self.inv
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.inv.algebra()
    }

    pub fn field(&self) -> &Field {
        self.inv.field()
    }

    pub fn ell(&self) -> &[Elem] {
        &self.ell
    }

    pub fn origin(&self) -> &PairOrigin {
        &self.origin
    }

    /// `f(s) = Trd(ℓs)`; meaningful for symmetric `s`.
    pub fn eval(&self, s: &[Elem]) -> Elem {
        let alg = self.algebra();
        let t = alg.trd().expect("pairs live on algebras with a reduced trace");
        crate::linalg::dot(self.field(), &alg.mul(&self.ell, s), t)
    }

    /// Values of `f` on the basis returned by `Involution::sym`.
    pub fn value_table(&self) -> Vec<Elem> {
        self.inv.sym().iter().map(|s| self.eval(s)).collect()
    }

    pub fn same_semitrace(&self, o: &QuadPair) -> bool {
        self.inv == o.inv && self.ell == o.ell
    }

    pub fn extend(&self, to: &Field) -> Result<QuadPair> {
        let from = self.field();
        match &self.origin {
            PairOrigin::Adjoint(rho) => adjoint_qp(&rho.extend(to)?),
            PairOrigin::Tensor(t, p) => qp_tensor(&t.extend(to)?, &p.extend(to)?),
            PairOrigin::Quaternion { c, d } => quaternion_qp(to, &to.embed(from, c)?, &to.embed(from, d)?),
            PairOrigin::Custom => {
                let ell: Vector = self.ell.iter().map(|x| to.embed(from, x)).collect::<Result<_>>()?;
                semitrace_repr(&self.inv.extend(to)?, &ell)
            }
        }
    }

    pub(crate) fn with_origin(mut self, origin: PairOrigin) -> QuadPair {
        self.origin = origin;
        self
    }
}

fn check_pair_type(inv: &Involution) -> Result<()> {
    let want = if inv.field().characteristic() == 2 {
        InvolutionType::Symplectic
    } else {
        InvolutionType::Orthogonal
    };
    if inv.kind() != want {
        return Err(Error::pre(
            "quadratic pair",
            format!("involution must be {want:?} in characteristic {}", inv.field().characteristic()),
        ));
    }
    Ok(())
}

fn alt_echelon(inv: &Involution) -> EchelonBasis {
    EchelonBasis::new(inv.field(), inv.algebra().dim(), &inv.alt())
}

/// The pair given by `ℓ`; requires `ℓ + σ(ℓ) = 1`.
pub fn semitrace_repr(inv: &Involution, ell: &[Elem]) -> Result<QuadPair> {
    let f = inv.field();
    let alg = inv.algebra();
    check_pair_type(inv)?;
    if ell.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: ell.len(),
        });
    }
    if alg.add(ell, &inv.apply(ell)) != alg.one() {
        return Err(Error::pre("semitrace_repr", "ℓ + σ(ℓ) ≠ 1"));
    }
    let ell = alt_echelon(inv).reduce(f, ell);
    let pair = QuadPair {
        inv: inv.clone(),
        ell,
        origin: PairOrigin::Custom,
    };
    check_semitrace_identity(&pair)?;
    Ok(pair)
}

/// `f(x + σ(x)) = Trd(x)` on every basis element.
pub fn check_semitrace_identity(p: &QuadPair) -> Result<()> {
    let alg = p.algebra();
    for i in 0..alg.dim() {
        let x = alg.basis(i);
        let s = alg.add(&x, &p.inv.apply(&x));
        if p.eval(&s) != alg.reduced_trace(&x)? {
            return Err(Error::axiom(
                "f(x + σ(x)) = Trd(x)",
                format!("x = {}", alg.labels()[i]),
            ));
        }
    }
    Ok(())
}

/// Some `ℓ` with `ℓ + σ(ℓ) = 1`.
pub fn find_semitrace(inv: &Involution) -> Result<Vector> {
    let f = inv.field();
    let n = inv.algebra().dim();
    let m = Matrix::identity(f, n).add(f, inv.map());
    m.solve(f, &inv.algebra().one())
        .ok_or_else(|| Error::Inconsistent("no ℓ with ℓ + σ(ℓ) = 1".into()))
}

/// The pair whose semi-trace takes `values` on the basis `inv.sym()`.
pub fn semitrace_from_values(inv: &Involution, values: &[Elem]) -> Result<QuadPair> {
    let f = inv.field();
    let alg = inv.algebra();
    let n = alg.dim();
    let sym = inv.sym();
    if values.len() != sym.len() {
        return Err(Error::DimensionMismatch {
            expected: sym.len(),
            found: values.len(),
        });
    }
    let trd = alg
        .trd()
        .ok_or_else(|| Error::pre("semitrace_from_values", "no reduced trace"))?;
    // unknown ℓ: rows Trd(ℓ s) = value, and (I + σ)ℓ = 1
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (s, val) in sym.iter().zip(values) {
        let right = alg.right_mult(s);
        let row: Vector = (0..n).map(|j| crate::linalg::dot(f, &right.col(j), trd)).collect();
        rows.push(row);
        rhs.push(val.clone());
    }
    let m = Matrix::identity(f, n).add(f, inv.map());
    for i in 0..n {
        rows.push(m.row(i).to_vec());
        rhs.push(alg.one()[i].clone());
    }
    let sys = Matrix::from_rows(rows)?;
    let ell = sys
        .solve(f, &rhs)
        .ok_or_else(|| Error::pre("semitrace_from_values", "value table is inconsistent"))?;
    semitrace_repr(inv, &ell)
}

/// `(B,τ) ⊗ (A,σ,f)` with semi-trace given by `1 ⊗ ℓ`.
pub fn qp_tensor(tau: &Involution, p: &QuadPair) -> Result<QuadPair> {
    let f = p.field();
    if f != tau.field() {
        return Err(Error::FieldMismatch);
    }
    if f.characteristic() != 2 && tau.kind() != InvolutionType::Orthogonal {
        return Err(Error::pre("qp_tensor", "τ must be orthogonal outside characteristic 2"));
    }
    let inv = tensor_involutions(tau, &p.inv)?;
    let ell = vkron(f, &tau.algebra().one(), &p.ell);
    let out = semitrace_repr(&inv, &ell)?;
    // g(s₁⊗s₂) = Trd(s₁) f(s₂)
    let bt = tau.algebra();
    for s1 in tau.sym() {
        let t1 = bt.reduced_trace(&s1)?;
        for s2 in p.inv.sym() {
            let g = out.eval(&vkron(f, &s1, &s2));
            if g != f.mul(&t1, &p.eval(&s2)) {
                return Err(Error::Inconsistent("g(s₁⊗s₂) ≠ Trd(s₁)f(s₂)".into()));
            }
        }
    }
    Ok(out.with_origin(PairOrigin::Tensor(Box::new(tau.clone()), Box::new(p.clone()))))
}

/// `(B,τ) ⊠ (C,σ)` for symplectic `τ`, `σ`.
pub fn boxtimes(tau: &Involution, sigma: &Involution) -> Result<QuadPair> {
    let f = tau.field();
    if tau.kind() != InvolutionType::Symplectic || sigma.kind() != InvolutionType::Symplectic {
        return Err(Error::pre("boxtimes", "both involutions must be symplectic"));
    }
    let out = if f.characteristic() != 2 {
        let inv = tensor_involutions(tau, sigma)?;
        let half = f.inv(&f.from_int(2))?;
        semitrace_repr(&inv, &inv.algebra().scalar(&half))?
    } else {
        let ell = find_semitrace(sigma)?;
        // a second choice ℓ + s with s symmetric but not alternating
        let alt = EchelonBasis::new(f, sigma.algebra().dim(), &sigma.alt());
        let s = sigma
            .sym()
            .into_iter()
            .find(|s| !alt.contains(f, s))
            .ok_or_else(|| Error::Inconsistent("Sym equals Alt".into()))?;
        let p1 = semitrace_repr(sigma, &ell)?;
        let p2 = semitrace_repr(sigma, &sigma.algebra().add(&ell, &s))?;
        debug_assert!(!p1.same_semitrace(&p2));
        let a = qp_tensor(tau, &p1)?;
        let b = qp_tensor(tau, &p2)?;
        if !a.same_semitrace(&b) {
            return Err(Error::Inconsistent("⊠ depends on the choice of semi-trace".into()));
        }
        // h(s₁⊗s₂) = 0
        for s1 in tau.sym() {
            for s2 in sigma.sym() {
                if !f.is_zero(&a.eval(&vkron(f, &s1, &s2))) {
                    return Err(Error::Inconsistent("h(s₁⊗s₂) ≠ 0".into()));
                }
            }
        }
        a
    };
    Ok(out)
}

/// `[c‖·d)`: the presentation `[c,d)` with `u ↦ 1 − u`, `v ↦ v` and `ℓ = u`.
pub fn quaternion_qp(f: &Field, c: &Elem, d: &Elem) -> Result<QuadPair> {
    let q = quaternion_make(f, c, d)?;
    let inv = quaternion_involution(&q, QuatVariant::Sigma)?;
    let p = semitrace_repr(&inv, &q.basis(1))?;
    Ok(p.with_origin(PairOrigin::Quaternion {
        c: c.clone(),
        d: d.clone(),
    }))
}

/// `Ad(ρ) = (M_n, ad_{b_ρ}, f_ρ)` with `ℓ = B⁻¹U`, `B` the polar Gram matrix
/// and `U` the upper-triangular coefficients; then `Trd(ℓ·vvᵀB) = vᵀUv`.
pub fn adjoint_qp(rho: &QuadraticForm) -> Result<QuadPair> {
    let f = rho.field();
    if !rho.is_nonsingular() {
        return Err(Error::pre("adjoint_qp", "form is singular"));
    }
    let b = rho.polar();
    let inv = adjoint_involution(&BilinearForm::new(f, b.clone())?)?;
    let bi = b.inverse(f).ok_or(Error::DivisionByZero)?;
    let ell = bi.mul(f, rho.upper());
    let p = semitrace_repr(&inv, ell.entries())?;
    let n = rho.dim();
    for i in 0..n {
        let v = crate::linalg::unit_vector(f, n, i);
        if p.eval(&rank_one(f, &b, &v)) != rho.eval(&v) {
            return Err(Error::Inconsistent("f_q(Φ(v⊗v)) ≠ q(v)".into()));
        }
    }
    Ok(p.with_origin(PairOrigin::Adjoint(rho.clone())))
}

/// `Φ(v⊗v)`: the matrix `w ↦ b(v,w)v`, i.e. `vvᵀB`.
pub fn rank_one(f: &Field, b: &Matrix, v: &[Elem]) -> Vector {
    let n = v.len();
    let vb: Vector = (0..n)
        .map(|j| f.sum((0..n).map(|k| f.mul(&v[k], b.get(k, j))).collect::<Vec<_>>().iter()))
        .collect();
    let mut out = Vec::with_capacity(n * n);
    for vi in v {
        for x in &vb {
            out.push(f.mul(vi, x));
        }
    }
    out
}

/// Gram matrix `G` with `σ = ad_G` on a matrix algebra, first nonzero entry 1.
pub fn recover_gram(inv: &Involution) -> Result<Matrix> {
    let f = inv.field();
    let alg = inv.algebra();
    let Provenance::Matrix(n) = *alg.provenance() else {
        return Err(Error::pre("recover_quadratic_form", "not a matrix algebra"));
    };
    // G σ(X) = Xᵀ G for every generator X; unknowns G_kl at k*n + l
    let mut rows: Vec<Vector> = Vec::new();
    for x in alg.generators() {
        let xm = Matrix::from_entries(n, n, x.clone())?;
        let sx = Matrix::from_entries(n, n, inv.apply(x))?;
        for i in 0..n {
            for j in 0..n {
                let mut row = alloc::vec![f.zero(); n * n];
                for k in 0..n {
                    // (Gσ(X))_ij = Σ_k G_ik σ(X)_kj
                    let c = sx.get(k, j);
                    if !f.is_zero(c) {
                        row[i * n + k] = f.add(&row[i * n + k], c);
                    }
                    // (XᵀG)_ij = Σ_k X_ki G_kj
                    let c = xm.get(k, i);
                    if !f.is_zero(c) {
                        row[k * n + j] = f.sub(&row[k * n + j], c);
                    }
                }
                if row.iter().any(|c| !f.is_zero(c)) {
                    rows.push(row);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        alloc::vec![alloc::vec![f.one()]]
    } else {
        Matrix::from_rows(rows)?.nullspace(f)
    };
    if sol.len() != 1 {
        return Err(Error::pre(
            "recover_quadratic_form",
            format!("Gram solution space has dimension {}", sol.len()),
        ));
    }
    let g = &sol[0];
    let lead = g.iter().find(|c| !f.is_zero(c)).expect("nonzero solution");
    let li = f.inv(lead)?;
    let g: Vector = g.iter().map(|c| f.mul(c, &li)).collect();
    let g = Matrix::from_entries(n, n, g)?;
    if g.rank(f) != n {
        return Err(Error::Inconsistent("recovered Gram matrix is singular".into()));
    }
    Ok(g)
}

/// The form `q(v) = vᵀ G ℓ v` recovered from a split pair with `σ = ad_G`.
pub fn form_from_gram(f: &Field, g: &Matrix, ell: &Matrix) -> Result<QuadraticForm> {
    let n = g.rows();
    let m = g.mul(f, ell);
    let mut u = Matrix::zeros(f, n, n);
    for i in 0..n {
        u.set(i, i, m.get(i, i).clone());
        for j in i + 1..n {
            u.set(i, j, f.add(m.get(i, j), m.get(j, i)));
        }
    }
    QuadraticForm::new(f, u)
}

/// Recovers `(G, ρ)` with `(A,σ,f) = Ad(ρ)` on a matrix algebra.
pub fn recover_quadratic_form(p: &QuadPair) -> Result<(Matrix, QuadraticForm)> {
    let f = p.field();
    let g = recover_gram(&p.inv)?;
    let n = g.rows();
    let rho = form_from_gram(f, &g, &Matrix::from_entries(n, n, p.ell.clone())?)?;
    if !rho.is_nonsingular() {
        return Err(Error::Inconsistent("recovered form is singular".into()));
    }
    if rho.polar() != g {
        return Err(Error::Inconsistent("polar form of ρ differs from G".into()));
    }
    Ok((g, rho))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QpIsotropy {
    /// `e² = e`, `σ(e) = 1 − e`, `f(eA ∩ Sym) = 0`.
    Hyperbolic(Vector),
    /// Symmetric `s ≠ 0` with `s² = 0`, `f(s) = 0`, and no hyperbolic idempotent
    /// was found.
    Isotropic(Vector),
    AnisotropicProven(String),
    NoWitnessUpToBound(usize),
}

impl QpIsotropy {
    pub fn is_isotropic(&self) -> Option<bool> {
        match self {
            QpIsotropy::Hyperbolic(_) | QpIsotropy::Isotropic(_) => Some(true),
            QpIsotropy::AnisotropicProven(_) => Some(false),
            QpIsotropy::NoWitnessUpToBound(_) => None,
        }
    }
}

pub fn verify_qp_isotropic(p: &QuadPair, s: &[Elem]) -> bool {
    let alg = p.algebra();
    let f = p.field();
    !alg.is_zero(s)
        && p.inv.apply(s) == s
        && alg.is_zero(&alg.mul(s, s))
        && f.is_zero(&p.eval(s))
}

pub fn verify_hyperbolic(p: &QuadPair, e: &[Elem]) -> bool {
    let alg = p.algebra();
    let f = p.field();
    if alg.mul(e, e) != e || p.inv.apply(e) != alg.sub(&alg.one(), e) {
        return false;
    }
    ea_sym(p, e).iter().all(|s| f.is_zero(&p.eval(s)))
}

/// Basis of `eA ∩ Sym(A,σ)`.
fn ea_sym(p: &QuadPair, e: &[Elem]) -> Vec<Vector> {
    let f = p.field();
    let alg = p.algebra();
    let n = alg.dim();
    let lm = alg.left_mult(e);
    let ea: Vec<Vector> = independent_subset(f, n, &(0..n).map(|j| lm.col(j)).collect::<Vec<_>>());
    // coefficients c with σ(Σ cᵢ xᵢ) = Σ cᵢ xᵢ
    let cols: Vec<Vector> = ea
        .iter()
        .map(|x| alg.sub(&p.inv.apply(x), x))
        .collect();
    if cols.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_cols(f, n, &cols);
    m.nullspace(f).iter().map(|c| combine(f, c, &ea)).collect()
}

/// Isotropy and hyperbolicity of a quadratic pair.
///
/// Small pairs over finite fields are decided by exhaustive search over
/// `Sym` and over the affine space `ℓ + Skew` of candidate idempotents.
/// Split pairs on matrix algebras go through the recovered quadratic form;
/// everything else gets a bounded search over `Sym`.
pub fn qp_isotropy_status(p: &QuadPair, bound: usize) -> Result<QpIsotropy> {
    let f = p.field();
    let sym = p.inv.sym();
    let small = f
        .size()
        .and_then(|q| q.checked_pow(sym.len() as u32))
        .is_some_and(|total| total <= SEARCH_BUDGET as u128);
    if small {
        return Ok(qp_isotropy_exhaustive(p, &sym));
    }
    if matches!(p.algebra().provenance(), Provenance::Matrix(_)) {
        if let Some(r) = qp_isotropy_split(p, bound)? {
            return Ok(r);
        }
    }
    let scalars = ScalarSet::new(f, bound);
    let out = find_vector(f, sym.len(), &scalars, true, SEARCH_BUDGET as u64, |c| {
        let s = combine(f, c, &sym);
        verify_qp_isotropic(p, &s).then_some(s)
    });
    Ok(match out {
        SearchOutcome::Found(s) => QpIsotropy::Isotropic(s),
        SearchOutcome::Exhausted if scalars.complete => {
            QpIsotropy::AnisotropicProven("exhaustive search over Sym".into())
        }
        _ => QpIsotropy::NoWitnessUpToBound(bound),
    })
}

/// Exhaustive witness search; needs a finite field.
pub fn qp_isotropy_exhaustive(p: &QuadPair, sym: &[Vector]) -> QpIsotropy {
    let f = p.field();
    let alg = p.algebra();
    let n = alg.dim();
    let scalars = ScalarSet::new(f, 0);
    let skew = p.inv.map().add(f, &Matrix::identity(f, n)).nullspace(f);
    // idempotents with σ(e) = 1 − e lie in ℓ₀ + Skew for any ℓ₀ with ℓ₀ + σ(ℓ₀) = 1
    let ell0 = p.ell.clone();
    if verify_hyperbolic(p, &ell0) {
        return QpIsotropy::Hyperbolic(ell0);
    }
    let out = find_vector(f, skew.len(), &scalars, false, u64::MAX, |c| {
        let e = alg.add(&ell0, &combine(f, c, &skew));
        verify_hyperbolic(p, &e).then_some(e)
    });
    if let SearchOutcome::Found(e) = out {
        return QpIsotropy::Hyperbolic(e);
    }
    let out = find_vector(f, sym.len(), &scalars, true, u64::MAX, |c| {
        let s = combine(f, c, sym);
        verify_qp_isotropic(p, &s).then_some(s)
    });
    match out {
        SearchOutcome::Found(s) => QpIsotropy::Isotropic(s),
        _ => QpIsotropy::AnisotropicProven("exhaustive search over Sym".into()),
    }
}

/// Witnesses from the recovered form: `s = vvᵀG` for `q(v) = 0`, and the
/// projection onto `W` along `W′` for a hyperbolic basis `(W, W′)`.
fn qp_isotropy_split(p: &QuadPair, bound: usize) -> Result<Option<QpIsotropy>> {
    let f = p.field();
    let (g, rho) = recover_quadratic_form(p)?;
    let n = rho.dim();
    let wd = witt_decompose(&rho, bound)?;
    if wd.is_hyperbolic() {
        let mut basis: Vec<Vector> = wd.hyperbolic_pairs.iter().map(|(e, _)| e.clone()).collect();
        basis.extend(wd.hyperbolic_pairs.iter().map(|(_, e)| e.clone()));
        let pm = Matrix::from_cols(f, n, &basis);
        let pi = pm.inverse(f).ok_or(Error::Inconsistent("hyperbolic basis is singular".into()))?;
        let mut d = Matrix::zeros(f, n, n);
        for i in 0..n / 2 {
            d.set(i, i, f.one());
        }
        let e = pm.mul(f, &d).mul(f, &pi).entries().to_vec();
        if !verify_hyperbolic(p, &e) {
            return Err(Error::Inconsistent("hyperbolic idempotent fails verification".into()));
        }
        return Ok(Some(QpIsotropy::Hyperbolic(e)));
    }
    if let Some((v, _)) = wd.hyperbolic_pairs.first() {
        let s = rank_one(f, &g, v);
        if !verify_qp_isotropic(p, &s) {
            return Err(Error::Inconsistent("isotropy witness fails verification".into()));
        }
        return Ok(Some(QpIsotropy::Isotropic(s)));
    }
    Ok(match wd.certified {
        Certification::SearchBound(_) => None,
        c => Some(QpIsotropy::AnisotropicProven(format!("recovered form anisotropic ({c:?})"))),
    })
}
