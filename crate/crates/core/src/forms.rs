//! Bilinear and quadratic forms.
//!
//! Quadratic forms are stored as upper triangular matrices `U` with
//! `q(x) = xᵀ U x`; the polar form `U + Uᵀ` is always derived.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, SquareDecision, WpDecision};
use crate::linalg::{dot, is_zero_vec, unit_vector, vscale, vsub, EchelonBasis, Matrix, Vector};
use crate::search::{combine, find_vector, ScalarSet, SearchOutcome};

/// Candidate budget for bounded vector searches.
pub const SEARCH_BUDGET: u64 = 400_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    field: Field,
    gram: Matrix,
    /// Slots of a bilinear Pfister form, when built as one.
    pfister: Option<Vec<Elem>>,
}

impl BilinearForm {
    pub fn new(field: &Field, gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        Ok(BilinearForm {
            field: field.clone(),
            gram,
            pfister: None,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn pfister_slots(&self) -> Option<&[Elem]> {
        self.pfister.as_deref()
    }

    pub fn eval(&self, x: &[Elem], y: &[Elem]) -> Elem {
        self.gram.bilinear(&self.field, x, y)
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_alternating(&self) -> bool {
        let f = &self.field;
        (0..self.dim()).all(|i| f.is_zero(self.gram.get(i, i)))
            && self.gram == self.gram.transpose().map(|x| f.neg(x))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dim() == 0 || !self.field.is_zero(&self.gram.det(&self.field))
    }

    /// Basis of `rad(V,b) = {x : b(x,y) = 0 for all y}`.
    pub fn radical(&self) -> Vec<Vector> {
        self.gram.transpose().nullspace(&self.field)
    }

    /// The quadratic form `x ↦ b(x,x)`.
    pub fn diagonal_form(&self) -> QuadraticForm {
        let f = &self.field;
        let n = self.dim();
        let u = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                self.gram.get(i, i).clone()
            } else if i < j {
                f.add(self.gram.get(i, j), self.gram.get(j, i))
            } else {
                f.zero()
            }
        });
        QuadraticForm::new(f, u).expect("square")
    }

    pub fn scale(&self, c: &Elem) -> BilinearForm {
        BilinearForm {
            field: self.field.clone(),
            gram: self.gram.scale(&self.field, c),
            pfister: None,
        }
    }

    /// The form `(x,y) ↦ b(Tx, Ty)`.
    pub fn transform(&self, t: &Matrix) -> BilinearForm {
        let f = &self.field;
        BilinearForm {
            field: f.clone(),
            gram: t.transpose().mul(f, &self.gram).mul(f, t),
            pfister: None,
        }
    }

    pub fn extend(&self, to: &Field) -> Result<BilinearForm> {
        Ok(BilinearForm {
            field: to.clone(),
            gram: self.gram.extend(&self.field, to)?,
            pfister: match &self.pfister {
                Some(s) => Some(s.iter().map(|x| to.embed(&self.field, x)).collect::<Result<_>>()?),
                None => None,
            },
        })
    }

    pub fn isotropy(&self, bound: usize) -> Isotropy {
        isotropy_quadratic(&self.diagonal_form(), bound)
    }
}

/// `⟨a₁,…,aₙ⟩`.
pub fn diag_bilinear(f: &Field, a: &[Elem]) -> Result<BilinearForm> {
    if a.iter().any(|x| f.is_zero(x)) {
        return Err(Error::pre("diag_bilinear", "zero diagonal entry"));
    }
    BilinearForm::new(f, Matrix::diagonal(f, a))
}

/// `⟨⟨a₁,…,aₘ⟩⟩ = ⟨1,a₁⟩ ⊗ … ⊗ ⟨1,aₘ⟩`.
pub fn bilinear_pfister(f: &Field, a: &[Elem]) -> Result<BilinearForm> {
    let mut g = Matrix::identity(f, 1);
    for x in a {
        if f.is_zero(x) {
            return Err(Error::pre("bilinear_pfister", "zero slot"));
        }
        g = g.kron(f, &Matrix::diagonal(f, &[f.one(), x.clone()]));
    }
    let mut b = BilinearForm::new(f, g)?;
    b.pfister = Some(a.to_vec());
    Ok(b)
}

pub fn tensor_bb(phi: &BilinearForm, psi: &BilinearForm) -> Result<BilinearForm> {
    if phi.field != psi.field {
        return Err(Error::FieldMismatch);
    }
    if !phi.is_symmetric() || !psi.is_symmetric() {
        return Err(Error::pre("tensor_bb", "both forms must be symmetric"));
    }
    let f = &phi.field;
    let mut out = BilinearForm::new(f, phi.gram.kron(f, &psi.gram))?;
    if let (Some(a), Some(b)) = (&phi.pfister, &psi.pfister) {
        let mut s = a.clone();
        s.extend(b.iter().cloned());
        out.pfister = Some(s);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Field,
    upper: Matrix,
}

impl QuadraticForm {
    /// Accepts any square coefficient matrix and folds it to upper triangular
    /// form.
    pub fn new(field: &Field, coeffs: Matrix) -> Result<Self> {
        if !coeffs.is_square() {
            return Err(Error::DimensionMismatch {
                expected: coeffs.rows(),
                found: coeffs.cols(),
            });
        }
        let f = field;
        let n = coeffs.rows();
        let upper = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                coeffs.get(i, i).clone()
            } else if i < j {
                f.add(coeffs.get(i, j), coeffs.get(j, i))
            } else {
                f.zero()
            }
        });
        Ok(QuadraticForm {
            field: field.clone(),
            upper,
        })
    }

    /// The binary form `[a,b] = ax² + xy + by²`.
    pub fn binary(f: &Field, a: Elem, b: Elem) -> QuadraticForm {
        let u = Matrix::from_rows(vec![vec![a, f.one()], vec![f.zero(), b]]).unwrap();
        QuadraticForm::new(f, u).unwrap()
    }

    /// `a₁x₁² + … + aₙxₙ²`.
    pub fn diagonal(f: &Field, a: &[Elem]) -> QuadraticForm {
        QuadraticForm::new(f, Matrix::diagonal(f, a)).unwrap()
    }

    pub fn zero_form(f: &Field) -> QuadraticForm {
        QuadraticForm::new(f, Matrix::zeros(f, 0, 0)).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn upper(&self) -> &Matrix {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    pub fn eval(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..x.len() {
            if f.is_zero(&x[i]) {
                continue;
            }
            let mut row = f.zero();
            for j in i..x.len() {
                let u = self.upper.get(i, j);
                if !f.is_zero(u) && !f.is_zero(&x[j]) {
                    row = f.add(&row, &f.mul(u, &x[j]));
                }
            }
            acc = f.add(&acc, &f.mul(&x[i], &row));
        }
        acc
    }

    /// Gram matrix of the polar form `b_q(x,y) = q(x+y) − q(x) − q(y)`.
    pub fn polar(&self) -> Matrix {
        self.upper.add(&self.field, &self.upper.transpose())
    }

    pub fn polar_eval(&self, x: &[Elem], y: &[Elem]) -> Elem {
        self.polar().bilinear(&self.field, x, y)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.dim() == 0 || !self.field.is_zero(&self.polar().det(&self.field))
    }

    /// `rad(V,q) = {x ∈ rad b_q : q(x) = 0}` is a subspace in characteristic
    /// 2 only on the radical of the polar form; this returns `rad b_q`.
    pub fn polar_radical(&self) -> Vec<Vector> {
        self.polar().nullspace(&self.field)
    }

    /// True iff no nonzero vector of `rad b_q` is isotropic.
    pub fn is_regular(&self) -> Option<bool> {
        let rad = self.polar_radical();
        if rad.is_empty() {
            return Some(true);
        }
        let sub = self.restrict(&rad);
        match sub.isotropy(0) {
            Isotropy::Isotropic(_) => Some(false),
            Isotropy::AnisotropicProven(_) => Some(true),
            Isotropy::NoWitnessUpToBound(_) => None,
        }
    }

    pub fn scale(&self, c: &Elem) -> QuadraticForm {
        QuadraticForm {
            field: self.field.clone(),
            upper: self.upper.scale(&self.field, c),
        }
    }

    /// The form `x ↦ q(Tx)`.
    pub fn transform(&self, t: &Matrix) -> QuadraticForm {
        let f = &self.field;
        QuadraticForm::new(f, t.transpose().mul(f, &self.upper).mul(f, t)).unwrap()
    }

    /// The restriction to the span of `basis` (in the coordinates of `basis`).
    pub fn restrict(&self, basis: &[Vector]) -> QuadraticForm {
        let f = &self.field;
        let t = Matrix::from_cols(f, self.dim(), basis);
        if basis.is_empty() {
            return QuadraticForm::zero_form(f);
        }
        self.transform(&t)
    }

    pub fn orthogonal_sum(&self, o: &QuadraticForm) -> QuadraticForm {
        let f = &self.field;
        let (n, m) = (self.dim(), o.dim());
        let u = Matrix::from_fn(n + m, n + m, |i, j| {
            if i < n && j < n {
                self.upper.get(i, j).clone()
            } else if i >= n && j >= n {
                o.upper.get(i - n, j - n).clone()
            } else {
                f.zero()
            }
        });
        QuadraticForm::new(f, u).unwrap()
    }

    pub fn extend(&self, to: &Field) -> Result<QuadraticForm> {
        Ok(QuadraticForm {
            field: to.clone(),
            upper: self.upper.extend(&self.field, to)?,
        })
    }

    pub fn isotropy(&self, bound: usize) -> Isotropy {
        isotropy_quadratic(self, bound)
    }

    pub fn format(&self) -> String {
        let f = &self.field;
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                let r: Vec<String> = self.upper.row(i).iter().map(|x| f.format(x)).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// `φ ⊗ ρ` for a symmetric bilinear `φ`:
/// `q(Σ xᵢ⊗vᵢ) = Σ b(xᵢ,xᵢ) q(vᵢ) + Σ_{i<j} b(xᵢ,xⱼ) b_q(vᵢ,vⱼ)`.
pub fn tensor_bq(phi: &BilinearForm, rho: &QuadraticForm) -> Result<QuadraticForm> {
    if phi.field != rho.field {
        return Err(Error::FieldMismatch);
    }
    if !phi.is_symmetric() {
        return Err(Error::pre("tensor_bq", "bilinear factor must be symmetric"));
    }
    let f = &phi.field;
    let (n, m) = (phi.dim(), rho.dim());
    let polar = rho.polar();
    let u = Matrix::from_fn(n * m, n * m, |r, c| {
        let (i, k) = (r / m, r % m);
        let (j, l) = (c / m, c % m);
        if r > c {
            return f.zero();
        }
        let b = phi.gram.get(i, j);
        if i == j {
            // inside a diagonal block: the block is b(x_i,x_i)·U
            f.mul(b, rho.upper.get(k, l))
        } else {
            f.mul(b, polar.get(k, l))
        }
    });
    QuadraticForm::new(f, u)
}

/// `φ ⊗ binary`, checking that `binary(e) = 1`.
pub fn quadratic_pfister(binary: &QuadraticForm, e: &[Elem], phi: &BilinearForm) -> Result<QuadraticForm> {
    let f = binary.field();
    if binary.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: binary.dim(),
        });
    }
    if !binary.is_nonsingular() {
        return Err(Error::pre("quadratic_pfister", "binary form is singular"));
    }
    if e.len() != 2 || !f.is_one(&binary.eval(e)) {
        return Err(Error::pre("quadratic_pfister", "designated vector does not represent 1"));
    }
    if phi.pfister.is_none() {
        return Err(Error::pre("quadratic_pfister", "bilinear factor is not a Pfister form"));
    }
    tensor_bq(phi, binary)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyMethod {
    /// Every candidate vector of a finite field was evaluated.
    Exhaustive,
    /// A complete decision procedure (square classes, `x²+x=c`, or p-basis
    /// coordinates in characteristic 2).
    Exact,
    /// Residue forms at the `t`-adic place are anisotropic.
    Valuation(SpringerCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isotropy {
    Isotropic(Vector),
    AnisotropicProven(AnisotropyMethod),
    NoWitnessUpToBound(usize),
}

impl Isotropy {
    pub fn is_isotropic(&self) -> Option<bool> {
        match self {
            Isotropy::Isotropic(_) => Some(true),
            Isotropy::AnisotropicProven(_) => Some(false),
            Isotropy::NoWitnessUpToBound(_) => None,
        }
    }
}

pub enum AnyForm<'a> {
    Bilinear(&'a BilinearForm),
    Quadratic(&'a QuadraticForm),
}

/// Isotropy of a quadratic form (`q(x)=0`) or a bilinear form (`b(x,x)=0`).
pub fn isotropy_search(form: AnyForm<'_>, bound: usize) -> Isotropy {
    match form {
        AnyForm::Bilinear(b) => b.isotropy(bound),
        AnyForm::Quadratic(q) => q.isotropy(bound),
    }
}

fn isotropy_quadratic(q: &QuadraticForm, bound: usize) -> Isotropy {
    let r = isotropy_inner(q, bound);
    if let Isotropy::Isotropic(x) = &r {
        assert!(
            !is_zero_vec(q.field(), x) && q.field().is_zero(&q.eval(x)),
            "isotropy witness failed verification"
        );
    }
    r
}

fn isotropy_inner(q: &QuadraticForm, bound: usize) -> Isotropy {
    let f = q.field();
    let n = q.dim();
    if n == 0 {
        return Isotropy::AnisotropicProven(AnisotropyMethod::Exact);
    }
    for i in 0..n {
        if f.is_zero(q.upper.get(i, i)) {
            return Isotropy::Isotropic(unit_vector(f, n, i));
        }
    }
    if f.characteristic() == 2 && q.polar().is_zero(f) {
        if let Some(r) = totally_singular_isotropy(q) {
            return r;
        }
    }
    if f.is_finite() {
        // Chevalley–Warning: three variables always suffice.
        let m = n.min(3);
        let sub = if m < n {
            q.restrict(&(0..m).map(|i| unit_vector(f, n, i)).collect::<Vec<_>>())
        } else {
            q.clone()
        };
        let scalars = ScalarSet::new(f, 0);
        let out = find_vector(f, m, &scalars, true, u64::MAX, |x| {
            f.is_zero(&sub.eval(x)).then(|| x.to_vec())
        });
        return match out {
            SearchOutcome::Found(x) => {
                let mut v = x;
                v.resize(n, f.zero());
                Isotropy::Isotropic(v)
            }
            _ => Isotropy::AnisotropicProven(AnisotropyMethod::Exhaustive),
        };
    }
    if n == 2 {
        if let Some(r) = binary_isotropy(q) {
            return r;
        }
    }
    // Binary subforms on coordinate pairs are decided exactly.
    for i in 0..n {
        for j in i + 1..n {
            let sub = q.restrict(&[unit_vector(f, n, i), unit_vector(f, n, j)]);
            if let Some(Isotropy::Isotropic(x)) = binary_isotropy(&sub) {
                let mut v = vec![f.zero(); n];
                v[i] = x[0].clone();
                v[j] = x[1].clone();
                return Isotropy::Isotropic(v);
            }
        }
    }
    if let SpringerResult::AnisotropicProven(c) = springer_certify(q) {
        return Isotropy::AnisotropicProven(AnisotropyMethod::Valuation(c));
    }
    let scalars = ScalarSet::new(f, bound);
    match find_vector(f, n, &scalars, true, SEARCH_BUDGET, |x| {
        f.is_zero(&q.eval(x)).then(|| x.to_vec())
    }) {
        SearchOutcome::Found(x) => Isotropy::Isotropic(x),
        _ => Isotropy::NoWitnessUpToBound(bound),
    }
}

/// Exact isotropy of a binary form when the square class or `x²+x=c` question
/// is decidable.
fn binary_isotropy(q: &QuadraticForm) -> Option<Isotropy> {
    let f = q.field();
    let a = q.upper.get(0, 0);
    let c = q.upper.get(0, 1);
    let b = q.upper.get(1, 1);
    if f.is_zero(a) {
        return Some(Isotropy::Isotropic(vec![f.one(), f.zero()]));
    }
    if f.is_zero(b) {
        return Some(Isotropy::Isotropic(vec![f.zero(), f.one()]));
    }
    let exact = Some(Isotropy::AnisotropicProven(AnisotropyMethod::Exact));
    if f.characteristic() == 2 {
        if f.is_zero(c) {
            // a x² = b y²  ⇔  (x/y)² = b/a
            return match f.is_square(&f.div(b, a).ok()?).ok()? {
                SquareDecision::Square(s) => Some(Isotropy::Isotropic(vec![s, f.one()])),
                SquareDecision::NonSquare(_) => exact,
                SquareDecision::Unknown(_) => None,
            };
        }
        let k = f.div(&f.mul(a, b), &f.square(c)).ok()?;
        return match f.wp_solve(&k).ok()? {
            // w = a z / c solves w² + w = ab/c² when a z² + c z + b = 0
            WpDecision::Member(w) => {
                let z = f.div(&f.mul(c, &w), a).ok()?;
                Some(Isotropy::Isotropic(vec![z, f.one()]))
            }
            WpDecision::NonMember(_) => exact,
            WpDecision::Unknown(_) => None,
        };
    }
    let disc = f.sub(&f.square(c), &f.mul(&f.from_int(4), &f.mul(a, b)));
    if f.is_zero(&disc) {
        let z = f.div(&f.neg(c), &f.mul(&f.from_int(2), a)).ok()?;
        return Some(Isotropy::Isotropic(vec![z, f.one()]));
    }
    match f.is_square(&disc).ok()? {
        SquareDecision::Square(s) => {
            let z = f.div(&f.sub(&s, c), &f.mul(&f.from_int(2), a)).ok()?;
            Some(Isotropy::Isotropic(vec![z, f.one()]))
        }
        SquareDecision::NonSquare(_) => exact,
        SquareDecision::Unknown(_) => None,
    }
}

/// Characteristic 2, `q = Σ aᵢxᵢ²`: the zero set is the kernel of the
/// p-basis coordinate matrix.
fn totally_singular_zeros(f: &Field, diag: &[Elem]) -> Option<Vec<Vector>> {
    let cols: Vec<Vec<Elem>> = diag
        .iter()
        .map(|a| f.frob_decompose(a))
        .collect::<Option<_>>()?;
    let width = cols.first().map(|c| c.len()).unwrap_or(1);
    let m = Matrix::from_cols(f, width, &cols);
    Some(m.nullspace(f))
}

fn totally_singular_isotropy(q: &QuadraticForm) -> Option<Isotropy> {
    let f = q.field();
    let diag: Vec<Elem> = (0..q.dim()).map(|i| q.upper.get(i, i).clone()).collect();
    let ker = totally_singular_zeros(f, &diag)?;
    Some(match ker.into_iter().next() {
        Some(x) => Isotropy::Isotropic(x),
        None => Isotropy::AnisotropicProven(AnisotropyMethod::Exact),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Exhaustive,
    Exact,
    ValuationCertified,
    SearchBound(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittData {
    pub witt_index: usize,
    pub hyperbolic_part_dim: usize,
    pub anisotropic_part: QuadraticForm,
    /// Basis (in input coordinates) of the anisotropic part.
    pub anisotropic_basis: Vec<Vector>,
    /// Hyperbolic pairs `(v,w)` with `q(v)=q(w)=0`, `b_q(v,w)=1`.
    pub hyperbolic_pairs: Vec<(Vector, Vector)>,
    pub arf: Option<ArfClass>,
    pub certified: Certification,
}

impl WittData {
    pub fn is_hyperbolic(&self) -> bool {
        self.anisotropic_basis.is_empty()
    }
}

/// Splits off hyperbolic planes until the remaining form has no isotropic
/// vector that the isotropy procedure can find.
pub fn witt_decompose(rho: &QuadraticForm, bound: usize) -> Result<WittData> {
    let f = rho.field();
    if !rho.is_nonsingular() {
        return Err(Error::pre("witt_decompose", "form is singular"));
    }
    let n = rho.dim();
    let polar = rho.polar();
    let mut basis: Vec<Vector> = (0..n).map(|i| unit_vector(f, n, i)).collect();
    let mut pairs = Vec::new();
    let certified;
    loop {
        if basis.is_empty() {
            certified = Certification::Exact;
            break;
        }
        let sub = rho.restrict(&basis);
        match sub.isotropy(bound) {
            Isotropy::Isotropic(y) => {
                let v = combine(f, &y, &basis);
                let (v, w) = complete_hyperbolic_pair(rho, &polar, &v, &basis)?;
                // polar-orthogonal complement of span(v,w) within span(basis)
                let eqs = Matrix::from_rows(vec![
                    basis.iter().map(|b| polar.bilinear(f, &v, b)).collect(),
                    basis.iter().map(|b| polar.bilinear(f, &w, b)).collect(),
                ])?;
                let ker = eqs.nullspace(f);
                basis = ker.iter().map(|k| combine(f, k, &basis)).collect();
                pairs.push((v, w));
            }
            Isotropy::AnisotropicProven(m) => {
                certified = match m {
                    AnisotropyMethod::Exhaustive => Certification::Exhaustive,
                    AnisotropyMethod::Exact => Certification::Exact,
                    AnisotropyMethod::Valuation(_) => Certification::ValuationCertified,
                };
                break;
            }
            Isotropy::NoWitnessUpToBound(b) => {
                certified = Certification::SearchBound(b);
                break;
            }
        }
    }
    let an = rho.restrict(&basis);
    let arf = if f.characteristic() == 2 && n % 2 == 0 {
        Some(arf_invariant(rho)?)
    } else {
        None
    };
    let data = WittData {
        witt_index: pairs.len(),
        hyperbolic_part_dim: 2 * pairs.len(),
        anisotropic_part: an,
        anisotropic_basis: basis,
        hyperbolic_pairs: pairs,
        arf,
        certified,
    };
    debug_assert_eq!(2 * data.witt_index + data.anisotropic_part.dim(), n);
    Ok(data)
}

/// Given isotropic `v`, finds `w` in the span of `within` with
/// `q(w)=0`, `b_q(v,w)=1`.
fn complete_hyperbolic_pair(
    rho: &QuadraticForm,
    polar: &Matrix,
    v: &[Elem],
    within: &[Vector],
) -> Result<(Vector, Vector)> {
    let f = rho.field();
    let e = within
        .iter()
        .find(|b| !f.is_zero(&polar.bilinear(f, v, b)))
        .ok_or_else(|| Error::Inconsistent("isotropic vector in the polar radical".into()))?;
    let w = vscale(f, &f.inv(&polar.bilinear(f, v, e))?, e);
    // b(v,w) = 1, so q(w − q(w)v) = 0 in every characteristic
    let w = vsub(f, &w, &vscale(f, &rho.eval(&w), v));
    debug_assert!(f.is_zero(&rho.eval(&w)));
    Ok((v.to_vec(), w))
}

/// A class in `F/℘(F)`, `℘(x) = x² + x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArfClass {
    pub rep: Elem,
}

impl ArfClass {
    pub fn is_trivial(&self, f: &Field) -> Option<bool> {
        f.wp_solve(&self.rep).ok()?.is_member()
    }

    pub fn same_as(&self, f: &Field, o: &ArfClass) -> Option<bool> {
        f.wp_solve(&f.sub(&self.rep, &o.rep)).ok()?.is_member()
    }
}

/// Symplectic basis `(vᵢ,wᵢ)` of a nonsingular form with `b_q(vᵢ,wᵢ) = 1`.
pub fn symplectic_basis(rho: &QuadraticForm) -> Result<Vec<(Vector, Vector)>> {
    let f = rho.field();
    let n = rho.dim();
    let polar = rho.polar();
    let mut basis: Vec<Vector> = (0..n).map(|i| unit_vector(f, n, i)).collect();
    let mut out = Vec::new();
    while !basis.is_empty() {
        let v = basis[0].clone();
        let Some(e) = basis.iter().find(|b| !f.is_zero(&polar.bilinear(f, &v, b))) else {
            return Err(Error::pre("symplectic_basis", "polar form is degenerate"));
        };
        let w = vscale(f, &f.inv(&polar.bilinear(f, &v, e))?, e);
        let eqs = Matrix::from_rows(vec![
            basis.iter().map(|b| polar.bilinear(f, &v, b)).collect(),
            basis.iter().map(|b| polar.bilinear(f, &w, b)).collect(),
        ])?;
        let ker = eqs.nullspace(f);
        basis = ker.iter().map(|k| combine(f, k, &basis)).collect();
        out.push((v, w));
    }
    Ok(out)
}

/// `Σ q(vᵢ)q(wᵢ)` over a symplectic basis, as a class modulo `℘(F)`.
pub fn arf_invariant(rho: &QuadraticForm) -> Result<ArfClass> {
    let f = rho.field();
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            expected: "2",
            found: f.characteristic(),
        });
    }
    if rho.dim() % 2 == 1 || !rho.is_nonsingular() {
        return Err(Error::pre("arf_invariant", "form must be nonsingular of even dimension"));
    }
    let mut acc = f.zero();
    for (v, w) in symplectic_basis(rho)? {
        acc = f.add(&acc, &f.mul(&rho.eval(&v), &rho.eval(&w)));
    }
    Ok(ArfClass { rep: acc })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isometry {
    /// `T` with `ρ'(Tx) = ρ(x)`.
    Yes(Matrix),
    No(String),
    Unknown(String),
}

/// Checks `ρ'(Tx) = ρ(x)` on the basis and on all pairs `eᵢ+eⱼ`.
pub fn verify_isometry(rho: &QuadraticForm, rho2: &QuadraticForm, t: &Matrix) -> bool {
    let f = rho.field();
    if t.rows() != rho2.dim() || t.cols() != rho.dim() {
        return false;
    }
    if t.inverse(f).is_none() {
        return false;
    }
    rho2.transform(t).upper == rho.upper
}

pub fn is_isometric(rho: &QuadraticForm, rho2: &QuadraticForm, bound: usize) -> Result<Isometry> {
    let f = rho.field();
    if f != rho2.field() {
        return Err(Error::FieldMismatch);
    }
    if rho.dim() != rho2.dim() {
        return Ok(Isometry::No("dimensions differ".into()));
    }
    let n = rho.dim();
    if rho.upper == rho2.upper {
        return Ok(Isometry::Yes(Matrix::identity(f, n)));
    }
    if !rho.is_nonsingular() || !rho2.is_nonsingular() {
        return Ok(Isometry::Unknown("singular forms are not classified".into()));
    }
    if f.characteristic() == 2 && n % 2 == 0 {
        let a = arf_invariant(rho)?;
        let b = arf_invariant(rho2)?;
        if a.same_as(f, &b) == Some(false) {
            return Ok(Isometry::No("Arf invariants differ".into()));
        }
    }
    let w1 = witt_decompose(rho, bound)?;
    let w2 = witt_decompose(rho2, bound)?;
    let proven = |w: &WittData| !matches!(w.certified, Certification::SearchBound(_));
    if w1.witt_index != w2.witt_index {
        if proven(&w1) && proven(&w2) {
            return Ok(Isometry::No("Witt indices differ".into()));
        }
        return Ok(Isometry::Unknown("Witt indices differ up to the search bound".into()));
    }
    // Map hyperbolic pairs to hyperbolic pairs, then match anisotropic parts.
    let Some(images) = match_forms(&w1.anisotropic_part, &w2.anisotropic_part, bound) else {
        if f.is_finite() {
            return Ok(Isometry::No("anisotropic parts are not isometric (exhaustive)".into()));
        }
        return Ok(Isometry::Unknown("no isometry of anisotropic parts up to the bound".into()));
    };
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for ((v1, u1), (v2, u2)) in w1.hyperbolic_pairs.iter().zip(&w2.hyperbolic_pairs) {
        src.push(v1.clone());
        src.push(u1.clone());
        dst.push(v2.clone());
        dst.push(u2.clone());
    }
    for (b, img) in w1.anisotropic_basis.iter().zip(&images) {
        src.push(b.clone());
        dst.push(combine(f, img, &w2.anisotropic_basis));
    }
    let s = Matrix::from_cols(f, n, &src);
    let d = Matrix::from_cols(f, n, &dst);
    let t = d.mul(f, &s.inverse(f).expect("Witt basis"));
    if !verify_isometry(rho, rho2, &t) {
        return Err(Error::Inconsistent("constructed isometry fails verification".into()));
    }
    Ok(Isometry::Yes(t))
}

/// Searches images `yₖ` (coordinates in the second form) of the basis vectors
/// of `a` preserving values and polar values.
fn match_forms(a: &QuadraticForm, b: &QuadraticForm, bound: usize) -> Option<Vec<Vector>> {
    let f = a.field();
    let m = a.dim();
    if m == 0 {
        return Some(Vec::new());
    }
    let pa = a.polar();
    let pb = b.polar();
    let scalars = ScalarSet::new(f, bound);
    let candidates_for = |k: usize| -> Vec<Vector> {
        let target = a.upper.get(k, k).clone();
        let mut out = Vec::new();
        let _: SearchOutcome<()> = find_vector(f, m, &scalars, false, SEARCH_BUDGET, |y| {
            if b.eval(y) == target {
                out.push(y.to_vec());
            }
            None
        });
        out
    };
    let cands: Vec<Vec<Vector>> = (0..m).map(candidates_for).collect();
    let mut chosen: Vec<Vector> = Vec::new();
    fn rec(
        f: &Field,
        k: usize,
        cands: &[Vec<Vector>],
        chosen: &mut Vec<Vector>,
        pa: &Matrix,
        pb: &Matrix,
    ) -> bool {
        if k == cands.len() {
            let m = chosen.len();
            return Matrix::from_cols(f, m, chosen).rank(f) == m;
        }
        for y in &cands[k] {
            let ok = (0..k).all(|j| pb.bilinear(f, &chosen[j], y) == *pa.get(j, k));
            if ok {
                chosen.push(y.clone());
                if rec(f, k + 1, cands, chosen, pa, pb) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    // pa is symmetric, so pa[j][k] for j<k is the polar value
    rec(f, 0, &cands, &mut chosen, &pa, &pb).then_some(chosen)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Similarity {
    /// `ρ ≃ λρ'` with `T`: `λρ'(Tx) = ρ(x)`.
    Yes(Elem, Matrix),
    No(String),
    Unknown(String),
}

pub fn is_similar(rho: &QuadraticForm, rho2: &QuadraticForm, bound: usize) -> Result<Similarity> {
    let f = rho.field();
    if rho.dim() != rho2.dim() {
        return Ok(Similarity::No("dimensions differ".into()));
    }
    let mut lambdas: Vec<Elem> = f.elements(bound).into_iter().filter(|x| !f.is_zero(x)).collect();
    lambdas.sort_by_key(|x| !f.is_one(x));
    let mut undecided = false;
    for l in lambdas {
        match is_isometric(rho, &rho2.scale(&l), bound)? {
            Isometry::Yes(t) => return Ok(Similarity::Yes(l, t)),
            Isometry::No(_) => {}
            Isometry::Unknown(_) => undecided = true,
        }
    }
    if f.is_finite() && !undecided {
        Ok(Similarity::No("no scalar gives an isometry (exhaustive)".into()))
    } else {
        Ok(Similarity::Unknown(format!("no similarity factor found at height {bound}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Metabolic {
    /// Basis of a totally isotropic subspace of half dimension.
    Yes(Vec<Vector>),
    No(String),
    Unknown(String),
}

pub fn is_metabolic_bilinear(phi: &BilinearForm, bound: usize) -> Result<Metabolic> {
    let f = phi.field();
    if !phi.is_nondegenerate() {
        return Err(Error::pre("is_metabolic_bilinear", "form is degenerate"));
    }
    let n = phi.dim();
    if n % 2 == 1 {
        return Ok(Metabolic::No("odd dimension".into()));
    }
    if n == 0 {
        return Ok(Metabolic::Yes(Vec::new()));
    }
    let verify = |w: &[Vector]| {
        w.len() == n / 2
            && Matrix::from_cols(f, n, w).rank(f) == n / 2
            && w.iter().all(|x| w.iter().all(|y| f.is_zero(&phi.eval(x, y))))
    };
    if f.characteristic() == 2 {
        let diag: Vec<Elem> = (0..n).map(|i| phi.gram.get(i, i).clone()).collect();
        if let Some(z) = totally_singular_zeros(f, &diag) {
            // Every totally isotropic subspace lies in Z, where b is alternating.
            let w = maximal_isotropic_alternating(phi, &z);
            if w.len() >= n / 2 {
                let w: Vec<Vector> = w.into_iter().take(n / 2).collect();
                if !verify(&w) {
                    return Err(Error::Inconsistent("metabolic subspace fails verification".into()));
                }
                return Ok(Metabolic::Yes(w));
            }
            return Ok(Metabolic::No(format!(
                "maximal totally isotropic subspaces have dimension {}",
                w.len()
            )));
        }
        return Ok(Metabolic::Unknown("no p-basis expansion available".into()));
    }
    // odd characteristic: metabolic iff the form x ↦ b(x,x) is hyperbolic
    let q = phi.diagonal_form();
    let wd = witt_decompose(&q, bound)?;
    if wd.is_hyperbolic() {
        let w: Vec<Vector> = wd.hyperbolic_pairs.iter().map(|(v, _)| v.clone()).collect();
        if !verify(&w) {
            return Err(Error::Inconsistent("metabolic subspace fails verification".into()));
        }
        return Ok(Metabolic::Yes(w));
    }
    match wd.certified {
        Certification::SearchBound(b) => Ok(Metabolic::Unknown(format!(
            "Witt index {} found up to height {b}",
            wd.witt_index
        ))),
        _ => Ok(Metabolic::No(format!("Witt index {} < {}", wd.witt_index, n / 2))),
    }
}

/// A maximal totally isotropic subspace of `b` restricted to `span(z)`,
/// where `b` is alternating on `span(z)`.
fn maximal_isotropic_alternating(phi: &BilinearForm, z: &[Vector]) -> Vec<Vector> {
    let f = phi.field();
    let mut basis: Vec<Vector> = z.to_vec();
    let mut out = Vec::new();
    while let Some(v) = basis.first().cloned() {
        match basis.iter().find(|b| !f.is_zero(&phi.eval(&v, b))) {
            None => {
                // v is in the radical of the restriction
                out.push(v);
                basis.remove(0);
            }
            Some(e) => {
                let e = e.clone();
                out.push(v.clone());
                let eqs = Matrix::from_rows(vec![
                    basis.iter().map(|b| phi.eval(&v, b)).collect(),
                    basis.iter().map(|b| phi.eval(&e, b)).collect(),
                ])
                .unwrap();
                let ker = eqs.nullspace(f);
                basis = ker.iter().map(|k| combine(f, k, &basis)).collect();
            }
        }
    }
    // radical vectors and one vector of each symplectic pair are orthogonal
    // to each other and isotropic
    let eb = EchelonBasis::new(f, phi.dim(), &out);
    debug_assert_eq!(eb.dim(), out.len());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerCertificate {
    /// Residue forms of the unit and the `t`-multiple blocks.
    pub residue0: QuadraticForm,
    pub residue1: QuadraticForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpringerResult {
    AnisotropicProven(SpringerCertificate),
    Inconclusive(String),
}

/// `t`-adic valuation at a rational function level.
pub fn t_valuation(f: &Field, x: &Elem) -> Option<i64> {
    use crate::field::poly::low_order;
    let base = f.base()?;
    if f.is_zero(x) {
        return None;
    }
    match x {
        Elem::Frac(fr) => Some(
            low_order(base, &fr.num).unwrap() as i64 - low_order(base, &fr.den).unwrap() as i64,
        ),
        _ => None,
    }
}

/// Residue at `t = 0` of an element of valuation ≥ 0.
fn t_residue(f: &Field, x: &Elem) -> Option<Elem> {
    let base = f.base()?;
    if f.is_zero(x) {
        return Some(base.zero());
    }
    let Elem::Frac(fr) = x else { return None };
    let v = t_valuation(f, x)?;
    if v < 0 {
        return None;
    }
    if v > 0 {
        return Some(base.zero());
    }
    let n0 = fr.num[0].clone();
    let d0 = fr.den[0].clone();
    base.div(&n0, &d0).ok()
}

fn t_power(f: &Field, k: i64) -> Elem {
    let t = f.generator().unwrap();
    f.powi(&t, k).unwrap()
}

/// Valuation-based anisotropy certificate over `F(t)`, characteristic 2.
///
/// The form is brought into orthogonal binary blocks `[a, c, b]` (polar value
/// `c`); blocks with `v(c) ∈ {0,1}` and `v(a), v(b) ≥ v(c)` contribute their
/// residue after division by `t^{v(c)}` to the first or second residue form.
/// If both residue forms are anisotropic over `F`, so is the form.
pub fn springer_certify(rho: &QuadraticForm) -> SpringerResult {
    let f = rho.field();
    let inconclusive = |m: &str| SpringerResult::Inconclusive(m.into());
    if !f.is_rational_function() {
        return inconclusive("not a rational function level");
    }
    if f.characteristic() != 2 {
        return inconclusive("only characteristic 2 is supported");
    }
    if rho.dim() % 2 == 1 || !rho.is_nonsingular() {
        return inconclusive("form must be nonsingular");
    }
    let base = f.base().unwrap();
    let n = rho.dim();
    let polar = rho.polar();
    let block_diagonal = (0..n).all(|i| {
        (0..n).all(|j| i / 2 == j / 2 || f.is_zero(polar.get(i, j)))
    });
    let q = if block_diagonal {
        rho.clone()
    } else {
        let Ok(sb) = symplectic_basis(rho) else {
            return inconclusive("no symplectic basis");
        };
        let cols: Vec<Vector> = sb.into_iter().flat_map(|(v, w)| [v, w]).collect();
        rho.transform(&Matrix::from_cols(f, n, &cols))
    };
    let mut r0: Vec<[Elem; 3]> = Vec::new();
    let mut r1: Vec<[Elem; 3]> = Vec::new();
    for k in 0..n / 2 {
        let a = q.upper.get(2 * k, 2 * k);
        let c = q.upper.get(2 * k, 2 * k + 1);
        let b = q.upper.get(2 * k + 1, 2 * k + 1);
        let Some(vc) = t_valuation(f, c) else {
            return inconclusive("zero polar block");
        };
        let ok = |x: &Elem| f.is_zero(x) || t_valuation(f, x).unwrap() >= vc;
        if !(0..=1).contains(&vc) || !ok(a) || !ok(b) {
            return inconclusive("valuation normalization out of range");
        }
        let scale = t_power(f, -vc);
        let res = |x: &Elem| t_residue(f, &f.mul(x, &scale));
        let (Some(ra), Some(rc), Some(rb)) = (res(a), res(c), res(b)) else {
            return inconclusive("residue undefined");
        };
        if vc == 0 {
            r0.push([ra, rc, rb]);
        } else {
            r1.push([ra, rc, rb]);
        }
    }
    let build = |blocks: &[[Elem; 3]]| {
        let m = 2 * blocks.len();
        let mut u = Matrix::zeros(base, m, m);
        for (k, [a, c, b]) in blocks.iter().enumerate() {
            u.set(2 * k, 2 * k, a.clone());
            u.set(2 * k, 2 * k + 1, c.clone());
            u.set(2 * k + 1, 2 * k + 1, b.clone());
        }
        QuadraticForm::new(base, u).unwrap()
    };
    let q0 = build(&r0);
    let q1 = build(&r1);
    for r in [&q0, &q1] {
        match r.isotropy(0) {
            Isotropy::AnisotropicProven(_) => {}
            _ => return inconclusive("a residue form is not certified anisotropic"),
        }
    }
    SpringerResult::AnisotropicProven(SpringerCertificate {
        residue0: q0,
        residue1: q1,
    })
}

/// Matrix whose columns are `basis`, extended by unit vectors to a basis of
/// the whole space.
pub fn complete_basis(f: &Field, n: usize, basis: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = basis.to_vec();
    for i in 0..n {
        if out.len() == n {
            break;
        }
        let mut trial = out.clone();
        trial.push(unit_vector(f, n, i));
        if Matrix::from_cols(f, n, &trial).rank(f) == trial.len() {
            out = trial;
        }
    }
    out
}

/// `b(x, y)` for symmetric Gram `g`; convenience for callers holding raw
/// matrices.
pub fn gram_eval(f: &Field, g: &Matrix, x: &[Elem], y: &[Elem]) -> Elem {
    dot(f, x, &g.mul_vec(f, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::gf(2).unwrap()
    }

    fn f2t() -> (Field, Elem) {
        let f = f2().rational_function("t").unwrap();
        let t = f.generator().unwrap();
        (f, t)
    }

    #[test]
    fn pfister_constructors() {
        let f = f2();
        let p = bilinear_pfister(&f, &[f.one()]).unwrap();
        assert!(matches!(is_metabolic_bilinear(&p, 0).unwrap(), Metabolic::Yes(_)));
        let (g, t) = f2t();
        let s = g.rational_function("s").unwrap();
        let (tt, ss) = (s.lift(&t), s.generator().unwrap());
        let p2 = bilinear_pfister(&s, &[tt.clone(), ss.clone()]).unwrap();
        let d: Vec<Elem> = (0..4).map(|i| p2.gram().get(i, i).clone()).collect();
        assert_eq!(d, vec![s.one(), ss.clone(), tt.clone(), s.mul(&tt, &ss)]);
    }

    #[test]
    fn quadratic_pfister_expands() {
        let (g, t) = f2t();
        let b = QuadraticForm::binary(&g, g.one(), g.one());
        let phi = bilinear_pfister(&g, &[t.clone()]).unwrap();
        let q = quadratic_pfister(&b, &[g.one(), g.zero()], &phi).unwrap();
        assert_eq!(q.upper().get(2, 3), &t);
        assert_eq!(q.upper().get(3, 3), &t);
        assert_eq!(q.upper().get(0, 2), &g.zero());
        let bad = quadratic_pfister(&b, &[g.zero(), g.zero()], &phi);
        assert!(bad.is_err());
    }

    #[test]
    fn isotropy_examples() {
        let f = f2();
        let h = QuadraticForm::binary(&f, f.zero(), f.zero());
        assert_eq!(h.isotropy(0), Isotropy::Isotropic(vec![f.one(), f.zero()]));
        let a = QuadraticForm::binary(&f, f.one(), f.one());
        assert_eq!(
            a.isotropy(0),
            Isotropy::AnisotropicProven(AnisotropyMethod::Exhaustive)
        );
        let (g, t) = f2t();
        let phi = bilinear_pfister(&g, &[t.clone()]).unwrap();
        let q = tensor_bq(&phi, &QuadraticForm::binary(&g, g.one(), g.one())).unwrap();
        assert!(matches!(
            q.isotropy(2),
            Isotropy::AnisotropicProven(AnisotropyMethod::Valuation(_))
        ));
    }

    #[test]
    fn tensor_bq_hyperbolic() {
        let f = f2();
        let b = diag_bilinear(&f, &[f.one(), f.one()]).unwrap();
        let q = tensor_bq(&b, &QuadraticForm::binary(&f, f.one(), f.one())).unwrap();
        // ⟨1,1⟩ is metabolic, so the product is hyperbolic
        let w = witt_decompose(&q, 0).unwrap();
        assert_eq!(w.witt_index, 2);
        assert!(q.eval(&[f.one(), f.zero(), f.one(), f.zero()]) == f.zero());
    }

    #[test]
    fn witt_examples() {
        let f = f2();
        let q = QuadraticForm::binary(&f, f.zero(), f.zero())
            .orthogonal_sum(&QuadraticForm::binary(&f, f.one(), f.one()));
        let w = witt_decompose(&q, 0).unwrap();
        assert_eq!((w.witt_index, w.anisotropic_part.dim()), (1, 2));
        let f4 = Field::galois(2, 2, None).unwrap();
        let q = QuadraticForm::binary(&f4, f4.one(), f4.one());
        let w = witt_decompose(&q, 0).unwrap();
        assert!(w.is_hyperbolic());
        assert!(witt_decompose(&QuadraticForm::diagonal(&f, &[f.one()]), 0).is_err());
    }

    #[test]
    fn arf_examples() {
        let f = f2();
        let h = QuadraticForm::binary(&f, f.zero(), f.zero());
        assert_eq!(arf_invariant(&h).unwrap().is_trivial(&f), Some(true));
        let a = QuadraticForm::binary(&f, f.one(), f.one());
        assert_eq!(arf_invariant(&a).unwrap().is_trivial(&f), Some(false));
        assert_eq!(
            arf_invariant(&a.orthogonal_sum(&a)).unwrap().is_trivial(&f),
            Some(true)
        );
    }

    #[test]
    fn isometry_examples() {
        let f = f2();
        let h = QuadraticForm::binary(&f, f.zero(), f.zero());
        let h2 = QuadraticForm::binary(&f, f.one(), f.zero());
        assert!(matches!(is_isometric(&h, &h2, 0).unwrap(), Isometry::Yes(_)));
        let a = QuadraticForm::binary(&f, f.one(), f.one());
        assert!(matches!(is_isometric(&a, &h, 0).unwrap(), Isometry::No(_)));
        assert!(matches!(is_similar(&a, &h, 0).unwrap(), Similarity::No(_)));
        let (g, t) = f2t();
        let b = QuadraticForm::binary(&g, g.one(), g.one());
        match is_similar(&b.scale(&t), &b, 1).unwrap() {
            Similarity::Yes(l, _) => assert_eq!(l, t),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn metabolic_examples() {
        let (g, t) = f2t();
        let b = diag_bilinear(&g, &[g.one(), t]).unwrap();
        assert!(matches!(is_metabolic_bilinear(&b, 2).unwrap(), Metabolic::No(_)));
        let f = f2();
        let h = BilinearForm::new(
            &f,
            Matrix::from_rows(vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap(),
        )
        .unwrap();
        assert!(matches!(is_metabolic_bilinear(&h, 0).unwrap(), Metabolic::Yes(_)));
        let f5 = Field::gf(5).unwrap();
        let d = diag_bilinear(&f5, &[f5.one(), f5.from_int(-1)]).unwrap();
        assert!(matches!(is_metabolic_bilinear(&d, 0).unwrap(), Metabolic::Yes(_)));
        let d = diag_bilinear(&f5, &[f5.one(), f5.one()]).unwrap();
        assert!(matches!(is_metabolic_bilinear(&d, 0).unwrap(), Metabolic::Yes(_)));
        let d = diag_bilinear(&f5, &[f5.one(), f5.from_int(2)]).unwrap();
        assert!(matches!(is_metabolic_bilinear(&d, 0).unwrap(), Metabolic::No(_)));
    }

    #[test]
    fn springer_examples() {
        let (g, t) = f2t();
        let h = QuadraticForm::binary(&g, g.zero(), g.zero());
        assert!(matches!(springer_certify(&h), SpringerResult::Inconclusive(_)));
        let b = QuadraticForm::binary(&g, g.one(), g.one());
        let t2 = g.square(&t);
        assert!(matches!(
            springer_certify(&b.scale(&t2)),
            SpringerResult::Inconclusive(_)
        ));
    }
}
