//! Finite-dimensional algebras given by structure constants.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::decompose::{Certificate, Structure};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{Isotropy, QuadraticForm};
use crate::linalg::{is_zero_vec, unit_vector, Matrix, Vector};

/// How an algebra was built; drives fast paths and which reduced norm exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Quaternion { a: Elem, b: Elem },
    Matrix(usize),
    Tensor(Box<Provenance>, Box<Provenance>),
    Custom,
}

impl Provenance {
    /// Leaves of a tensor tree, left to right.
    pub fn leaves(&self) -> Vec<&Provenance> {
        match self {
            Provenance::Tensor(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
            p => vec![p],
        }
    }

    fn extend(&self, from: &Field, to: &Field) -> Result<Provenance> {
        Ok(match self {
            Provenance::Quaternion { a, b } => Provenance::Quaternion {
                a: to.embed(from, a)?,
                b: to.embed(from, b)?,
            },
            Provenance::Tensor(a, b) => {
                Provenance::Tensor(Box::new(a.extend(from, to)?), Box::new(b.extend(from, to)?))
            }
            p => p.clone(),
        })
    }

    /// Degree (square root of the dimension) when known structurally.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Provenance::Quaternion { .. } => Some(2),
            Provenance::Matrix(n) => Some(*n),
            Provenance::Tensor(a, b) => Some(a.degree()? * b.degree()?),
            Provenance::Custom => None,
        }
    }
}

/// Sparse product of two basis elements.
type Row = Vec<(u32, Elem)>;

#[derive(Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    table: Vec<Row>,
    one: Vector,
    trd: Option<Vector>,
    gens: Vec<Vector>,
    words: Vec<Vec<usize>>,
    provenance: Provenance,
}

pub type AlgebraRef = Arc<Algebra>;

impl Algebra {
    /// An algebra from dense structure constants `c[i][j][k]`.
    /// Associativity and the identity are checked on all basis elements.
    pub fn from_constants(
        field: &Field,
        labels: Vec<String>,
        constants: &[Vec<Vector>],
        one: Vector,
        trd: Option<Vector>,
    ) -> Result<AlgebraRef> {
        let dim = labels.len();
        if constants.len() != dim || constants.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: constants.len(),
            });
        }
        let f = field;
        let mut table = Vec::with_capacity(dim * dim);
        for row in constants {
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                table.push(sparse(f, v));
            }
        }
        let alg = Algebra {
            field: f.clone(),
            dim,
            labels,
            table,
            one,
            trd,
            gens: (0..dim).map(|i| unit_vector(f, dim, i)).collect(),
            words: (0..dim).map(|i| vec![i]).collect(),
            provenance: Provenance::Custom,
        };
        alg.check_axioms()?;
        Ok(Arc::new(alg))
    }

    fn check_axioms(&self) -> Result<()> {
        let f = &self.field;
        let n = self.dim;
        for i in 0..n {
            let e = unit_vector(f, n, i);
            if self.mul(&self.one, &e) != e || self.mul(&e, &self.one) != e {
                return Err(Error::AxiomViolation {
                    axiom: "identity",
                    detail: format!("basis element {}", self.labels[i]),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let ek = unit_vector(f, n, k);
                    let left = self.mul(&ij, &ek);
                    let jk = self.basis_product(j, k);
                    let right = self.mul(&unit_vector(f, n, i), &jk);
                    if left != right {
                        return Err(Error::AxiomViolation {
                            axiom: "associativity",
                            detail: format!(
                                "({}·{})·{}",
                                self.labels[i], self.labels[j], self.labels[k]
                            ),
                        });
                    }
                }
            }
        }
        if let Some(t) = &self.trd {
            for i in 0..n {
                for j in 0..n {
                    let a = self.trd_of(&self.basis_product(i, j), t);
                    let b = self.trd_of(&self.basis_product(j, i), t);
                    if a != b {
                        return Err(Error::AxiomViolation {
                            axiom: "trd(xy) = trd(yx)",
                            detail: format!("{}, {}", self.labels[i], self.labels[j]),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn trd_of(&self, x: &[Elem], t: &[Elem]) -> Elem {
        crate::linalg::dot(&self.field, x, t)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn degree(&self) -> Option<usize> {
        self.provenance.degree().or_else(|| {
            (1..=self.dim).find(|d| d * d == self.dim)
        })
    }

    pub fn one(&self) -> Vector {
        self.one.clone()
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(&self.field, self.dim, i)
    }

    pub fn scalar(&self, c: &Elem) -> Vector {
        self.one.iter().map(|x| self.field.mul(x, c)).collect()
    }

    /// The generators and, for every basis element, a word in them.
    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn basis_words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut out = self.zero();
        for (k, c) in &self.table[i * self.dim + j] {
            out[*k as usize] = c.clone();
        }
        out
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vector {
        let f = &self.field;
        if let Provenance::Matrix(n) = self.provenance {
            let a = Matrix::from_entries(n, n, x.to_vec()).unwrap();
            let b = Matrix::from_entries(n, n, y.to_vec()).unwrap();
            return a.mul(f, &b).entries().to_vec();
        }
        let n = self.dim;
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in &self.table[i * n + j] {
                    let k = *k as usize;
                    out[k] = f.add(&out[k], &f.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vector {
        crate::linalg::vadd(&self.field, x, y)
    }

    pub fn sub(&self, x: &[Elem], y: &[Elem]) -> Vector {
        crate::linalg::vsub(&self.field, x, y)
    }

    pub fn scale(&self, c: &Elem, x: &[Elem]) -> Vector {
        crate::linalg::vscale(&self.field, c, x)
    }

    pub fn is_zero(&self, x: &[Elem]) -> bool {
        is_zero_vec(&self.field, x)
    }

    /// `Some(c)` when `x = c·1`.
    pub fn as_scalar(&self, x: &[Elem]) -> Option<Elem> {
        let f = &self.field;
        let (i, c1) = self.one.iter().enumerate().find(|(_, c)| !f.is_zero(c))?;
        let c = f.div(&x[i], c1).ok()?;
        (self.scalar(&c) == x).then_some(c)
    }

    pub fn trd(&self) -> Option<&[Elem]> {
        self.trd.as_deref()
    }

    pub fn reduced_trace(&self, x: &[Elem]) -> Result<Elem> {
        let t = self
            .trd
            .as_ref()
            .ok_or_else(|| Error::pre("reduced_trace", "algebra carries no reduced trace"))?;
        Ok(self.trd_of(x, t))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &[Elem]) -> Matrix {
        let f = &self.field;
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_cols(f, self.dim, &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult(&self, x: &[Elem]) -> Matrix {
        let f = &self.field;
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_cols(f, self.dim, &cols)
    }

    pub fn is_invertible(&self, x: &[Elem]) -> bool {
        self.left_mult(x).rank(&self.field) == self.dim
    }

    pub fn inverse(&self, x: &[Elem]) -> Option<Vector> {
        let y = self.left_mult(x).solve(&self.field, &self.one)?;
        (self.mul(&y, x) == self.one).then_some(y)
    }

    /// `dim_F(xA)`.
    pub fn right_ideal_dim(&self, x: &[Elem]) -> usize {
        self.left_mult(x).rank(&self.field)
    }

    pub fn extend(&self, to: &Field) -> Result<AlgebraRef> {
        let from = &self.field;
        let e = |v: &Vector| -> Result<Vector> { v.iter().map(|x| to.embed(from, x)).collect() };
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(k, c)| Ok((*k, to.embed(from, c)?)))
                    .collect::<Result<Row>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(Algebra {
            field: to.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            table,
            one: e(&self.one)?,
            trd: self.trd.as_ref().map(e).transpose()?,
            gens: self.gens.iter().map(e).collect::<Result<_>>()?,
            words: self.words.clone(),
            provenance: self.provenance.extend(from, to)?,
        }))
    }

    pub fn format_elem(&self, x: &[Elem]) -> String {
        let f = &self.field;
        let terms: Vec<String> = x
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !f.is_zero(c))
            .map(|(c, l)| {
                if f.is_one(c) {
                    l.clone()
                } else {
                    format!("({})*{l}", f.format(c))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn sparse(f: &Field, v: &[Elem]) -> Row {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(k, c)| (k as u32, c.clone()))
        .collect()
}

/// Presentation data of `[a,b)` on the basis `1, u, v, w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionPresentation {
    pub a: Elem,
    pub b: Elem,
}

pub const QUAT_LABELS: [&str; 4] = ["1", "u", "v", "w"];

/// `[a,b)`: `u² = u + a`, `v² = b`, `w = uv = v − vu`.
pub fn quaternion_make(f: &Field, a: &Elem, b: &Elem) -> Result<AlgebraRef> {
    if f.is_zero(b) {
        return Err(Error::pre("quaternion_make", "b = 0"));
    }
    if f.is_one(&f.mul(&f.from_int(-4), a)) {
        return Err(Error::pre("quaternion_make", "-4a = 1"));
    }
    let z = f.zero();
    let one = f.one();
    let ab = f.mul(a, b);
    let v4 = |c: [&Elem; 4]| -> Vector { c.iter().map(|x| (*x).clone()).collect() };
    let na = f.neg(a);
    let nb = f.neg(b);
    let nab = f.neg(&ab);
    // rows: left factor 1,u,v,w; columns: right factor
    let c: Vec<Vec<Vector>> = vec![
        vec![
            v4([&one, &z, &z, &z]),
            v4([&z, &one, &z, &z]),
            v4([&z, &z, &one, &z]),
            v4([&z, &z, &z, &one]),
        ],
        vec![
            v4([&z, &one, &z, &z]),
            v4([a, &one, &z, &z]),    // u² = a + u
            v4([&z, &z, &z, &one]),   // uv = w
            v4([&z, &z, a, &one]),    // uw = av + w
        ],
        vec![
            v4([&z, &z, &one, &z]),
            v4([&z, &z, &one, &f.neg(&one)]), // vu = v − w
            v4([b, &z, &z, &z]),              // v² = b
            v4([b, &nb, &z, &z]),             // vw = b − bu
        ],
        vec![
            v4([&z, &z, &z, &one]),
            v4([&z, &z, &na, &z]),   // wu = −av
            v4([&z, b, &z, &z]),     // wv = bu
            v4([&nab, &z, &z, &z]),  // w² = −ab
        ],
    ];
    let mut table = Vec::with_capacity(16);
    for row in &c {
        for v in row {
            table.push(sparse(f, v));
        }
    }
    let alg = Algebra {
        field: f.clone(),
        dim: 4,
        labels: QUAT_LABELS.iter().map(|s| s.to_string()).collect(),
        table,
        one: unit_vector(f, 4, 0),
        trd: Some(vec![f.from_int(2), f.one(), f.zero(), f.zero()]),
        gens: vec![unit_vector(f, 4, 1), unit_vector(f, 4, 2)],
        words: vec![vec![], vec![0], vec![1], vec![0, 1]],
        provenance: Provenance::Quaternion {
            a: a.clone(),
            b: b.clone(),
        },
    };
    alg.check_axioms()?;
    Ok(Arc::new(alg))
}

/// `M_n(F)` on the matrix unit basis `E_ij` (index `i*n + j`).
pub fn matrix_algebra(f: &Field, n: usize) -> Result<AlgebraRef> {
    if n < 1 {
        return Err(Error::pre("matrix_algebra", "n < 1"));
    }
    let dim = n * n;
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    table.push(if j == k {
                        vec![((i * n + l) as u32, f.one())]
                    } else {
                        Vec::new()
                    });
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(dim);
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("e{}{}", i + 1, j + 1));
        }
    }
    let mut trd = vec![f.zero(); dim];
    let mut one = vec![f.zero(); dim];
    for i in 0..n {
        trd[i * n + i] = f.one();
        one[i * n + i] = f.one();
    }
    // generators E_{i,i+1} (index 2i) and E_{i+1,i} (index 2i+1)
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        gens.push(unit_vector(f, dim, i * n + i + 1));
        gens.push(unit_vector(f, dim, (i + 1) * n + i));
    }
    let mut words = Vec::with_capacity(dim);
    for i in 0..n {
        for j in 0..n {
            let w: Vec<usize> = if n == 1 {
                Vec::new()
            } else if i < j {
                (i..j).map(|k| 2 * k).collect()
            } else if i > j {
                (j..i).rev().map(|k| 2 * k + 1).collect()
            } else if i + 1 < n {
                vec![2 * i, 2 * i + 1]
            } else {
                vec![2 * (i - 1) + 1, 2 * (i - 1)]
            };
            words.push(w);
        }
    }
    Ok(Arc::new(Algebra {
        field: f.clone(),
        dim,
        labels,
        table,
        one,
        trd: Some(trd),
        gens,
        words,
        provenance: Provenance::Matrix(n),
    }))
}

/// `A ⊗ B` on the basis `aᵢ ⊗ bⱼ` (index `i * dim B + j`).
pub fn tensor_algebra(a: &Algebra, b: &Algebra) -> Result<AlgebraRef> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let (da, db) = (a.dim, b.dim);
    let dim = da * db;
    let mut table = vec![Vec::new(); dim * dim];
    for i1 in 0..da {
        for j1 in 0..da {
            let ra = &a.table[i1 * da + j1];
            if ra.is_empty() {
                continue;
            }
            for i2 in 0..db {
                for j2 in 0..db {
                    let rb = &b.table[i2 * db + j2];
                    if rb.is_empty() {
                        continue;
                    }
                    let mut row = Vec::with_capacity(ra.len() * rb.len());
                    for (k1, c1) in ra {
                        for (k2, c2) in rb {
                            row.push(((*k1 as usize * db + *k2 as usize) as u32, f.mul(c1, c2)));
                        }
                    }
                    table[(i1 * db + i2) * dim + (j1 * db + j2)] = row;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(dim);
    for la in &a.labels {
        for lb in &b.labels {
            labels.push(format!("{la}⊗{lb}"));
        }
    }
    let kron = |x: &[Elem], y: &[Elem]| crate::linalg::vkron(f, x, y);
    let trd = match (&a.trd, &b.trd) {
        (Some(x), Some(y)) => Some(kron(x, y)),
        _ => None,
    };
    let mut gens: Vec<Vector> = a.gens.iter().map(|g| kron(g, &b.one)).collect();
    gens.extend(b.gens.iter().map(|g| kron(&a.one, g)));
    let shift = a.gens.len();
    let mut words = Vec::with_capacity(dim);
    for wa in &a.words {
        for wb in &b.words {
            let mut w = wa.clone();
            w.extend(wb.iter().map(|k| k + shift));
            words.push(w);
        }
    }
    Ok(Arc::new(Algebra {
        field: f.clone(),
        dim,
        labels,
        table,
        one: kron(&a.one, &b.one),
        trd,
        gens,
        words,
        provenance: Provenance::Tensor(Box::new(a.provenance.clone()), Box::new(b.provenance.clone())),
    }))
}

/// `Nrd(x)` for quaternion and matrix provenance.
pub fn reduced_norm(alg: &Algebra, x: &[Elem]) -> Result<Elem> {
    let f = &alg.field;
    match &alg.provenance {
        Provenance::Quaternion { a, b } => {
            let (x0, x1, x2, x3) = (&x[0], &x[1], &x[2], &x[3]);
            let n1 = f.sub(&f.add(&f.square(x0), &f.mul(x0, x1)), &f.mul(a, &f.square(x1)));
            let n2 = f.sub(&f.add(&f.square(x2), &f.mul(x2, x3)), &f.mul(a, &f.square(x3)));
            Ok(f.sub(&n1, &f.mul(b, &n2)))
        }
        Provenance::Matrix(n) => Ok(Matrix::from_entries(*n, *n, x.to_vec())?.det(f)),
        _ => Err(Error::pre(
            "reduced_norm",
            "only quaternion and matrix provenance carry a reduced norm",
        )),
    }
}

pub fn presentation(alg: &Algebra) -> Option<QuaternionPresentation> {
    match &alg.provenance {
        Provenance::Quaternion { a, b } => Some(QuaternionPresentation {
            a: a.clone(),
            b: b.clone(),
        }),
        _ => None,
    }
}

/// The form `x ↦ Nrd(x)` on the basis `1, u, v, w`.
pub fn norm_form(alg: &Algebra) -> Result<QuadraticForm> {
    let p = presentation(alg).ok_or_else(|| Error::pre("norm_form", "not a quaternion presentation"))?;
    let f = &alg.field;
    let (a, b) = (&p.a, &p.b);
    let mut u = Matrix::zeros(f, 4, 4);
    u.set(0, 0, f.one());
    u.set(0, 1, f.one());
    u.set(1, 1, f.neg(a));
    u.set(2, 2, f.neg(b));
    u.set(2, 3, f.neg(b));
    u.set(3, 3, f.mul(a, b));
    QuadraticForm::new(f, u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// A nonzero element of reduced norm zero.
    Split(Vector),
    NonSplit(String),
    Unknown(String),
}

/// Looks for a zero divisor of a quaternion algebra.
pub fn find_zero_divisor(alg: &Algebra, bound: usize) -> Result<Splitting> {
    let q = norm_form(alg)?;
    Ok(match q.isotropy(bound) {
        Isotropy::Isotropic(x) => Splitting::Split(x),
        Isotropy::AnisotropicProven(m) => Splitting::NonSplit(format!("norm form anisotropic ({m:?})")),
        Isotropy::NoWitnessUpToBound(b) => {
            Splitting::Unknown(format!("no zero divisor up to height {b}"))
        }
    })
}

/// `Q ≅ M₂(F)` through the action of `Q` on the left ideal `Qx`.
pub fn split_quaternion_iso(alg: &AlgebraRef, x: &[Elem]) -> Result<Certificate> {
    let f = alg.field().clone();
    if alg.is_zero(x) {
        return Err(Error::pre("split_quaternion_iso", "zero witness"));
    }
    if !f.is_zero(&reduced_norm(alg, x)?) {
        return Err(Error::pre("split_quaternion_iso", "witness has nonzero reduced norm"));
    }
    let n = alg.dim();
    let gens: Vec<Vector> = (0..n).map(|i| alg.mul(&alg.basis(i), x)).collect();
    let eb = crate::linalg::EchelonBasis::new(&f, n, &gens);
    if eb.dim() != 2 {
        return Err(Error::Inconsistent(format!(
            "left ideal has dimension {} instead of 2",
            eb.dim()
        )));
    }
    // a basis of the ideal taken from the generating family
    let mut ideal: Vec<Vector> = Vec::new();
    for g in &gens {
        let mut trial = ideal.clone();
        trial.push(g.clone());
        if crate::linalg::rank_of(&f, n, &trial) == trial.len() {
            ideal = trial;
        }
        if ideal.len() == 2 {
            break;
        }
    }
    let basis_mat = Matrix::from_cols(&f, n, &ideal);
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        // matrix of left multiplication by e_i on the ideal
        let mut m = Matrix::zeros(&f, 2, 2);
        for (j, l) in ideal.iter().enumerate() {
            let img = alg.mul(&alg.basis(i), l);
            let c = basis_mat
                .solve(&f, &img)
                .ok_or_else(|| Error::Inconsistent("ideal is not stable".into()))?;
            m.set(0, j, c[0].clone());
            m.set(1, j, c[1].clone());
        }
        cols.push(m.entries().to_vec());
    }
    let target = matrix_algebra(&f, 2)?;
    let cert = Certificate::new(
        Structure::Algebra(alg.clone()),
        Structure::Algebra(target),
        Matrix::from_cols(&f, 4, &cols),
    );
    cert.check()?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_relations() {
        let f = Field::gf(2).unwrap().rational_function("t").unwrap();
        let t = f.generator().unwrap();
        let q = quaternion_make(&f, &t, &t).unwrap();
        let w = q.basis(3);
        assert_eq!(q.mul(&w, &w), q.scalar(&f.square(&t)));
        for i in 0..4 {
            for j in 0..4 {
                let x = q.basis(i);
                let y = q.basis(j);
                let xy = reduced_norm(&q, &q.mul(&x, &y)).unwrap();
                let nn = f.mul(&reduced_norm(&q, &x).unwrap(), &reduced_norm(&q, &y).unwrap());
                assert_eq!(xy, nn);
            }
        }
        assert_eq!(q.reduced_trace(&q.basis(1)).unwrap(), f.one());
        assert_eq!(q.reduced_trace(&w).unwrap(), f.zero());
        let f2 = Field::gf(2).unwrap();
        let q = quaternion_make(&f2, &f2.zero(), &f2.one()).unwrap();
        let u = q.basis(1);
        assert_eq!(q.mul(&u, &u), u);
        assert!(quaternion_make(&f2, &f2.one(), &f2.zero()).is_err());
        let f5 = Field::gf(5).unwrap();
        assert!(quaternion_make(&f5, &f5.from_int(1), &f5.one()).is_err());
        assert!(quaternion_make(&f5, &f5.from_int(2), &f5.one()).is_ok());
    }

    #[test]
    fn matrix_and_tensor() {
        let f = Field::gf(2).unwrap();
        let m = matrix_algebra(&f, 2).unwrap();
        assert_eq!(m.reduced_trace(&m.basis(0)).unwrap(), f.one());
        assert_eq!(reduced_norm(&m, &m.basis(0)).unwrap(), f.zero());
        assert_eq!(matrix_algebra(&f, 1).unwrap().dim(), 1);
        let q = quaternion_make(&f, &f.zero(), &f.one()).unwrap();
        let t = tensor_algebra(&q, &q).unwrap();
        assert_eq!(t.dim(), 16);
        t.check_axioms().unwrap();
        let f5 = Field::gf(5).unwrap();
        let q5 = quaternion_make(&f5, &f5.from_int(2), &f5.from_int(3)).unwrap();
        let t5 = tensor_algebra(&q5, &q5).unwrap();
        assert_eq!(t5.reduced_trace(&t5.one()).unwrap(), f5.from_int(4));
        let uu = crate::linalg::vkron(&f5, &q5.basis(1), &q5.basis(1));
        assert_eq!(t5.reduced_trace(&uu).unwrap(), f5.one());
    }

    #[test]
    fn splitting_small_quaternions() {
        let f = Field::gf(2).unwrap();
        let q = quaternion_make(&f, &f.zero(), &f.one()).unwrap();
        let c = split_quaternion_iso(&q, &q.basis(1)).unwrap();
        let img_u = c.apply(&q.basis(1));
        let m = Matrix::from_entries(2, 2, img_u).unwrap();
        assert_eq!(m.mul(&f, &m), m);
        assert_eq!(m.rank(&f), 1);
        let f4 = Field::galois(2, 2, None).unwrap();
        let q = quaternion_make(&f4, &f4.one(), &f4.one()).unwrap();
        let Splitting::Split(x) = find_zero_divisor(&q, 0).unwrap() else {
            panic!()
        };
        split_quaternion_iso(&q, &x).unwrap();
    }

    #[test]
    fn t_t_is_split_in_characteristic_two() {
        let f = Field::gf(2).unwrap().rational_function("t").unwrap();
        let t = f.generator().unwrap();
        let q = quaternion_make(&f, &t, &t).unwrap();
        let uv = q.add(&q.basis(1), &q.basis(2));
        assert_eq!(reduced_norm(&q, &uv).unwrap(), f.zero());
        assert!(matches!(find_zero_divisor(&q, 1).unwrap(), Splitting::Split(_)));
    }
}
