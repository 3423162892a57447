//! Dense linear algebra over a [`Field`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub type Vector = Vec<Elem>;

/// Row-major dense matrix. The field is passed to every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(f: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity(f: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(f: &Field, rows: usize, cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(f: &Field, d: &[Elem]) -> Matrix {
        let mut m = Matrix::zeros(f, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Column-major flattening (the coordinates of a matrix unit basis
    /// `E_ij` ordered by `i*n + j` are row-major; use [`Matrix::entries`]).
    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn map(&self, g: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(g).collect(),
        }
    }

    pub fn is_zero(&self, f: &Field) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: &Elem) -> Matrix {
        self.map(|x| f.mul(x, c))
    }

    pub fn mul(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Matrix::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[Elem]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, f: &Field, x: &[Elem], y: &[Elem]) -> Elem {
        dot(f, x, &self.mul_vec(f, y))
    }

    /// Kronecker product with row index `i1 * b.rows + i2`.
    pub fn kron(&self, f: &Field, b: &Matrix) -> Matrix {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut out = Matrix::zeros(f, rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        let x = b.get(i2, j2);
                        if !f.is_zero(x) {
                            out.set(i1 * b.rows + i2, j1 * b.cols + j2, f.mul(a, x));
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(f, self.cols);
        (m, pivots)
    }

    /// Row reduces using only the first `limit` columns for pivots.
    fn rref_in_place(&mut self, f: &Field, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            if !f.is_one(&inv) {
                for j in c..self.cols {
                    let idx = r * self.cols + j;
                    self.data[idx] = f.mul(&self.data[idx], &inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let pr = self.get(r, j);
                    if f.is_zero(pr) {
                        continue;
                    }
                    let t = f.mul(&factor, pr);
                    let idx = i * self.cols + j;
                    self.data[idx] = f.sub(&self.data[idx], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self, f: &Field) -> Vec<Vector> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, f: &Field, b: &[Elem]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place(f, self.cols);
        for i in pivots.len()..self.rows {
            if !f.is_zero(aug.get(i, self.cols)) {
                return None;
            }
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref_in_place(f, n);
        if pivots.len() < n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn det(&self, f: &Field) -> Elem {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(&factor, m.get(c, j));
                    let idx = i * n + j;
                    m.data[idx] = f.sub(&m.data[idx], &t);
                }
            }
        }
        det
    }

    /// Reinterprets every entry in an extension field.
    pub fn extend(&self, from: &Field, to: &Field) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|x| to.embed(from, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if f.is_zero(x) || f.is_zero(y) {
            continue;
        }
        acc = f.add(&acc, &f.mul(x, y));
    }
    acc
}

pub fn vadd(f: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vsub(f: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vscale(f: &Field, c: &Elem, a: &[Elem]) -> Vector {
    a.iter().map(|x| f.mul(c, x)).collect()
}

pub fn vneg(f: &Field, a: &[Elem]) -> Vector {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn is_zero_vec(f: &Field, a: &[Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn unit_vector(f: &Field, n: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// Kronecker product of vectors (index `i * b.len() + j`).
pub fn vkron(f: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(f.mul(x, y));
        }
    }
    out
}

/// Rank of a family of vectors of length `n`.
pub fn rank_of(f: &Field, n: usize, vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_cols(f, n, vs).rank(f)
}

/// A reduced echelon basis of the span, used to reduce vectors modulo it.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(f: &Field, n: usize, vs: &[Vector]) -> EchelonBasis {
        if vs.is_empty() {
            return EchelonBasis {
                rows: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let m = Matrix::from_rows(vs.to_vec()).expect("equal lengths");
        assert_eq!(m.cols(), n);
        let (r, pivots) = m.rref(f);
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        EchelonBasis { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The canonical representative of `v` modulo the span: the pivot
    /// coordinates are cleared.
    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *o = f.sub(o, &f.mul(&c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        is_zero_vec(f, &self.reduce(f, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_det_nullspace_over_gf5() {
        let f = Field::gf(5).unwrap();
        let e = |v: i64| f.from_int(v);
        let m = Matrix::from_rows(vec![vec![e(1), e(2)], vec![e(3), e(4)]]).unwrap();
        assert_eq!(m.det(&f), e(-2));
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(&f, 2));
        let s = Matrix::from_rows(vec![vec![e(1), e(2)], vec![e(2), e(4)]]).unwrap();
        assert!(s.inverse(&f).is_none());
        let ns = s.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&f, &s.mul_vec(&f, &ns[0])));
        assert_eq!(s.solve(&f, &[e(1), e(2)]).map(|x| s.mul_vec(&f, &x)), Some(vec![e(1), e(2)]));
        assert!(s.solve(&f, &[e(1), e(1)]).is_none());
    }

    #[test]
    fn kron_shapes() {
        let f = Field::gf(2).unwrap();
        let a = Matrix::identity(&f, 2);
        let b = Matrix::from_rows(vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap();
        let k = a.kron(&f, &b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(2, 3), &f.one());
        assert_eq!(k.get(0, 3), &f.zero());
    }
}
