//! Dense univariate polynomials with coefficients in a [`Field`].
//!
//! A polynomial is a `Vec<Elem>` of coefficients, constant term first, with
//! no trailing zeros. The zero polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, Field};
use crate::error::{Error, Result};

pub type Poly = Vec<Elem>;

pub fn trim(f: &Field, mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn deg(p: &[Elem]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn constant(f: &Field, c: Elem) -> Poly {
    if f.is_zero(&c) {
        Vec::new()
    } else {
        vec![c]
    }
}

pub fn monomial(f: &Field, c: Elem, d: usize) -> Poly {
    if f.is_zero(&c) {
        return Vec::new();
    }
    let mut p = vec![f.zero(); d + 1];
    p[d] = c;
    p
}

pub fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Poly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = f.add(o, s);
    }
    trim(f, out)
}

pub fn neg(f: &Field, a: &[Elem]) -> Poly {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    let mut out: Poly = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), f.zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o = f.sub(o, s);
    }
    trim(f, out)
}

pub fn scale(f: &Field, a: &[Elem], c: &Elem) -> Poly {
    if f.is_zero(c) {
        return Vec::new();
    }
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    trim(f, out)
}

/// Remainder modulo a monic polynomial; needs no inversion.
pub fn rem_monic(f: &Field, a: &[Elem], m: &[Elem]) -> Poly {
    let dm = m.len() - 1;
    if a.len() <= dm {
        return a.to_vec();
    }
    let mut r: Poly = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if f.is_zero(&lead) {
            continue;
        }
        let shift = r.len() - dm;
        for (i, mi) in m[..dm].iter().enumerate() {
            let t = f.mul(&lead, mi);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
    }
    trim(f, r)
}

/// Quotient and remainder; fails only when the leading coefficient of `b`
/// is not invertible (a reducible modulus somewhere below).
pub fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly)> {
    let db = deg(b).ok_or(Error::DivisionByZero)?;
    if a.len() <= db {
        return Ok((Vec::new(), a.to_vec()));
    }
    let lead_inv = f.inv(&b[db])?;
    let mut r: Poly = a.to_vec();
    let mut q = vec![f.zero(); a.len() - db];
    while r.len() > db {
        let top = r.pop().unwrap();
        if f.is_zero(&top) {
            continue;
        }
        let c = f.mul(&top, &lead_inv);
        let shift = r.len() - db;
        for (i, bi) in b[..db].iter().enumerate() {
            let t = f.mul(&c, bi);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        q[shift] = c;
    }
    Ok((trim(f, q), trim(f, r)))
}

pub fn make_monic(f: &Field, a: &[Elem]) -> Result<Poly> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) if f.is_one(lc) => Ok(a.to_vec()),
        Some(lc) => {
            let inv = f.inv(lc)?;
            Ok(scale(f, a, &inv))
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Poly> {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y)?;
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly, Poly)> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (constant(f, f.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => Ok((r0, s0, t0)),
        Some(lc) => {
            let inv = f.inv(lc)?;
            Ok((scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv)))
        }
    }
}

pub fn eval(f: &Field, p: &[Elem], x: &Elem) -> Elem {
    p.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative(f: &Field, p: &[Elem]) -> Poly {
    trim(
        f,
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_int(i as i64), c))
            .collect(),
    )
}

/// Multiplicity of `X` as a factor.
pub fn low_order(f: &Field, p: &[Elem]) -> Option<usize> {
    p.iter().position(|c| !f.is_zero(c))
}
