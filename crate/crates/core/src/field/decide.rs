//! Square-class and Artin–Schreier membership decisions.
//!
//! Every positive answer carries a witness that the caller can check by a
//! single multiplication. Negative answers are only produced by a proof
//! procedure; everything else is `Unknown`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::poly::{self, Poly};
use super::{Elem, Field, LevelKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSquareReason {
    /// Finite field: Euler's criterion / discrete logarithm parity.
    ExponentTest,
    /// Rational function level: numerator times denominator is not the square
    /// of a polynomial (some place has odd valuation or the residue is not a
    /// square).
    Valuation,
    /// Characteristic two: a nonzero coordinate outside the square subfield
    /// in a p-basis expansion.
    PBasis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareDecision {
    Square(Elem),
    NonSquare(NonSquareReason),
    Unknown(String),
}

impl SquareDecision {
    pub fn is_square(&self) -> Option<bool> {
        match self {
            SquareDecision::Square(_) => Some(true),
            SquareDecision::NonSquare(_) => Some(false),
            SquareDecision::Unknown(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonMemberReason {
    /// Finite field: the absolute trace is nonzero.
    TraceNonzero,
    /// Rational function level: some pole has odd order.
    OddPole,
    /// The GF(2)-linear system for a polynomial solution is inconsistent.
    LinearSystem,
    /// Every candidate of a finite reduction failed with a certificate.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WpDecision {
    Member(Elem),
    NonMember(NonMemberReason),
    Unknown(String),
}

impl WpDecision {
    pub fn is_member(&self) -> Option<bool> {
        match self {
            WpDecision::Member(_) => Some(true),
            WpDecision::NonMember(_) => Some(false),
            WpDecision::Unknown(_) => None,
        }
    }
}

/// A nonzero element viewed modulo nonzero squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    pub rep: Elem,
}

impl SquareClass {
    pub fn new(field: &Field, rep: Elem) -> Result<Self> {
        if field.is_zero(&rep) {
            return Err(Error::DivisionByZero);
        }
        Ok(SquareClass { rep })
    }

    /// `Some(true)` iff the representatives differ by a square.
    pub fn same_as(&self, field: &Field, other: &SquareClass) -> Result<Option<bool>> {
        let ratio = field.div(&self.rep, &other.rep)?;
        Ok(field.is_square(&ratio)?.is_square())
    }

    pub fn is_trivial(&self, field: &Field) -> Result<Option<bool>> {
        Ok(field.is_square(&self.rep)?.is_square())
    }
}

impl Field {
    /// Decides whether `x` is a square.
    pub fn is_square(&self, x: &Elem) -> Result<SquareDecision> {
        if self.is_zero(x) {
            return Err(Error::pre("is_square", "argument is zero"));
        }
        let d = if self.characteristic() == 2 {
            match self.frob_decompose(x) {
                Some(coords) => {
                    if coords[1..].iter().all(|c| self.is_zero(c)) {
                        SquareDecision::Square(coords[0].clone())
                    } else {
                        SquareDecision::NonSquare(NonSquareReason::PBasis)
                    }
                }
                None => SquareDecision::Unknown("no p-basis expansion at this level".into()),
            }
        } else {
            self.is_square_odd(x)?
        };
        if let SquareDecision::Square(w) = &d {
            if self.square(w) != *x {
                return Err(Error::Inconsistent("square root witness does not square back".into()));
            }
        }
        Ok(d)
    }

    fn is_square_odd(&self, x: &Elem) -> Result<SquareDecision> {
        match self.level_kind() {
            LevelKind::Galois(g) => {
                let Elem::Gf(v) = x else { unreachable!() };
                let l = g.log_of(*v).unwrap();
                Ok(if l % 2 == 0 {
                    SquareDecision::Square(Elem::Gf(g.exp_of(l / 2)))
                } else {
                    SquareDecision::NonSquare(NonSquareReason::ExponentTest)
                })
            }
            LevelKind::Quotient(..) if self.is_finite() => self.tonelli_shanks(x),
            LevelKind::Quotient(..) => Ok(SquareDecision::Unknown(
                "square roots over infinite quotient levels are not implemented".into(),
            )),
            LevelKind::RatFun(base) => {
                let Elem::Frac(fr) = x else { unreachable!() };
                let p = poly::mul(base, &fr.num, &fr.den);
                match poly_sqrt_odd(base, &p)? {
                    PolySqrt::Root(s) => Ok(SquareDecision::Square(self.fraction(s, fr.den.clone())?)),
                    PolySqrt::NotSquare => Ok(SquareDecision::NonSquare(NonSquareReason::Valuation)),
                    PolySqrt::Unknown(m) => Ok(SquareDecision::Unknown(m)),
                }
            }
        }
    }

    fn tonelli_shanks(&self, x: &Elem) -> Result<SquareDecision> {
        let q = self.size().unwrap();
        let one = self.one();
        if self.pow(x, (q - 1) / 2) != one {
            return Ok(SquareDecision::NonSquare(NonSquareReason::ExponentTest));
        }
        let mut s = 0u32;
        let mut odd = q - 1;
        while odd % 2 == 0 {
            odd /= 2;
            s += 1;
        }
        let minus_one = self.neg(&one);
        let z = self
            .elements(0)
            .into_iter()
            .find(|e| !self.is_zero(e) && self.pow(e, (q - 1) / 2) == minus_one)
            .expect("a finite field of odd order has non-squares");
        let mut m = s;
        let mut c = self.pow(&z, odd);
        let mut t = self.pow(x, odd);
        let mut r = self.pow(x, (odd + 1) / 2);
        while t != one {
            let mut i = 0;
            let mut tt = t.clone();
            while tt != one {
                tt = self.square(&tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Ok(SquareDecision::Square(r))
    }

    /// Number of p-basis elements contributed by the tower in characteristic 2,
    /// i.e. `log2 [F : F^2]`, when every level supports p-basis expansions.
    pub fn p_basis_size(&self) -> Option<usize> {
        match self.level_kind() {
            LevelKind::Galois(_) => Some(0),
            LevelKind::RatFun(base) => Some(base.p_basis_size()? + 1),
            LevelKind::Quotient(base, _) => base.p_basis_size(),
        }
    }

    /// The p-basis elements themselves (the transcendental generators of the
    /// tower, bottom first), embedded into this level.
    pub fn p_basis(&self) -> Vec<Elem> {
        match self.level_kind() {
            LevelKind::Galois(_) => Vec::new(),
            LevelKind::RatFun(base) => {
                let mut out: Vec<Elem> = base.p_basis().iter().map(|b| self.lift(b)).collect();
                out.push(self.generator().unwrap());
                out
            }
            LevelKind::Quotient(base, _) => base.p_basis().iter().map(|b| self.lift(b)).collect(),
        }
    }

    /// Characteristic two only: coordinates `α_S` with
    /// `y = Σ_S α_S² · Π_{i∈S} b_i`, where `b_i` is [`Field::p_basis`] and `S`
    /// runs over bitmasks. Returns `None` when some level is not supported
    /// (odd characteristic or an inseparable quotient).
    pub fn frob_decompose(&self, y: &Elem) -> Option<Vec<Elem>> {
        if self.characteristic() != 2 {
            return None;
        }
        match self.level_kind() {
            LevelKind::Galois(g) => {
                let Elem::Gf(v) = y else { unreachable!() };
                Some(vec![Elem::Gf(g.pow(*v, g.size() as u128 / 2))])
            }
            LevelKind::RatFun(base) => {
                let r = base.p_basis_size()?;
                let Elem::Frac(fr) = y else { unreachable!() };
                let p = poly::mul(base, &fr.num, &fr.den);
                let width = 1usize << r;
                // even[S], odd[S]: polynomials in t whose squares assemble p.
                let mut even: Vec<Poly> = vec![Vec::new(); width];
                let mut odd: Vec<Poly> = vec![Vec::new(); width];
                for (k, c) in p.iter().enumerate() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let parts = base.frob_decompose(c)?;
                    for (s, a) in parts.into_iter().enumerate() {
                        let target = if k % 2 == 0 { &mut even[s] } else { &mut odd[s] };
                        let idx = k / 2;
                        if target.len() <= idx {
                            target.resize(idx + 1, base.zero());
                        }
                        target[idx] = a;
                    }
                }
                let mut out = vec![self.zero(); 2 * width];
                for s in 0..width {
                    out[s] = self
                        .fraction(poly::trim(base, core::mem::take(&mut even[s])), fr.den.clone())
                        .ok()?;
                    out[s | width] = self
                        .fraction(poly::trim(base, core::mem::take(&mut odd[s])), fr.den.clone())
                        .ok()?;
                }
                Some(out)
            }
            LevelKind::Quotient(base, m) => {
                let r = base.p_basis_size()?;
                let d = m.len() - 1;
                // Express y in the basis x^{2i}; invertible iff x^2 generates.
                let cols: Vec<Poly> = (0..d)
                    .map(|i| poly::rem_monic(base, &poly::monomial(base, base.one(), 2 * i), m))
                    .collect();
                let Elem::Res(yr) = y else { unreachable!() };
                let c = solve_small(base, &cols, yr, d)?;
                let width = 1usize << r;
                let mut roots: Vec<Poly> = vec![vec![base.zero(); d]; width];
                for (i, ci) in c.iter().enumerate() {
                    if base.is_zero(ci) {
                        continue;
                    }
                    for (s, a) in base.frob_decompose(ci)?.into_iter().enumerate() {
                        roots[s][i] = a;
                    }
                }
                Some(
                    roots
                        .into_iter()
                        .map(|p| Elem::Res(poly::trim(base, p)))
                        .collect(),
                )
            }
        }
    }

    /// Solves `x² + x = c` in characteristic 2.
    pub fn wp_solve(&self, c: &Elem) -> Result<WpDecision> {
        if self.characteristic() != 2 {
            return Err(Error::WrongCharacteristic {
                expected: "2",
                found: self.characteristic(),
            });
        }
        let d = self.wp_inner(c)?;
        if let WpDecision::Member(w) = &d {
            if self.add(&self.square(w), w) != *c {
                return Err(Error::Inconsistent("wp witness fails x^2 + x = c".into()));
            }
        }
        Ok(d)
    }

    fn wp_inner(&self, c: &Elem) -> Result<WpDecision> {
        if self.is_zero(c) {
            return Ok(WpDecision::Member(self.zero()));
        }
        if self.is_finite() {
            return Ok(self.wp_finite(c));
        }
        match self.level_kind() {
            LevelKind::Galois(_) => unreachable!(),
            LevelKind::RatFun(base) => self.wp_ratfun(base, c),
            LevelKind::Quotient(base, m) if m.len() == 3 => {
                let Elem::Res(cr) = c else { unreachable!() };
                let c0 = cr.first().cloned().unwrap_or_else(|| base.zero());
                let c1 = cr.get(1).cloned().unwrap_or_else(|| base.zero());
                // x^2 = alpha + beta x
                let alpha = m[0].clone();
                let beta = m[1].clone();
                let candidates: Vec<Elem> = if base.is_zero(&beta) {
                    vec![c1.clone()]
                } else {
                    match base.wp_inner(&base.mul(&beta, &c1))? {
                        WpDecision::Member(z) => {
                            let z1 = base.add(&z, &base.one());
                            vec![base.div(&z, &beta)?, base.div(&z1, &beta)?]
                        }
                        WpDecision::NonMember(_) => {
                            return Ok(WpDecision::NonMember(NonMemberReason::Exhausted))
                        }
                        u => return Ok(u),
                    }
                };
                let mut unknown = None;
                for y1 in candidates {
                    let rhs = base.add(&c0, &base.mul(&alpha, &base.square(&y1)));
                    match base.wp_inner(&rhs)? {
                        WpDecision::Member(y0) => {
                            return Ok(WpDecision::Member(self.residue(vec![y0, y1])?));
                        }
                        WpDecision::NonMember(_) => {}
                        WpDecision::Unknown(m) => unknown = Some(m),
                    }
                }
                Ok(match unknown {
                    Some(m) => WpDecision::Unknown(m),
                    None => WpDecision::NonMember(NonMemberReason::Exhausted),
                })
            }
            LevelKind::Quotient(..) => Ok(WpDecision::Unknown(
                "x^2 + x = c over quotient levels of degree > 2 is not implemented".into(),
            )),
        }
    }

    fn wp_finite(&self, c: &Elem) -> WpDecision {
        let n = self.gf2_dimension();
        let target = self.gf2_coords(c);
        let columns: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut e = vec![0u8; n];
                e[i] = 1;
                let x = self.from_gf2_coords(&e);
                self.gf2_coords(&self.add(&self.square(&x), &x))
            })
            .collect();
        match gf2_solve(&columns, &target) {
            Some(sol) => WpDecision::Member(self.from_gf2_coords(&sol)),
            None => WpDecision::NonMember(NonMemberReason::TraceNonzero),
        }
    }

    fn wp_ratfun(&self, base: &Field, c: &Elem) -> Result<WpDecision> {
        let Elem::Frac(fr) = c else { unreachable!() };
        // x = r/s reduced gives c = (r^2 + r s)/s^2 reduced, so den(c) = s^2.
        let s = match poly_sqrt_char2(base, &fr.den) {
            Some(s) => s,
            None => {
                if base.is_finite() {
                    return Ok(WpDecision::NonMember(NonMemberReason::OddPole));
                }
                return Ok(WpDecision::Unknown("denominator square test undecided".into()));
            }
        };
        let ds = s.len() - 1;
        let dn = fr.num.len() - 1;
        if dn > 2 * ds && dn % 2 == 1 {
            return Ok(WpDecision::NonMember(NonMemberReason::OddPole));
        }
        if !base.is_finite() {
            return Ok(WpDecision::Unknown(
                "x^2 + x = c over F(t) with infinite F is not implemented".into(),
            ));
        }
        let dr = if dn > 2 * ds { dn / 2 } else { ds };
        let kb = base.gf2_dimension();
        let out_len = core::cmp::max(2 * dr, ds + dr) + 1;
        let coords_of = |p: &Poly| -> Vec<u8> {
            let mut v = vec![0u8; out_len * kb];
            for (i, c) in p.iter().enumerate() {
                let bits = base.gf2_coords(c);
                v[i * kb..(i + 1) * kb].copy_from_slice(&bits);
            }
            v
        };
        let mut columns = Vec::with_capacity((dr + 1) * kb);
        for i in 0..=dr {
            for j in 0..kb {
                let mut e = vec![0u8; kb];
                e[j] = 1;
                let coef = base.from_gf2_coords(&e);
                let r = poly::monomial(base, coef, i);
                let img = poly::add(base, &poly::mul(base, &r, &r), &poly::mul(base, &s, &r));
                columns.push(coords_of(&img));
            }
        }
        if fr.num.len() > out_len {
            return Ok(WpDecision::NonMember(NonMemberReason::OddPole));
        }
        match gf2_solve(&columns, &coords_of(&fr.num)) {
            Some(sol) => {
                let mut r = vec![base.zero(); dr + 1];
                for (i, ri) in r.iter_mut().enumerate() {
                    *ri = base.from_gf2_coords(&sol[i * kb..(i + 1) * kb]);
                }
                Ok(WpDecision::Member(self.fraction(r, s)?))
            }
            None => Ok(WpDecision::NonMember(NonMemberReason::LinearSystem)),
        }
    }

    /// Dimension over GF(2) of a finite field of characteristic 2.
    pub(crate) fn gf2_dimension(&self) -> usize {
        match self.level_kind() {
            LevelKind::Galois(g) => g.k() as usize,
            LevelKind::Quotient(base, m) => base.gf2_dimension() * (m.len() - 1),
            LevelKind::RatFun(_) => panic!("infinite field has no GF(2) coordinates"),
        }
    }

    pub(crate) fn gf2_coords(&self, x: &Elem) -> Vec<u8> {
        match (self.level_kind(), x) {
            (LevelKind::Galois(g), Elem::Gf(v)) => (0..g.k()).map(|i| ((v >> i) & 1) as u8).collect(),
            (LevelKind::Quotient(base, m), Elem::Res(r)) => {
                let mut out = Vec::new();
                for i in 0..m.len() - 1 {
                    match r.get(i) {
                        Some(c) => out.extend(base.gf2_coords(c)),
                        None => out.extend(core::iter::repeat(0).take(base.gf2_dimension())),
                    }
                }
                out
            }
            _ => panic!("gf2_coords on unsupported level"),
        }
    }

    pub(crate) fn from_gf2_coords(&self, bits: &[u8]) -> Elem {
        match self.level_kind() {
            LevelKind::Galois(_) => Elem::Gf(
                bits.iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, b)| acc | ((*b as u32) << i)),
            ),
            LevelKind::Quotient(base, _) => {
                let kb = base.gf2_dimension();
                let r: Poly = bits.chunks(kb).map(|ch| base.from_gf2_coords(ch)).collect();
                Elem::Res(poly::trim(base, r))
            }
            LevelKind::RatFun(_) => panic!("from_gf2_coords on infinite level"),
        }
    }
}

/// Decides irreducibility of a monic modulus over `base` when possible.
pub(super) fn modulus_irreducible(base: &Field, m: &[Elem]) -> Result<Option<bool>> {
    let d = m.len() - 1;
    if base.is_finite() {
        return ben_or(base, m).map(Some);
    }
    if d == 2 {
        let (m0, m1) = (&m[0], &m[1]);
        if base.characteristic() == 2 {
            if base.is_zero(m0) {
                return Ok(Some(false));
            }
            if base.is_zero(m1) {
                return Ok(base.is_square(m0)?.is_square().map(|s| !s));
            }
            let c = base.div(m0, &base.square(m1))?;
            return Ok(base.wp_solve(&c)?.is_member().map(|s| !s));
        }
        let disc = base.sub(&base.square(m1), &base.mul(&base.from_int(4), m0));
        if base.is_zero(&disc) {
            return Ok(Some(false));
        }
        return Ok(base.is_square(&disc)?.is_square().map(|s| !s));
    }
    Ok(None)
}

fn ben_or(base: &Field, m: &[Elem]) -> Result<bool> {
    let q = base.size().unwrap();
    let d = m.len() - 1;
    let x: Poly = vec![base.zero(), base.one()];
    let mut h = poly::rem_monic(base, &x, m);
    for _ in 0..d / 2 {
        h = powmod(base, &h, q, m);
        let g = poly::gcd(base, m, &poly::sub(base, &h, &x))?;
        if g.len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn powmod(base: &Field, a: &[Elem], mut e: u128, m: &[Elem]) -> Poly {
    let mut acc = poly::constant(base, base.one());
    let mut b = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly::rem_monic(base, &poly::mul(base, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = poly::rem_monic(base, &poly::mul(base, &b, &b), m);
        }
    }
    acc
}

enum PolySqrt {
    Root(Poly),
    NotSquare,
    Unknown(String),
}

/// Square root of a polynomial in odd characteristic, determined top-down.
fn poly_sqrt_odd(base: &Field, p: &[Elem]) -> Result<PolySqrt> {
    let Some(dp) = poly::deg(p) else {
        return Ok(PolySqrt::Root(Vec::new()));
    };
    if dp % 2 == 1 {
        return Ok(PolySqrt::NotSquare);
    }
    let n = dp / 2;
    let r = match base.is_square(&p[dp])? {
        SquareDecision::Square(r) => r,
        SquareDecision::NonSquare(_) => return Ok(PolySqrt::NotSquare),
        SquareDecision::Unknown(m) => return Ok(PolySqrt::Unknown(m)),
    };
    let two_r_inv = base.inv(&base.mul(&base.from_int(2), &r))?;
    let mut s = vec![base.zero(); n + 1];
    s[n] = r;
    for k in 1..=n {
        // coefficient of t^{2n-k}
        let mut acc = p[dp - k].clone();
        for i in (n - k + 1)..=n {
            let j = 2 * n - k - i;
            if j > n || j <= n - k {
                continue;
            }
            acc = base.sub(&acc, &base.mul(&s[i], &s[j]));
        }
        s[n - k] = base.mul(&acc, &two_r_inv);
    }
    let s = poly::trim(base, s);
    if poly::mul(base, &s, &s) == p {
        Ok(PolySqrt::Root(s))
    } else {
        Ok(PolySqrt::NotSquare)
    }
}

/// Square root of a polynomial over a perfect base field of characteristic 2.
fn poly_sqrt_char2(base: &Field, p: &[Elem]) -> Option<Poly> {
    let mut out = Vec::with_capacity(p.len() / 2 + 1);
    for (k, c) in p.iter().enumerate() {
        if k % 2 == 1 {
            if !base.is_zero(c) {
                return None;
            }
        } else {
            let parts = base.frob_decompose(c)?;
            if parts[1..].iter().any(|x| !base.is_zero(x)) {
                return None;
            }
            out.push(parts[0].clone());
        }
    }
    Some(poly::trim(base, out))
}

/// Solves `Σ_i c_i cols[i] = y` for a small square system over `base`.
fn solve_small(base: &Field, cols: &[Poly], y: &[Elem], d: usize) -> Option<Vec<Elem>> {
    let mut a: Vec<Vec<Elem>> = (0..d)
        .map(|row| {
            let mut r: Vec<Elem> = cols
                .iter()
                .map(|c| c.get(row).cloned().unwrap_or_else(|| base.zero()))
                .collect();
            r.push(y.get(row).cloned().unwrap_or_else(|| base.zero()));
            r
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !base.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        let inv = base.inv(&a[col][col]).ok()?;
        for e in a[col].iter_mut() {
            *e = base.mul(e, &inv);
        }
        for r in 0..d {
            if r != col && !base.is_zero(&a[r][col]) {
                let f = a[r][col].clone();
                for k in 0..=d {
                    let t = base.mul(&f, &a[col][k]);
                    a[r][k] = base.sub(&a[r][k], &t);
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Solves a linear system over GF(2) given by columns; returns any solution.
pub(crate) fn gf2_solve(columns: &[Vec<u8>], target: &[u8]) -> Option<Vec<u8>> {
    let n = columns.len();
    let m = target.len();
    // rows: m equations, n unknowns, augmented
    let mut rows: Vec<Vec<u8>> = (0..m)
        .map(|i| {
            let mut r: Vec<u8> = columns.iter().map(|c| c[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| rows[r][col] == 1) else {
            continue;
        };
        rows.swap(row, p);
        for r in 0..m {
            if r != row && rows[r][col] == 1 {
                for k in col..=n {
                    rows[r][k] ^= rows[row][k];
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    if rows[row..].iter().any(|r| r[n] == 1) {
        return None;
    }
    let mut sol = vec![0u8; n];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][n];
    }
    Some(sol)
}

impl Field {
    /// The text form of a decision for reports.
    pub fn describe_square(&self, d: &SquareDecision) -> String {
        match d {
            SquareDecision::Square(w) => alloc::format!("square of {}", self.format(w)),
            SquareDecision::NonSquare(r) => alloc::format!("non-square ({r:?})"),
            SquareDecision::Unknown(m) => m.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2t() -> Field {
        Field::gf(2).unwrap().rational_function("t").unwrap()
    }

    #[test]
    fn squares_in_gf4_and_f2t() {
        let f = Field::galois(2, 2, None).unwrap();
        let w = Elem::Gf(2);
        assert!(matches!(f.is_square(&w).unwrap(), SquareDecision::Square(_)));
        let g = f2t();
        let t = g.generator().unwrap();
        assert_eq!(
            g.is_square(&t).unwrap(),
            SquareDecision::NonSquare(NonSquareReason::PBasis)
        );
        let x = g.add(&g.pow(&t, 2), &g.pow(&t, 4));
        let SquareDecision::Square(r) = g.is_square(&x).unwrap() else {
            panic!()
        };
        assert_eq!(r, g.add(&t, &g.square(&t)));
        assert!(g.is_square(&g.zero()).is_err());
    }

    #[test]
    fn squares_in_odd_characteristic() {
        let f = Field::gf(5).unwrap();
        let sq: Vec<_> = (1..5)
            .filter(|&i| f.is_square(&f.from_int(i)).unwrap().is_square() == Some(true))
            .collect();
        assert_eq!(sq, vec![1, 4]);
        let g = f.rational_function("t").unwrap();
        let t = g.generator().unwrap();
        let p = g.square(&g.add(&t, &g.from_int(2)));
        assert!(g.is_square(&p).unwrap().is_square().unwrap());
        assert_eq!(g.is_square(&t).unwrap().is_square(), Some(false));
        let k = Field::galois(3, 1, None)
            .unwrap()
            .quotient(vec![Elem::Gf(1), Elem::Gf(0), Elem::Gf(1)], "i")
            .unwrap();
        for x in k.elements(0).into_iter().filter(|x| !k.is_zero(x)) {
            assert!(k.is_square(&k.square(&x)).unwrap().is_square().unwrap());
        }
    }

    #[test]
    fn wp_examples() {
        let f2 = Field::gf(2).unwrap();
        assert_eq!(
            f2.wp_solve(&f2.one()).unwrap(),
            WpDecision::NonMember(NonMemberReason::TraceNonzero)
        );
        let f4 = Field::galois(2, 2, None).unwrap();
        let WpDecision::Member(w) = f4.wp_solve(&f4.one()).unwrap() else {
            panic!()
        };
        assert!(w == Elem::Gf(2) || w == Elem::Gf(3));
        let g = f2t();
        let t = g.generator().unwrap();
        assert_eq!(
            g.wp_solve(&t).unwrap(),
            WpDecision::NonMember(NonMemberReason::OddPole)
        );
        let c = g.add(&g.square(&t), &t);
        assert!(g.wp_solve(&c).unwrap().is_member().unwrap());
        let c = g.div(&g.one(), &g.add(&g.square(&t), &t)).unwrap();
        assert!(g.wp_solve(&c).unwrap().is_member().is_some());
        assert!(Field::gf(3).unwrap().wp_solve(&Elem::Gf(1)).is_err());
    }

    #[test]
    fn wp_over_artin_schreier_extension() {
        let g = f2t();
        let t = g.generator().unwrap();
        let k = g.quotient(vec![t.clone(), g.one(), g.one()], "x").unwrap();
        let tk = k.lift(&t);
        assert!(k.wp_solve(&tk).unwrap().is_member().unwrap());
        assert!(k.is_square(&tk).unwrap().is_square() == Some(false));
        let k2 = g.quotient(vec![g.one(), g.one(), g.one()], "w").unwrap();
        assert!(k2.wp_solve(&k2.one()).unwrap().is_member().unwrap());
    }

    #[test]
    fn ben_or_over_gf2() {
        let f = Field::gf(2).unwrap();
        let m: Vec<Elem> = [1u32, 1, 0, 1].iter().map(|&c| Elem::Gf(c)).collect();
        assert_eq!(modulus_irreducible(&f, &m).unwrap(), Some(true));
        let m: Vec<Elem> = [1u32, 0, 0, 1].iter().map(|&c| Elem::Gf(c)).collect();
        assert_eq!(modulus_irreducible(&f, &m).unwrap(), Some(false));
    }
}
